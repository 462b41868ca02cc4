#include "detrep/diagnostics.hpp"

#include <algorithm>
#include <map>

namespace detrep {

Poly HypersurfaceSpec::product() const {
  Poly r = Poly::constant(nvars, 1);
  for (const auto &[f, p] : factors) r = r * pow(f, p);
  return r;
}

Poly HypersurfaceSpec::reduced() const {
  Poly r = Poly::constant(nvars, 1);
  for (const auto &fp : factors) r = r * fp.first;
  return r;
}

Poly HypersurfaceSpec::excess() const {
  Poly r = Poly::constant(nvars, 1);
  for (const auto &[f, p] : factors) r = r * pow(f, p - 1);
  return r;
}

namespace {

// coefficient of x_k^e, as a poly in the remaining variables
Poly coeff_in(const Poly &f, int k, int e) {
  std::vector<Term> ts;
  for (const auto &t : f.terms())
    if (t.first[k] == e) {
      Monomial m = t.first;
      m.set(k, 0);
      ts.emplace_back(m, t.second);
    }
  return Poly::from_terms(f.nvars(), std::move(ts));
}

Poly resultant(const Poly &a, const Poly &b, int k) {
  const int m = deg_var(a, k), n = deg_var(b, k);
  const int s = m + n;
  PolyMatrix S(s, s, a.nvars());
  for (int r = 0; r < n; ++r)
    for (int e = 0; e <= m; ++e) S(r, r + m - e) = coeff_in(a, k, e);
  for (int r = 0; r < m; ++r)
    for (int e = 0; e <= n; ++e) S(n + r, r + n - e) = coeff_in(b, k, e);
  return determinant(S);
}

bool coprime(const Poly &a, const Poly &b) {
  for (int k = 0; k < a.nvars(); ++k)
    if (deg_var(a, k) > 0 && deg_var(b, k) > 0 && resultant(a, b, k).is_zero()) return false;
  return true;
}

}  // namespace

void validate_spec(const HypersurfaceSpec &H) {
  if (H.factors.empty()) throw SpecError("hypersurface spec has no factors");
  for (std::size_t i = 0; i < H.factors.size(); ++i) {
    const auto &[f, p] = H.factors[i];
    if (f.nvars() != H.nvars) throw SpecError("factor " + std::to_string(i + 1) + " has the wrong number of variables");
    if (p < 1) throw SpecError("factor multiplicities must be positive");
    if (f.is_zero() || f.constant_term() != 0)
      throw SpecError("factor " + std::to_string(i + 1) + " does not vanish at the origin");
    for (std::size_t j = 0; j < i; ++j)
      if (!coprime(f, H.factors[j].first))
        throw SpecError("factors " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " share a component");
  }
}

std::optional<Poly> unit_ratio(const Poly &det, const Poly &f) {
  if (f.is_zero()) return std::nullopt;
  auto q = exact_divide(det, f);
  if (!q || q->constant_term() == 0) return std::nullopt;
  return q;
}

bool associated_mod(const Poly &g, const Poly &h, int D) {
  if (g.is_zero() || h.is_zero()) return g.is_zero() && h.is_zero();
  return local_membership_mod(g, IdealGens(g.nvars(), {h}), D).member &&
         local_membership_mod(h, IdealGens(g.nvars(), {g}), D).member;
}

void check_determinant(const PolyMatrix &M, const Poly &f) {
  Poly det = determinant(M);
  if (det.nvars() != f.nvars()) throw SpecError("determinant and hypersurface use different variables");
  if (unit_ratio(det, f) || unit_ratio(f, det)) return;
  // the unit may be a genuine series, e.g. det = f / (1 - x)
  int D = std::max(det.degree(), f.degree()) + 2;
  if (!det.is_zero() && !f.is_zero() && det.ord() == f.ord() && associated_mod(det, f, D)) return;
  throw SpecError("determinant " + to_string(det, {"x", "y", "z", "w", "u", "v"}) +
                  " is not the hypersurface equation up to a unit");
}

int multiplicity(const Poly &f) {
  if (f.is_zero()) throw AlgebraError("multiplicity of the zero series");
  if (f.constant_term() != 0) throw AlgebraError("multiplicity of a unit");
  return f.ord();
}

TangentCone tangent_cone(const Poly &f) {
  TangentCone tc;
  tc.mult = multiplicity(f);
  tc.form = lowest_form(f);
  if (f.nvars() != 2) {
    tc.note = "linear factorization only attempted in two variables";
    return tc;
  }
  const int m = tc.mult;
  // F(1, s) with s = y/x
  RatVec g(m + 1, Rat(0));
  for (const auto &t : tc.form.terms()) g[t.first[1]] += t.second;
  int top = m;
  while (top > 0 && g[top] == 0) --top;
  g.resize(top + 1);
  std::vector<std::pair<Poly, int>> lf;
  Poly x = Poly::var(2, 0), y = Poly::var(2, 1);
  if (m - top > 0) lf.emplace_back(x, m - top);
  int found = m - top;
  for (const auto &[r, mu] : rational_roots(g)) {
    lf.emplace_back(y - x * r, mu);
    found += mu;
  }
  if (found == m) {
    tc.factored = true;
    tc.linear_factors = std::move(lf);
  } else {
    std::string part;
    for (const auto &[l, mu] : lf) part += (part.empty() ? "" : ", ") + to_string(l, {"x", "y"});
    tc.note = "irrational factor of degree " + std::to_string(m - found) +
              (part.empty() ? std::string() : "; rational linear factors: " + part);
  }
  return tc;
}

bool is_max_generated_at_origin(const PolyMatrix &M, const Poly &f) {
  check_determinant(M, f);
  return corank_at_origin(M) == multiplicity(f);
}

bool is_max_generated_smooth_locus(const PolyMatrix &M, const HypersurfaceSpec &H) {
  check_determinant(M, H.product());
  Poly e = H.excess();
  if (e.is_constant()) return true;
  Adjugate adj = adjugate(M);
  for (int i = 0; i < M.dim(); ++i)
    for (int j = 0; j < M.dim(); ++j)
      if (!exact_divide(adj.matrix(i, j), e)) return false;
  return true;
}

namespace {

// 0 saturated, 1 not, 2 unknown
int entry_status(const Poly &h, const IdealGens &I, int D, MembershipCertificate &cert) {
  auto ex = membership(h, I);
  if (ex.member) {
    cert = ex.cert;
    return 0;
  }
  auto lo = local_membership_mod(h, I, D);
  cert = lo.cert;
  return lo.member ? 2 : 1;
}

SaturationResult saturation_impl(const PolyMatrix &M, const Poly &f1, const Poly &f2, int D, bool parallel) {
  check_determinant(M, f1 * f2);
  const int d = M.dim();
  Adjugate adj = parallel ? adjugate(M) : adjugate_serial(M);
  IdealGens I(M.nvars(), {f1, f2});
  if (I.gens.size() != 2) throw SpecError("saturation needs two nonzero factors");
  SaturationResult r;
  r.order = D;
  r.certs.resize(static_cast<std::size_t>(d) * d);
  std::vector<int> st(static_cast<std::size_t>(d) * d, 0);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int q = 0; q < d * d; ++q) st[q] = entry_status(adj.matrix(q / d, q % d), I, D, r.certs[q]);
  } else {
    for (int q = 0; q < d * d; ++q) st[q] = entry_status(adj.matrix(q / d, q % d), I, D, r.certs[q]);
  }
  int first_bad = -1, first_unknown = -1;
  for (int q = 0; q < d * d; ++q) {
    if (st[q] == 1 && first_bad < 0) first_bad = q;
    if (st[q] == 2 && first_unknown < 0) first_unknown = q;
  }
  auto where = [&](int q) {
    return "(" + std::to_string(q / d + 1) + "," + std::to_string(q % d + 1) + ")";
  };
  if (first_bad >= 0) {
    r.status = SatStatus::NotSaturated;
    r.fail_row = first_bad / d;
    r.fail_col = first_bad % d;
    r.detail = "adjugate entry " + where(first_bad) + " is not in <f1, f2> locally to order " + std::to_string(D);
  } else if (first_unknown >= 0) {
    r.status = SatStatus::Inconclusive;
    r.fail_row = first_unknown / d;
    r.fail_col = first_unknown % d;
    r.detail = "adjugate entry " + where(first_unknown) + " is only a local member to order " + std::to_string(D);
  } else {
    r.status = SatStatus::Saturated;
    r.detail = "every adjugate entry lies in <f1, f2>";
  }
  return r;
}

}  // namespace

SaturationResult is_saturated(const PolyMatrix &M, const Poly &f1, const Poly &f2, int D) {
  return saturation_impl(M, f1, f2, D, true);
}

SaturationResult is_saturated_serial(const PolyMatrix &M, const Poly &f1, const Poly &f2, int D) {
  return saturation_impl(M, f1, f2, D, false);
}

SaturationResult is_saturated_spec(const PolyMatrix &M, const HypersurfaceSpec &H, int D) {
  validate_spec(H);
  const std::size_t k = H.factors.size();
  if (k < 2) throw SpecError("a splitting needs at least two factors");
  SaturationResult last;
  bool unknown = false;
  SaturationResult first_unknown;
  for (std::size_t i = 0; i < (k == 2 ? 1 : k); ++i) {
    Poly g = pow(H.factors[i].first, H.factors[i].second);
    Poly rest = Poly::constant(H.nvars, 1);
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) rest = rest * pow(H.factors[j].first, H.factors[j].second);
    last = is_saturated(M, g, rest, D);
    if (last.status == SatStatus::NotSaturated) {
      last.detail = "factor " + std::to_string(i + 1) + " vs rest: " + last.detail;
      return last;
    }
    if (last.status == SatStatus::Inconclusive && !unknown) {
      unknown = true;
      first_unknown = last;
    }
  }
  return unknown ? first_unknown : last;
}

namespace {

// monomials of degree < T in nvars variables
std::vector<Monomial> monomials_below(int nvars, int T) { return T <= 0 ? std::vector<Monomial>{} : monomials_upto(nvars, T - 1); }

int count_generators_T(const std::vector<std::vector<Poly>> &vecs, const std::vector<BranchParam> &branches, int nvars,
                       int T) {
  if (vecs.empty()) return 0;
  const int len = static_cast<int>(vecs[0].size());
  const int nb = static_cast<int>(branches.size());
  auto monos = monomials_below(nvars, T);
  // pulled back vectors and monomials
  std::vector<std::vector<std::vector<Poly>>> pv(nb);  // [b][gen][coord]
  std::vector<std::vector<Poly>> pm(nb);               // [b][mono]
  for (int b = 0; b < nb; ++b) {
    for (const auto &v : vecs) {
      std::vector<Poly> row;
      for (const auto &e : v) row.push_back(substitute_curve(e, branches[b].comps, T - 1));
      pv[b].push_back(std::move(row));
    }
    for (const auto &m : monos) pm[b].push_back(substitute_curve(Poly::term(nvars, m, 1), branches[b].comps, T - 1));
  }
  auto flatten = [&](int g, int mi) {
    std::map<int, Rat> acc;
    for (int b = 0; b < nb; ++b)
      for (int c = 0; c < len; ++c) {
        Poly p = mul_trunc(pm[b][mi], pv[b][g][c], T - 1);
        for (const auto &t : p.terms()) acc[(b * len + c) * T + t.first[0]] += t.second;
      }
    SparseRow r;
    for (const auto &[k, v] : acc)
      if (v != 0) r.emplace_back(k, v);
    return r;
  };
  SparseEchelon all, max;
  for (int g = 0; g < static_cast<int>(vecs.size()); ++g)
    for (int mi = 0; mi < static_cast<int>(monos.size()); ++mi) {
      SparseRow r = flatten(g, mi);
      if (monos[mi].deg > 0) max.add(r);
      all.add(std::move(r));
    }
  return all.rank() - max.rank();
}

// same count in (R/f)^len via jets: an upper bound for the torsion-free count
int count_generators_mod_f(const std::vector<std::vector<Poly>> &vecs, const Poly &f, int nvars, int D) {
  if (vecs.empty()) return 0;
  const int len = static_cast<int>(vecs[0].size());
  auto monos = monomials_upto(nvars, D);
  std::map<Monomial, int, GrlexLess> index;
  for (const auto &m : monos) index.emplace(m, static_cast<int>(index.size()));
  const int nm = static_cast<int>(monos.size());
  auto row_of = [&](const std::vector<Poly> &v) {
    SparseRow r;
    for (int c = 0; c < len; ++c)
      for (const auto &t : v[c].terms()) r.emplace_back(c * nm + index.at(t.first), t.second);
    std::sort(r.begin(), r.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    return r;
  };
  SparseEchelon all, max;
  // f * R^len and everything of degree > D is zero in the quotient
  for (int c = 0; c < len; ++c)
    for (const auto &m : monos) {
      Poly p = jet(Poly::term(nvars, m, 1) * f, D);
      if (p.is_zero()) continue;
      std::vector<Poly> v(len, Poly(nvars));
      v[c] = p;
      all.add(row_of(v));
      max.add(row_of(v));
    }
  for (const auto &g : vecs)
    for (const auto &m : monos) {
      std::vector<Poly> v;
      for (const auto &e : g) v.push_back(jet(Poly::term(nvars, m, 1) * e, D));
      SparseRow r = row_of(v);
      if (r.empty()) continue;
      if (m.deg > 0) max.add(r);
      all.add(std::move(r));
    }
  return all.rank() - max.rank();
}

std::vector<std::vector<Poly>> columns_of(const PolyMatrix &A) {
  std::vector<std::vector<Poly>> v(A.cols());
  for (int j = 0; j < A.cols(); ++j)
    for (int i = 0; i < A.rows(); ++i) v[j].push_back(A(i, j));
  return v;
}

}  // namespace

int module_generators_on_branches(const std::vector<std::vector<Poly>> &vecs, const std::vector<BranchParam> &branches,
                                  int nvars, int *t_used) {
  if (branches.empty()) throw AlgebraError("module_generators_on_branches: no branches");
  int T = 0;
  for (const auto &b : branches) T = std::max(T, default_t_precision(b));
  int prev = count_generators_T(vecs, branches, nvars, T);
  for (int it = 0; it < 6; ++it) {
    int T2 = T + T / 2 + 2;
    int cur = count_generators_T(vecs, branches, nvars, T2);
    T = T2;
    if (cur == prev) break;
    prev = cur;
  }
  if (t_used) *t_used = T;
  return prev;
}

ExtensionReport extension_criterion(const PolyMatrix &M, const Poly &f1, const Poly &f2, int D,
                                    const std::vector<BranchParam> &params1, const std::vector<BranchParam> &params2) {
  if (f1.constant_term() != 0 || f2.constant_term() != 0)
    throw SpecError("extension_criterion needs a splitting into two non-unit factors");
  check_determinant(M, f1 * f2);
  if (!M.constant_part().empty() && rat_rank(M.constant_part()) != 0)
    throw AlgebraError("extension_criterion needs M(0) = 0");
  ExtensionReport r;
  r.d = M.dim();
  const int n = M.nvars();
  Adjugate adj = adjugate(M);
  auto cols = columns_of(adj.matrix);
  auto rows = columns_of(adj.matrix.transpose());
  auto count = [&](const std::vector<std::vector<Poly>> &v, const Poly &f, const std::vector<BranchParam> &ps) {
    if (ps.empty()) {
      r.upper_bound = true;
      return count_generators_mod_f(v, f, n, D);
    }
    int t = 0;
    int c = module_generators_on_branches(v, ps, n, &t);
    r.t_precision = std::max(r.t_precision, t);
    return c;
  };
  r.dE1 = count(cols, f1, params1);
  r.dE2 = count(cols, f2, params2);
  r.dtrE1 = count(rows, f1, params1);
  r.dtrE2 = count(rows, f2, params2);
  r.holds_12 = r.d == r.dE1 + r.dtrE2;
  r.holds_21 = r.d == r.dE2 + r.dtrE1;
  return r;
}

ObstructionReport triangular_obstruction(const PolyMatrix &M, int p1, int p2, int D) {
  const int d = M.dim();
  if (p1 < 1 || p2 < 1 || p1 + p2 != d) throw AlgebraError("triangular_obstruction needs p1 + p2 = d");
  ObstructionReport r;
  try {
    r.min_gens = min_generators_mod(fitting_ideal(M, 1), D);
  } catch (const UnitIdealError &) {
    r.min_gens = 1;
  }
  r.tri_bound = d * d - p1 * p2;
  r.diag_bound = d * d - 2 * p1 * p2;
  r.obstructed = r.min_gens > r.tri_bound;
  r.diag_obstructed = r.min_gens > r.diag_bound;
  return r;
}

}  // namespace detrep
