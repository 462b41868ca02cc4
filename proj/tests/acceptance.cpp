// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "detrep/cli.hpp"
#include "detrep/decompose.hpp"
#include "detrep/fixtures.hpp"
#include "gen.hpp"

using namespace detrep;
namespace tg = detrep::testgen;

namespace {

const std::vector<std::string> XY{"x", "y"};
Poly P(const std::string &s) { return parse_poly(s, XY); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string &why) {
    if (pass) detail = why;
    pass = false;
  }
};

HypersurfaceSpec spec(std::vector<std::pair<Poly, int>> f) {
  HypersurfaceSpec H;
  H.nvars = f.front().first.nvars();
  H.factors = std::move(f);
  return H;
}

Poly rest_of(const HypersurfaceSpec &H) {
  Poly r = Poly::constant(H.nvars, 1);
  for (std::size_t i = 1; i < H.factors.size(); ++i) r = r * pow(H.factors[i].first, H.factors[i].second);
  return r;
}

// 1. adjugate identities on random matrices
Outcome adjugate_identities() {
  Outcome o;
  tg::Rng rng(101);
  for (int it = 0; it < 200; ++it) {
    int d = tg::uniform(rng, 1, 4), n = tg::uniform(rng, 2, 3);
    PolyMatrix M = tg::random_matrix(rng, d, n, 3, d == 4 ? 2 : 3);
    Adjugate a = adjugate(M);
    Poly det = determinant(M);
    PolyMatrix detI = PolyMatrix::identity(d, n);
    for (int i = 0; i < d; ++i) detI(i, i) = det;
    if (!(M * a.matrix == detI) || !(a.matrix * M == detI)) {
      o.fail("M adj != det I at sample " + std::to_string(it));
      continue;
    }
    if (!(determinant(a.matrix) == pow(det, d - 1))) o.fail("det adj != det^(d-1) at sample " + std::to_string(it));
    if (d >= 2) {
      PolyMatrix aa = adjugate(a.matrix).matrix;
      Poly s = pow(det, d - 2);
      PolyMatrix want = M;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) want(i, j) = s * M(i, j);
      if (!(aa == want)) o.fail("adj adj != det^(d-2) M at sample " + std::to_string(it));
    }
  }
  if (o.pass) o.detail = "200 samples exact";
  return o;
}

// rational points on {g = 0}: fix all but one coordinate and take rational roots
std::vector<std::vector<Rat>> points_on(const Poly &g, tg::Rng &rng, int want) {
  const int n = g.nvars();
  std::set<std::vector<Rat>> seen;
  std::vector<std::vector<Rat>> out;
  out.push_back(std::vector<Rat>(n, Rat(0)));
  seen.insert(out.back());
  for (int tries = 0; tries < 400 && static_cast<int>(out.size()) < want; ++tries) {
    int v = tg::uniform(rng, 0, n - 1);
    std::vector<Rat> pt(n);
    std::vector<Poly> img;
    for (int i = 0; i < n; ++i) {
      pt[i] = Rat(tg::uniform(rng, -6, 6), tg::uniform(rng, 1, 4));
      pt[i].canonicalize();
      img.push_back(i == v ? Poly::var(n, v) : Poly::constant(n, pt[i]));
    }
    Poly u = substitute(g, img);
    if (u.is_zero()) {
      if (seen.insert(pt).second) out.push_back(pt);
      continue;
    }
    RatVec c(static_cast<std::size_t>(deg_var(u, v)) + 1, Rat(0));
    for (const auto &t : u.terms()) c[t.first[v]] += t.second;
    if (c.size() < 2) continue;
    for (const auto &[r, mu] : rational_roots(c)) {
      (void)mu;
      pt[v] = r;
      if (seen.insert(pt).second) out.push_back(pt);
    }
  }
  return out;
}

int mult_at(const Poly &f, const std::vector<Rat> &pt) {
  const int n = f.nvars();
  std::vector<Poly> img;
  for (int i = 0; i < n; ++i) img.push_back(Poly::var(n, i) + Poly::constant(n, pt[i]));
  Poly s = substitute(f, img);
  return s.is_zero() ? kInf : s.ord();
}

// 2. 1 <= corank <= mult at points of the hypersurface
Outcome corank_bound(const std::vector<Fixture> &cat) {
  Outcome o;
  tg::Rng rng(202);
  int checked = 0;
  std::string sparse;
  for (const auto &f : cat) {
    Poly det = determinant(f.matrix);
    for (const auto &[g, p] : f.spec.factors) {
      (void)p;
      auto pts = points_on(g, rng, 20);
      // polynomial branches give as many rational points as needed
      std::set<std::vector<Rat>> have(pts.begin(), pts.end());
      for (const auto &b : f.branches) {
        if (!vanishes_on(g, b, default_t_precision(b)) || valuation(g, b) != kInf) continue;
        for (int k = 1; k <= 24 && pts.size() < 20; ++k) {
          Rat t(k % 2 ? (k + 1) / 2 : -k / 2, 1 + k % 3);
          t.canonicalize();
          std::vector<Rat> pt;
          for (const auto &c : b.comps) pt.push_back(evaluate(c, {t}));
          if (evaluate(g, pt) == 0 && have.insert(pt).second) pts.push_back(pt);
        }
      }
      if (pts.size() < 20) sparse += (sparse.empty() ? "" : ", ") + f.name + "(" + std::to_string(pts.size()) + ")";
      for (const auto &pt : pts) {
        int c = corank_at_point(f.matrix, pt), m = mult_at(det, pt);
        ++checked;
        if (c < 1 || c > m)
          o.fail(f.name + ": corank " + std::to_string(c) + " vs mult " + std::to_string(m));
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(checked) + " points";
    if (!sparse.empty()) o.detail += "; components with fewer than 20 rational points: " + sparse;
  }
  return o;
}

std::string input_text(const PolyMatrix &M, const HypersurfaceSpec &H, const std::vector<std::string> &vars) {
  std::string s = "vars:";
  for (const auto &v : vars) s += " " + v;
  return s + "\nmatrix: " + to_string(M, vars) + "\nfactors: " + to_string(H, vars) + "\n";
}

int cli_decompose_saturated(const PolyMatrix &M, const HypersurfaceSpec &H, const std::vector<std::string> &vars) {
  auto path = std::filesystem::temp_directory_path() / "detrep_acceptance_input.txt";
  std::ofstream(path) << input_text(M, H, vars);
  std::ostringstream out, err;
  int code = run_cli({"decompose", "--mode", "saturated", path.string()}, out, err);
  std::filesystem::remove(path);
  return code;
}

// 3. saturated <=> decompose_saturated succeeds; unsaturated => exit 4
Outcome saturation_equivalence(const std::vector<Fixture> &cat) {
  Outcome o;
  struct Case {
    std::string name;
    PolyMatrix M;
    HypersurfaceSpec H;
    std::vector<std::string> vars;
  };
  std::vector<Case> cases;
  for (const auto &f : cat)
    if (f.spec.factors.size() >= 2) cases.push_back({f.name, f.matrix, f.spec, f.vars});
  for (auto [l, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}}) {
    Poly x = P("x"), y = P("y");
    PolyMatrix M = PolyMatrix::from_rows({{y + pow(x, l), pow(x, q)}, {Poly(2), y - pow(x, l)}}, 2);
    cases.push_back({"tacnode(" + std::to_string(l) + "," + std::to_string(q) + ")", M,
                     spec({{y + pow(x, l), 1}, {y - pow(x, l), 1}}), XY});
  }
  int sat = 0, unsat = 0;
  for (const auto &c : cases) {
    Poly f1 = pow(c.H.factors[0].first, c.H.factors[0].second), f2 = rest_of(c.H);
    auto s = is_saturated(c.M, f1, f2, 12);
    if (s.status == SatStatus::Inconclusive) {
      o.fail(c.name + ": saturation inconclusive");
      continue;
    }
    bool decomposed = false;
    try {
      auto cert = decompose_saturated(c.M, f1, f2, 12);
      decomposed = verify_certificate(c.M, cert).ok;
    } catch (const AlgebraError &) {
    }
    if (s.status == SatStatus::Saturated) {
      ++sat;
      if (!decomposed) o.fail(c.name + ": saturated but not decomposed");
    } else {
      ++unsat;
      if (decomposed) o.fail(c.name + ": unsaturated but decomposed");
      int code = cli_decompose_saturated(c.M, c.H, c.vars);
      if (code != kExitObstruction) o.fail(c.name + ": cli exit " + std::to_string(code) + ", expected 4");
    }
  }
  if (o.pass) o.detail = std::to_string(sat) + " saturated split, " + std::to_string(unsat) + " unsaturated exit 4";
  return o;
}

// 4. mf_augment succeeds iff maximally generated on the smooth locus
Outcome augmentation(const std::vector<Fixture> &cat) {
  Outcome o;
  std::vector<std::pair<std::string, std::pair<PolyMatrix, HypersurfaceSpec>>> cases;
  for (const auto &f : cat) cases.push_back({f.name, {f.matrix, f.spec}});
  cases.push_back({"x*I2", {parse_matrix("[x, 0; 0, x]", XY), spec({{P("x"), 2}})}});
  cases.push_back({"jordan", {parse_matrix("[y, x; 0, y]", XY), spec({{P("y"), 2}})}});
  int yes = 0, no = 0, unit_cases = 0;
  for (const auto &[name, mh] : cases) {
    const auto &[M, H] = mh;
    bool smooth = is_max_generated_smooth_locus(M, H);
    bool ok = false;
    try {
      PolyMatrix B = mf_augment(M, H);
      PolyMatrix fI = PolyMatrix::identity(M.dim(), M.nvars());
      // exact polynomial B with M B = prod f I exists only when det(M) / prod f^p is constant
      Poly u = *exact_divide(determinant(M), H.product());
      if (!u.is_constant()) ++unit_cases;
      Poly want = u.is_constant() ? H.reduced() : H.reduced() * u;
      for (int i = 0; i < M.dim(); ++i) fI(i, i) = want;
      ok = true;
      if (!(M * B == fI)) o.fail(name + ": M B != f I");
    } catch (const ObstructionError &) {
    } catch (const AlgebraError &e) {
      o.fail(name + ": " + e.what());
      continue;
    }
    if (ok != smooth) o.fail(name + ": augment " + (ok ? "succeeds" : "fails") + " but smooth-locus test is " + (smooth ? "true" : "false"));
    (ok ? yes : no)++;
  }
  if (o.pass) o.detail = std::to_string(yes) + " augmented, " + std::to_string(no) + " refused, " + std::to_string(unit_cases) + " with a non-constant unit in det";
  return o;
}

// a block of size 1 or 2 whose tangent cone is (y - s x)^size
PolyMatrix tangent_block(tg::Rng &rng, int size, const Rat &s) {
  Poly x = P("x"), y = P("y");
  Poly L = y - x * s;
  auto high = [&] { return tg::random_poly(rng, 2, 3, 2, 2); };
  if (size == 1) return PolyMatrix::from_rows({{L + high()}}, 2);
  Poly q = pow(x, tg::uniform(rng, 1, 2)) * tg::small_rat(rng, true);
  return PolyMatrix::from_rows({{L + high(), q}, {high(), L + high()}}, 2);
}

// 5. tangential round trip
Outcome tangential_round_trip() {
  Outcome o;
  tg::Rng rng(505);
  const int N = 8;
  for (int seed = 0; seed < 50; ++seed) {
    int nb = tg::uniform(rng, 2, 3);
    std::vector<int> sizes;
    std::vector<Rat> slopes;
    std::vector<PolyMatrix> blocks;
    while (static_cast<int>(slopes.size()) < nb) {
      Rat s(tg::uniform(rng, -3, 3), tg::uniform(rng, 1, 2));
      s.canonicalize();
      bool dup = false;
      for (const auto &t : slopes) dup = dup || t == s;
      if (dup) continue;
      slopes.push_back(s);
      sizes.push_back(tg::uniform(rng, 1, 2));
      blocks.push_back(tangent_block(rng, sizes.back(), s));
    }
    PolyMatrix D = block_diag(blocks, 2);
    EquivPair Q{tg::random_unit_triangular(rng, D.dim(), 2, 2, true), tg::random_unit_triangular(rng, D.dim(), 2, 2, false)};
    PolyMatrix M = apply_equiv(D, Q);
    const std::string tag = "seed " + std::to_string(seed);
    DecompCertificate c;
    try {
      c = tangential_decompose(M, N, seed);
    } catch (const AlgebraError &e) {
      o.fail(tag + ": " + e.what());
      continue;
    }
    if (c.certified_order != N || !verify_certificate(M, c).ok) {
      o.fail(tag + ": certificate does not verify at order 8");
      continue;
    }
    if (c.blocks.size() != blocks.size()) {
      o.fail(tag + ": " + std::to_string(c.blocks.size()) + " blocks, seed has " + std::to_string(blocks.size()));
      continue;
    }
    std::vector<bool> used(blocks.size(), false);
    for (const auto &b : c.blocks) {
      Poly g = determinant(b);
      bool found = false;
      for (std::size_t k = 0; k < blocks.size() && !found; ++k) {
        if (used[k] || blocks[k].dim() != b.dim()) continue;
        if (associated_mod(g, determinant(blocks[k]), N)) found = used[k] = true;
      }
      if (!found) o.fail(tag + ": block determinant " + to_string(g, XY) + " matches no seed block");
    }
  }
  if (o.pass) o.detail = "50 seeds, sizes and determinants recovered, certificates exact at order 8";
  return o;
}

// 6. both component orders of y (y^2 - x^(k+l))
Outcome triangularization() {
  Outcome o;
  Poly x = P("x"), y = P("y"), z(2);
  for (auto [k, l] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}}) {
    PolyMatrix M = PolyMatrix::from_rows({{y, z, x}, {z, y, pow(x, l)}, {z, pow(x, k), y}}, 2);
    Poly cusp = y * y - pow(x, k + l);
    std::vector<BranchParam> br{parse_branch("branch a: x = t, y = 0", XY),
                                parse_branch("branch b: x = t^2, y = t^" + std::to_string(k + l), XY)};
    for (int order = 0; order < 2; ++order) {
      auto H = order == 0 ? spec({{y, 1}, {cusp, 1}}) : spec({{cusp, 1}, {y, 1}});
      std::string tag = "(k,l)=(" + std::to_string(k) + "," + std::to_string(l) + ") " + (order ? "cusp first" : "line first");
      try {
        auto c = curve_triangularize(M, H, branches_by_factor(H, br), 12);
        if (!verify_certificate(M, c).ok) o.fail(tag + ": certificate fails");
        if (c.blocks.size() != 2) {
          o.fail(tag + ": wrong block count");
          continue;
        }
        for (int i = 0; i < 2; ++i)
          if (!associated_mod(determinant(c.blocks[i]), H.factors[i].first, 12)) o.fail(tag + ": block determinant mismatch");
      } catch (const AlgebraError &e) {
        o.fail(tag + ": " + e.what());
      }
    }
  }
  if (o.pass) o.detail = "(1,2), (2,3) in both orders";
  return o;
}

// 7. omp obstruction, smooth-branch fibre independence
Outcome obstruction_regression(const std::vector<Fixture> &cat) {
  Outcome o;
  PolyMatrix omp = parse_matrix("[x^2*y, x^3 - y^3; x^3 + y^3, x*y^2]", XY);
  auto r = triangular_obstruction(omp, 1, 1, 12);
  if (r.min_gens != 4 || r.tri_bound != 3 || !r.obstructed) o.fail("omp min gens " + std::to_string(r.min_gens));
  if (fibre_independence_test(omp, {}, 12).independent) o.fail("omp fibre test true");
  int lines = 0;
  for (const auto &f : cat) {
    if (f.name.rfind("lines_", 0) != 0) continue;
    ++lines;
    if (!fibre_independence_test(f.matrix, f.branches, 12).independent) o.fail(f.name + ": fibre test false");
    try {
      auto c = tangential_decompose(f.matrix, 12);
      bool full = verify_certificate(f.matrix, c).ok && c.blocks.size() == 2;
      for (const auto &b : c.blocks) full = full && b.dim() == 1;
      if (!full) o.fail(f.name + ": not completely decomposed");
    } catch (const AlgebraError &e) {
      o.fail(f.name + ": " + e.what());
    }
  }
  if (lines == 0) o.fail("no smooth-branch fixtures in the catalog");
  if (o.pass) o.detail = "omp 4 > 3 and not independent; " + std::to_string(lines) + " line fixtures independent and split";
  return o;
}

// 8. adjugate ideals of the cusp representations
Outcome an_ground_truth() {
  Outcome o;
  Poly x = P("x"), y = P("y");
  for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 0}, {2, 1}, {3, 1}}) {
    PolyMatrix M = PolyMatrix::from_rows({{y, pow(x, k - l)}, {pow(x, k + l + 1), y}}, 2);
    auto adj = adjugate(M).matrix;
    std::vector<Poly> g;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (!adj(i, j).is_zero()) g.push_back(adj(i, j));
    auto mine = buchberger(IdealGens(2, g)), truth = buchberger(an_conductor_adjoint(k, l, Parity::Even).adjoint);
    if (!(mine.basis == truth.basis)) o.fail("(k,l)=(" + std::to_string(k) + "," + std::to_string(l) + ")");
  }
  if (o.pass) o.detail = "(2,0), (2,1), (3,1) reduced bases equal";
  return o;
}

// 9. normal form round trip
Outcome normal_form_round_trip() {
  Outcome o;
  tg::Rng rng(909);
  const int N = 12;
  for (int it = 0; it < 20; ++it) {
    bool cusp = it % 2 == 1;
    NormalFormSpec s = cusp ? tg::random_cusp_spec(rng) : tg::random_chain_spec(rng);
    const std::string tag = "spec " + std::to_string(it);
    try {
      NormalFormSpec canon = normal_form_reduce(normal_form_build(s), s, N);
      check_normal_form(canon);
      PolyMatrix M0 = normal_form_build(canon);
      PolyMatrix M = apply_equiv(M0, tg::random_unit_pair(rng, M0.dim(), 2, 1));
      HypersurfaceSpec H;
      std::vector<BranchParam> br;
      if (cusp) {
        H = spec({{P("y"), 1}, {P("y^2 - x^5"), 1}});
        br = {parse_branch("branch a: x = t, y = 0", XY), parse_branch("branch b: x = t^2, y = t^5", XY)};
      } else {
        H = spec({{canon.diag[0], 1}, {canon.diag[1], 1}, {canon.diag[2], 1}});
        br = {parse_branch("branch a: x = t, y = -t^2", XY), parse_branch("branch b: x = t, y = 0", XY),
              parse_branch("branch c: x = t, y = t^3", XY)};
      }
      auto c = curve_triangularize(M, H, branches_by_factor(H, br), N);
      PolyMatrix R = jet(apply_equiv(M, c.P), N);
      NormalFormSpec back = normal_form_reduce(R, canon, N);
      if (!(back == canon)) o.fail(tag + ": got " + to_string(back) + ", want " + to_string(canon));
    } catch (const AlgebraError &e) {
      o.fail(tag + ": " + e.what());
    }
  }
  if (o.pass) o.detail = "10 chain and 10 cusp specs recovered";
  return o;
}

// 10. exact and local membership agree where each is sound
Outcome cross_oracle() {
  Outcome o;
  tg::Rng rng(1010);
  int members = 0, local_only = 0;
  for (int it = 0; it < 100; ++it) {
    int n = it % 4 == 0 ? 3 : 2;
    Poly f1 = tg::random_nonzero(rng, n, 3, 3, 1), f2 = tg::random_nonzero(rng, n, 3, 3, 1);
    if (it % 5 == 0) f2 = f2 + Poly::constant(n, 1);  // a local unit
    Poly h;
    if (it % 2 == 0)
      h = tg::random_poly(rng, n, 3, 2) * f1 + tg::random_poly(rng, n, 3, 2) * f2;
    else
      h = tg::random_nonzero(rng, n, 6, 4);
    IdealGens I(n, {f1, f2});
    bool exact = membership(h, I).member;
    bool local = local_membership_mod(h, I, 12).member;
    if (exact && !local) o.fail("instance " + std::to_string(it) + ": exact member but local-false");
    members += exact;
    local_only += (!exact && local);
  }
  if (o.pass)
    o.detail = "100 instances, " + std::to_string(members) + " exact members, " + std::to_string(local_only) + " members only locally";
  return o;
}

}  // namespace

int main() {
  auto cat = load_catalog();
  std::vector<std::pair<std::string, std::function<Outcome()>>> crit = {
      {"adjugate identities", adjugate_identities},
      {"corank bound", [&] { return corank_bound(cat); }},
      {"saturation iff decomposability", [&] { return saturation_equivalence(cat); }},
      {"augmentation iff maximal generation on the smooth locus", [&] { return augmentation(cat); }},
      {"tangential round trip", tangential_round_trip},
      {"curve triangularization in both orders", triangularization},
      {"obstruction regression", [&] { return obstruction_regression(cat); }},
      {"cusp adjoint ideals", an_ground_truth},
      {"normal form round trip", normal_form_round_trip},
      {"exact vs local membership", cross_oracle},
  };
  int failed = 0;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = crit[i].second();
    } catch (const std::exception &e) {
      r.fail(std::string("uncaught: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !r.pass;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2fs", s);
    std::cout << "criterion " << i + 1 << " " << (r.pass ? "PASS" : "FAIL") << "  " << crit[i].first << ": " << r.detail
              << " [" << secs << "]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
