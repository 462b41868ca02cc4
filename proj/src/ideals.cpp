#include "detrep/ideals.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "detrep/linalg.hpp"

namespace detrep {

IdealGens::IdealGens(int n, std::vector<Poly> g) : nvars(n) {
  for (auto &p : g) {
    if (p.nvars() != n) throw AlgebraError("ideal generator has wrong variable count");
    if (!p.is_zero()) gens.push_back(std::move(p));
  }
}

const Term &leading_term(const Poly &p) {
  if (p.is_zero()) throw AlgebraError("leading term of zero");
  const auto &ts = p.terms();
  std::size_t best = ts.size() - 1;
  int top = ts.back().first.deg;
  for (std::size_t i = ts.size() - 1; i-- > 0;) {
    if (ts[i].first.deg != top) break;
    if (grevlex_greater(ts[i].first, ts[best].first)) best = i;
  }
  return ts[best];
}

namespace {

struct Tracked {
  Poly g;
  std::vector<Poly> co;  // g = sum co[i] * f_i
};

Poly monic(const Poly &p, Rat *scale) {
  Rat c = leading_term(p).second;
  if (scale) *scale = 1 / c;
  return p * Rat(1 / c);
}

void scale_co(std::vector<Poly> &co, const Rat &s) {
  for (auto &c : co) c *= s;
}

// co_a -= m*c * co_b
void sub_co(std::vector<Poly> &a, const Poly &mc, const std::vector<Poly> &b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b[i].is_zero()) a[i] -= mc * b[i];
}

// full reduction of t against basis, updating t.co with quotients
void reduce_tracked(Tracked &t, const std::vector<Tracked> &G, bool track) {
  const int n = t.g.nvars();
  Poly rem(n);
  Poly p = t.g;
  while (!p.is_zero()) {
    Term lt = leading_term(p);
    bool done = false;
    for (const auto &g : G) {
      const Term &lg = leading_term(g.g);
      if (!lg.first.divides(lt.first)) continue;
      Poly mc = Poly::term(n, lt.first / lg.first, lt.second / lg.second);
      p -= mc * g.g;
      if (track) sub_co(t.co, mc, g.co);
      done = true;
      break;
    }
    if (!done) {
      Poly lp = Poly::term(n, lt.first, lt.second);
      rem += lp;
      p -= lp;
    }
  }
  t.g = rem;
}

std::vector<Tracked> tracked_gb(const IdealGens &I, bool track) {
  const int n = I.nvars;
  const std::size_t m = I.gens.size();
  std::vector<Tracked> G;
  for (std::size_t i = 0; i < m; ++i) {
    Tracked t;
    t.g = I.gens[i];
    if (track) {
      t.co.assign(m, Poly(n));
      t.co[i] = Poly::constant(n, 1);
    }
    reduce_tracked(t, G, track);
    if (t.g.is_zero()) continue;
    Rat s;
    t.g = monic(t.g, &s);
    if (track) scale_co(t.co, s);
    G.push_back(std::move(t));
  }

  struct Pair {
    int i, j, deg;
  };
  std::vector<Pair> pairs;
  auto lcm_of = [&](int i, int j) { return lcm(leading_term(G[i].g).first, leading_term(G[j].g).first); };
  for (int j = 0; j < static_cast<int>(G.size()); ++j)
    for (int i = 0; i < j; ++i) pairs.push_back({i, j, lcm_of(i, j).deg});

  auto pending = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    for (const auto &p : pairs)
      if (p.i == a && p.j == b) return true;
    return false;
  };

  while (!pairs.empty()) {
    // normal strategy; ties by index
    auto it = std::min_element(pairs.begin(), pairs.end(), [](const Pair &a, const Pair &b) {
      if (a.deg != b.deg) return a.deg < b.deg;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    });
    Pair pr = *it;
    pairs.erase(it);
    const Term &li = leading_term(G[pr.i].g);
    const Term &lj = leading_term(G[pr.j].g);
    Monomial L = lcm(li.first, lj.first);
    if (L == li.first * lj.first) continue;  // coprime leading terms
    bool chain = false;
    for (int k = 0; k < static_cast<int>(G.size()) && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (leading_term(G[k].g).first.divides(L) && !pending(pr.i, k) && !pending(pr.j, k)) chain = true;
    }
    if (chain) continue;
    Poly mi = Poly::term(n, L / li.first, Rat(1) / li.second);
    Poly mj = Poly::term(n, L / lj.first, Rat(1) / lj.second);
    Tracked s;
    s.g = mi * G[pr.i].g - mj * G[pr.j].g;
    if (track) {
      s.co.assign(m, Poly(n));
      for (std::size_t q = 0; q < m; ++q) s.co[q] = mi * G[pr.i].co[q] - mj * G[pr.j].co[q];
    }
    reduce_tracked(s, G, track);
    if (s.g.is_zero()) continue;
    Rat sc;
    s.g = monic(s.g, &sc);
    if (track) scale_co(s.co, sc);
    G.push_back(std::move(s));
    int nk = static_cast<int>(G.size()) - 1;
    for (int i = 0; i < nk; ++i) pairs.push_back({i, nk, lcm_of(i, nk).deg});
  }

  // minimize
  std::vector<Tracked> Gm;
  for (std::size_t i = 0; i < G.size(); ++i) {
    const Monomial &li = leading_term(G[i].g).first;
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial &lj = leading_term(G[j].g).first;
      if (lj.divides(li) && (!(lj == li) || j < i)) redundant = true;
    }
    if (!redundant) Gm.push_back(G[i]);
  }
  // interreduce tails
  for (std::size_t i = 0; i < Gm.size(); ++i) {
    std::vector<Tracked> others;
    for (std::size_t j = 0; j < Gm.size(); ++j)
      if (j != i) others.push_back(Gm[j]);
    // minimality keeps the leading term; only the tail changes
    Tracked t = Gm[i];
    reduce_tracked(t, others, track);
    Gm[i] = std::move(t);
  }
  std::sort(Gm.begin(), Gm.end(), [](const Tracked &a, const Tracked &b) {
    return grevlex_greater(leading_term(b.g).first, leading_term(a.g).first);
  });
  return Gm;
}

}  // namespace

GroebnerBasis buchberger(const IdealGens &I) {
  if (I.gens.empty()) throw AlgebraError("buchberger: empty generator list");
  GroebnerBasis gb;
  for (auto &t : tracked_gb(I, false)) gb.basis.push_back(std::move(t.g));
  return gb;
}

Poly normal_form(const Poly &h, const GroebnerBasis &G) {
  std::vector<Tracked> tg;
  for (const auto &g : G.basis) tg.push_back({g, {}});
  Tracked t{h, {}};
  reduce_tracked(t, tg, false);
  return t.g;
}

MembershipResult membership(const Poly &h, const IdealGens &I) {
  MembershipResult res;
  const int n = I.nvars;
  res.cert.multipliers.assign(I.gens.size(), Poly(n));
  res.cert.exact = true;
  if (h.is_zero()) {
    res.member = true;
    return res;
  }
  if (I.gens.empty()) return res;
  auto G = tracked_gb(I, true);
  Tracked t{h, std::vector<Poly>(I.gens.size(), Poly(n))};
  // reduce_tracked subtracts quotients: h - sum q_k g_k = rem
  reduce_tracked(t, G, true);
  if (!t.g.is_zero()) return res;
  res.member = true;
  for (auto &c : t.co) c = -c;
  Poly check(n);
  for (std::size_t i = 0; i < I.gens.size(); ++i) check += t.co[i] * I.gens[i];
  if (!(check == h)) throw AlgebraError("membership: certificate reconstruction failed");
  res.cert.multipliers = std::move(t.co);
  return res;
}

std::vector<Monomial> monomials_upto(int n, int D) {
  std::vector<Monomial> out;
  std::vector<int> e(n, 0);
  // enumerate per degree
  for (int d = 0; d <= D; ++d) {
    std::vector<Monomial> layer;
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == n - 1) {
        e[i] = left;
        layer.emplace_back(e);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[i] = k;
        rec(i + 1, left - k);
      }
    };
    rec(0, d);
    std::sort(layer.begin(), layer.end(), GrlexLess{});
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

namespace {

struct MonoIndex {
  std::map<Monomial, int, GrlexLess> idx;
  explicit MonoIndex(const std::vector<Monomial> &ms) {
    for (std::size_t i = 0; i < ms.size(); ++i) idx.emplace(ms[i], static_cast<int>(i));
  }
  int at(const Monomial &m) const { return idx.at(m); }
};

SparseRow to_row(const Poly &p, const MonoIndex &mi) {
  SparseRow r;
  for (const auto &t : p.terms()) r.emplace_back(mi.at(t.first), t.second);
  std::sort(r.begin(), r.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
  return r;
}

}  // namespace

MembershipResult local_membership_mod(const Poly &h, const IdealGens &I, int D) {
  const int n = I.nvars;
  MembershipResult res;
  res.cert.exact = false;
  res.cert.residual_order = D;
  res.cert.multipliers.assign(I.gens.size(), Poly(n));
  Poly hj = jet(h, D);
  if (hj.is_zero()) {
    res.member = true;
    return res;
  }
  auto monos = monomials_upto(n, D);
  MonoIndex mi(monos);
  // unknown u <-> (generator, multiplier monomial)
  std::vector<std::pair<int, Monomial>> unk;
  std::vector<SparseRow> cols;
  for (std::size_t i = 0; i < I.gens.size(); ++i) {
    int o = I.gens[i].ord();
    if (o > D) continue;
    Poly fi = jet(I.gens[i], D);
    for (const auto &m : monos) {
      if (m.deg > D - o) break;
      Poly c = mul_trunc(Poly::term(n, m, 1), fi, D);
      unk.emplace_back(static_cast<int>(i), m);
      cols.push_back(to_row(c, mi));
    }
  }
  const int nunk = static_cast<int>(unk.size());
  std::vector<SparseRow> eqs(monos.size());
  for (int u = 0; u < nunk; ++u)
    for (auto &[r, v] : cols[u]) eqs[r].emplace_back(u, v);
  for (const auto &t : hj.terms()) eqs[mi.at(t.first)].emplace_back(nunk, t.second);
  auto x = sparse_solve(eqs, nunk);
  if (!x) return res;
  res.member = true;
  std::vector<std::vector<Term>> ts(I.gens.size());
  for (int u = 0; u < nunk; ++u)
    if ((*x)[u] != 0) ts[unk[u].first].emplace_back(unk[u].second, (*x)[u]);
  for (std::size_t i = 0; i < I.gens.size(); ++i) res.cert.multipliers[i] = Poly::from_terms(n, std::move(ts[i]));
  return res;
}

int min_generators_mod(const IdealGens &I, int D) {
  const int n = I.nvars;
  for (const auto &g : I.gens)
    if (g.constant_term() != 0) throw UnitIdealError("min_generators_mod: unit generator " + to_string(g, {}));
  auto monos = monomials_upto(n, D);
  MonoIndex mi(monos);
  SparseEchelon ech;
  for (const auto &g : I.gens) {
    if (g.ord() > D) continue;
    Poly gj = jet(g, D);
    for (const auto &m : monos) {
      if (m.deg == 0) continue;
      if (m.deg > D - g.ord()) break;
      ech.add(to_row(mul_trunc(Poly::term(n, m, 1), gj, D), mi));
    }
  }
  int count = 0;
  for (const auto &g : I.gens) {
    if (g.ord() > D) continue;
    if (ech.add(to_row(jet(g, D), mi))) ++count;
  }
  return count;
}

bool same_ideal(const IdealGens &a, const IdealGens &b) {
  if (a.gens.empty() || b.gens.empty()) return a.gens.empty() == b.gens.empty();
  return buchberger(a).basis == buchberger(b).basis;
}

}  // namespace detrep
