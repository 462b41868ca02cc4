#include <map>

#include "detrep/curves.hpp"
#include "weierstrass.hpp"

namespace detrep {

using detail::conj_diagonal;
using detail::conj_elementary;
using detail::series_div;
using detail::xdiv;
using detail::xlow;

namespace {

Poly lambda_of(const Poly &f) {
  Poly lam = Poly::var(2, 1) - f;
  if (deg_var(lam, 1) > 0) throw AlgebraError("context diagonal entry is not y - lam(x)");
  return lam;
}

// coker M = k[[x]]^d with y acting by Y; conjugation of Y is equivalence of M
NormalFormSpec reduce_chain(PolyMatrix Y, const NormalFormSpec &ctx, int N) {
  const int p = static_cast<int>(ctx.diag.size());
  const int Nc = N - 2;
  if (Y.dim() != p) throw AlgebraError("normal_form_reduce: size does not match the context");
  if (p > 3) throw AlgebraError("normal_form_reduce: chains of more than three branches are not supported");
  std::vector<Poly> lam;
  for (const auto &f : ctx.diag) lam.push_back(lambda_of(f));
  for (int i = 0; i < p; ++i) {
    if (!jet(Y(i, i) - lam[i], Nc).is_zero())
      throw AlgebraError("normal_form_reduce: diagonal does not match the context order");
    for (int j = 0; j < i; ++j)
      if (!jet(Y(i, j), Nc).is_zero()) throw AlgebraError("normal_form_reduce: input is not upper triangular");
  }
  std::vector<std::vector<int>> c(p, std::vector<int>(p, 0));
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      c[i][j] = contact_order(ctx.diag[i], ctx.diag[j]);
      if (c[i][j] >= Nc) throw AlgebraError("normal_form_reduce: contact order exceeds the jet order");
    }
  // entry (i,j) is only defined modulo lam_j - lam_i
  auto clear = [&](int i, int j) {
    Poly s = Y(i, j) - xlow(Y(i, j), c[i][j]);
    if (s.is_zero()) return;
    Poly beta = -series_div(s, lam[j] - lam[i], N);
    conj_elementary(Y, i, j, beta, N);
    Y(i, j) = xlow(Y(i, j), c[i][j]);
  };
  for (int i = 0; i + 1 < p; ++i) clear(i, i + 1);
  // superdiagonal of M = y I - Y becomes x^n
  std::vector<Poly> dv(p, Poly::constant(2, 1));
  NormalFormSpec out;
  out.family = NormalFamily::Chain;
  out.diag = ctx.diag;
  out.beta.assign(p - 1, 0);
  out.n.assign(p - 1, 0);
  for (int i = p - 2; i >= 0; --i) {
    const Poly &r = Y(i, i + 1);
    dv[i] = dv[i + 1];
    if (r.is_zero()) continue;
    out.beta[i] = 1;
    out.n[i] = r.ord();
    Poly w = -xdiv(r, out.n[i]);
    dv[i] = mul_trunc(dv[i + 1], invert_unit_jet(w, N), N);
  }
  conj_diagonal(Y, dv, N);
  for (int i = 0; i + 1 < p; ++i) {
    Y(i, i + 1) = xlow(Y(i, i + 1), c[i][i + 1]);
    Poly want = out.beta[i] ? -pow(Poly::var(2, 0), out.n[i]) : Poly(2);
    if (!(Y(i, i + 1) == want)) throw AlgebraError("normal_form_reduce: superdiagonal normalization lost precision");
  }
  if (p == 3) {
    clear(0, 2);
    Poly h = -Y(0, 2);
    if (!out.beta[0] || !out.beta[1]) {
      // one of the outer diagonal units is free, so only ord h survives
      if (!h.is_zero()) h = pow(Poly::var(2, 0), h.ord());
    } else {
      // units fixing both superdiagonals move h by 1 + O(x^e), and the
      // superdiagonals themselves absorb x^{n1}, x^{n2}
      int m = std::min({out.n[0], out.n[1], c[0][2]});
      h = xlow(h, m);
      if (!h.is_zero()) {
        int e = std::min(c[0][1] - out.n[0], c[1][2] - out.n[1]);
        h = xlow(h, std::min(m, h.ord() + e));
      }
    }
    if (!h.is_zero()) out.h[{0, 2}] = h;
  }
  return out;
}

using ExpMap = std::map<int, Rat>;

// (p1, p2) for the cusp family up to the units of k[[x]][B]; as t-series the
// pair is p2(t^2) + p1(t^2) t^o with o = 2l+1-2m, and those units are k[[t^2, t^o]]^*
void canonical_cusp(int l, int m, Poly &p1, Poly &p2) {
  if (m > l) {
    std::swap(p1, p2);
    canonical_cusp(l, 2 * l + 1 - m, p1, p2);
    std::swap(p1, p2);
    return;
  }
  const int o = 2 * l + 1 - 2 * m;
  const int even_cap = 2 * (2 * l + 1 - m), odd_cap = 2 * l + 1;
  auto in_v = [&](int e) { return e % 2 == 0 ? e < even_cap : e < odd_cap; };
  auto in_s = [&](int s) { return s >= 0 && (s % 2 == 0 || s >= o); };
  ExpMap e;
  for (const auto &t : p2.terms()) e[2 * t.first[0]] += t.second;
  for (const auto &t : p1.terms()) e[2 * t.first[0] + o] += t.second;
  auto strip = [&]() {
    for (auto it = e.begin(); it != e.end();)
      it = (it->second == 0 || !in_v(it->first)) ? e.erase(it) : std::next(it);
  };
  strip();
  if (!e.empty()) {
    const int j = e.begin()->first;
    Rat lead = e.begin()->second;
    for (auto &kv : e) kv.second /= lead;
    for (int k = j + 1; k < even_cap + odd_cap; ++k) {
      auto it = e.find(k);
      if (it == e.end() || !in_s(k - j)) continue;
      Rat cf = it->second;
      ExpMap prod = e;
      for (const auto &kv : e) prod[kv.first + k - j] -= cf * kv.second;
      e = std::move(prod);
      strip();
    }
  }
  std::vector<Term> t1, t2;
  for (const auto &[ex, cf] : e) {
    if (ex % 2 == 0)
      t2.emplace_back(Monomial({ex / 2, 0}), cf);
    else
      t1.emplace_back(Monomial({(ex - o) / 2, 0}), cf);
  }
  p1 = Poly::from_terms(2, std::move(t1));
  p2 = Poly::from_terms(2, std::move(t2));
}

NormalFormSpec reduce_cusp(PolyMatrix Y, const NormalFormSpec &ctx, int N) {
  const int l = ctx.l, m = ctx.m;
  const int Nc = N - 2;
  if (Y.dim() != 3) throw AlgebraError("cusp family is 3x3");
  if (l < 1 || m < 1 || m > 2 * l) throw AlgebraError("cusp context needs 1 <= m <= 2l");
  if (Nc < 2 * l + 2) throw AlgebraError("normal_form_reduce: jet order too small for this cusp");
  if (!jet(Y(0, 0), Nc).is_zero() || !jet(Y(1, 0), Nc).is_zero() || !jet(Y(2, 0), Nc).is_zero())
    throw AlgebraError("normal_form_reduce: expected the branch y first and a block below it");
  PolyMatrix B = Y.block(1, 1, 2, 2);
  int j = B.ord();
  if (j == kInf) throw AlgebraError("normal_form_reduce: zero 2x2 block");
  PolyMatrix Bt(2, 2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) Bt(a, b) = xdiv(B(a, b), j);
  RatMat B0 = Bt.constant_part();
  int k = (B0[0][0] != 0 || B0[1][0] != 0) ? 0 : 1;
  std::vector<Poly> w{Poly(2), Poly(2)}, bw{Bt(0, k), Bt(1, k)};
  w[k] = Poly::constant(2, 1);
  // basis v1, v2 with B v1 = -x^m v2 and B v2 = -x^{2l+1-m} v1
  std::vector<Poly> v1, v2;
  if (m == j) {
    v1 = w;
    v2 = {-bw[0], -bw[1]};
  } else if (m == 2 * l + 1 - j) {
    v1 = bw;
    v2 = {-w[0], -w[1]};
  } else {
    throw AlgebraError("normal_form_reduce: block is not equivalent to the m of the context");
  }
  PolyMatrix P = PolyMatrix::from_rows({{v1[0], v2[0]}, {v1[1], v2[1]}}, 2);
  if (!invertible_at_origin(P)) throw AlgebraError("normal_form_reduce: degenerate cyclic basis");
  PolyMatrix Bn = mul_trunc(mul_trunc(invert_jet(P, N), B, N), P, N);
  Poly x = Poly::var(2, 0);
  PolyMatrix target = PolyMatrix::from_rows({{Poly(2), -pow(x, 2 * l + 1 - m)}, {-pow(x, m), Poly(2)}}, 2);
  if (!jet(Bn - target, Nc - j).is_zero()) throw AlgebraError("normal_form_reduce: block normalization failed");
  Poly q1 = mul_trunc(Y(0, 1), P(0, 0), N) + mul_trunc(Y(0, 2), P(1, 0), N);
  Poly q2 = mul_trunc(Y(0, 1), P(0, 1), N) + mul_trunc(Y(0, 2), P(1, 1), N);
  NormalFormSpec out;
  out.family = NormalFamily::Cusp;
  out.l = l;
  out.m = m;
  out.p1 = xlow(-q1, m);
  out.p2 = xlow(-q2, 2 * l + 1 - m);
  canonical_cusp(l, m, out.p1, out.p2);
  return out;
}

}  // namespace

NormalFormSpec normal_form_reduce(const PolyMatrix &M, const NormalFormSpec &context, int N) {
  if (M.nvars() != 2) throw AlgebraError("normal forms live in two variables");
  auto ya = detail::y_action(M, N);
  PolyMatrix Y = jet(ya.Y, N);
  if (context.family == NormalFamily::Cusp) return reduce_cusp(Y, context, N);
  return reduce_chain(Y, context, N);
}

}  // namespace detrep
