#include "weierstrass.hpp"

#include <random>

namespace detrep::detail {

Poly xlow(const Poly &p, int c) {
  std::vector<Term> ts;
  for (const auto &t : p.terms())
    if (t.first.deg < c) ts.push_back(t);
  return Poly::from_terms(p.nvars(), std::move(ts));
}

Poly xdiv(const Poly &p, int c) {
  std::vector<Term> ts;
  for (const auto &t : p.terms()) {
    if (t.first[0] < c) throw AlgebraError("xdiv: not divisible by x^" + std::to_string(c));
    Monomial m = t.first;
    m.set(0, m[0] - c);
    ts.emplace_back(m, t.second);
  }
  return Poly::from_terms(p.nvars(), std::move(ts));
}

Poly series_div(const Poly &a, const Poly &b, int N) {
  if (b.is_zero()) throw AlgebraError("series_div: division by zero");
  if (a.is_zero()) return Poly(a.nvars());
  const int c = b.ord();
  if (a.ord() < c) throw AlgebraError("series_div: quotient is not a series");
  const int M = std::max(0, N - c);
  return mul_trunc(xdiv(jet(a, N), c), invert_unit_jet(xdiv(b, c), M), M);
}

void conj_elementary(PolyMatrix &Y, int i, int j, const Poly &beta, int N) {
  const int d = Y.dim();
  // row i += beta * row j, then column j -= beta * column i
  for (int k = 0; k < d; ++k) Y(i, k) = jet(Y(i, k) + mul_trunc(beta, Y(j, k), N), N);
  for (int k = 0; k < d; ++k) Y(k, j) = jet(Y(k, j) - mul_trunc(beta, Y(k, i), N), N);
}

void conj_diagonal(PolyMatrix &Y, const std::vector<Poly> &dv, int N) {
  const int d = Y.dim();
  std::vector<Poly> inv;
  for (const auto &u : dv) inv.push_back(invert_unit_jet(u, N));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      if (a != b) Y(a, b) = mul_trunc(mul_trunc(dv[a], Y(a, b), N), inv[b], N);
}

YAction y_action(const PolyMatrix &M, int N, int NZ) {
  const int d = M.dim();
  if (M.nvars() != 2) throw AlgebraError("y-action needs two variables");
  if (!M.constant_part().empty() && rat_rank(M.constant_part()) != 0)
    throw AlgebraError("y-action needs M(0) = 0");
  if (NZ < 0) NZ = N;
  // M = sum_k M_k(x) y^k
  int ky = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) ky = std::max(ky, deg_var(M(i, j), 1));
  std::vector<PolyMatrix> Mk(std::max(ky, 1) + 1, PolyMatrix(d, d, 2));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::vector<std::vector<Term>> parts(Mk.size());
      for (const auto &t : M(i, j).terms()) parts[t.first[1]].emplace_back(Monomial({t.first[0], 0}), t.second);
      for (std::size_t k = 0; k < Mk.size(); ++k) Mk[k](i, j) = Poly::from_terms(2, std::move(parts[k]));
    }
  if (!invertible_at_origin(Mk[1])) throw AlgebraError("y-action needs dM/dy(0) invertible");
  // sum_k Y^k M_k = 0 over k[[x]], solved one x-coefficient at a time: Y(0) = 0,
  // so the x^n equation is linear in Y_n with matrix M_1(0)
  const int K = static_cast<int>(Mk.size()) - 1;
  auto coeffs = [&](const PolyMatrix &A) {
    std::vector<RatMat> c(N + 1, RatMat(d, RatVec(d)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (const auto &t : A(i, j).terms())
          if (t.first[0] <= N) c[t.first[0]][i][j] = t.second;
    return c;
  };
  std::vector<std::vector<RatMat>> mk;
  for (const auto &A : Mk) mk.push_back(coeffs(A));
  const RatMat inv0 = *rat_inverse(mk[1][0]);
  // pw[k][n]: coefficient of x^n in Y^k, k >= 1
  std::vector<std::vector<RatMat>> pw(K + 1, std::vector<RatMat>(N + 1, RatMat(d, RatVec(d))));
  auto addmul = [&](RatMat &acc, const RatMat &a, const RatMat &b) {
    for (int i = 0; i < d; ++i)
      for (int l = 0; l < d; ++l) {
        if (a[i][l] == 0) continue;
        for (int j = 0; j < d; ++j) acc[i][j] += a[i][l] * b[l][j];
      }
  };
  for (int n = 1; n <= N; ++n) {
    for (int k = 2; k <= K; ++k)
      for (int a = 1; a < n; ++a) addmul(pw[k][n], pw[1][a], pw[k - 1][n - a]);
    RatMat S = mk[0][n];
    for (int a = 1; a < n; ++a) addmul(S, pw[1][a], mk[1][n - a]);
    for (int k = 2; k <= K; ++k)
      for (int b = 1; b <= n; ++b) addmul(S, pw[k][b], mk[k][n - b]);
    RatMat Yn = rat_mul(S, inv0);
    for (auto &row : Yn)
      for (auto &v : row) v = -v;
    pw[1][n] = Yn;
  }
  PolyMatrix Y(d, d, 2);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::vector<Term> ts;
      for (int n = 1; n <= N; ++n)
        if (pw[1][n][i][j] != 0) ts.emplace_back(Monomial({n, 0}), pw[1][n][i][j]);
      Y(i, j) = Poly::from_terms(2, std::move(ts));
    }
  // M = (y - Y) W with W = sum_k (sum_{a+b=k-1} y^a Y^b) M_k, so Z = W^-1
  Poly y = Poly::var(2, 1);
  PolyMatrix Yz = jet(Y, NZ), Q = PolyMatrix::identity(d, 2), Yk = Yz, W = Mk[1];
  for (std::size_t k = 2; k < Mk.size(); ++k) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) Q(i, j) = jet(Q(i, j) * y + Yk(i, j), NZ);
    W = W + mul_trunc(Q, Mk[k], NZ);
    Yk = mul_trunc(Yk, Yz, NZ);
  }
  return {Y, invert_jet(jet(W, NZ), NZ)};
}

namespace {
bool y_regular(const PolyMatrix &M, const RatMat &T) {
  PolyMatrix Mt = linear_change(jet(M, 1), T);
  const int d = M.dim();
  RatMat Q(d, RatVec(d));
  Monomial ym({0, 1});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) Q[i][j] = Mt(i, j).coeff(ym);
  return rat_rank(Q) == d;
}
}  // namespace

RatMat y_regular_coordinates(const PolyMatrix &M, std::uint64_t seed, bool randomize) {
  if (!randomize) {
    for (int a = 0; a < 64; ++a) {
      RatMat T{{1, a}, {0, 1}};
      if (y_regular(M, T)) return T;
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u(-3, 3);
    for (int it = 0; it < 256; ++it) {
      RatMat T{{u(rng), u(rng)}, {u(rng), u(rng)}};
      if (rat_det(T) == 0) continue;
      if (y_regular(M, T)) return T;
    }
  }
  throw AlgebraError("no coordinates make dM/dy(0) invertible; the matrix is not maximally generated");
}

}  // namespace detrep::detail
