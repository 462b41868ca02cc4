#include "detrep/decompose.hpp"
#include "weierstrass.hpp"

namespace detrep {

using detail::series_div;

namespace {

// f(x, Y) for a matrix Y over k[[x]]
PolyMatrix eval_at_matrix(const Poly &f, const PolyMatrix &Y, int N) {
  const int d = Y.dim();
  std::vector<PolyMatrix> pw{PolyMatrix::identity(d, 2)};
  PolyMatrix R(d, d, 2);
  for (const auto &t : f.terms()) {
    int b = t.first[1];
    while (static_cast<int>(pw.size()) <= b) pw.push_back(mul_trunc(pw.back(), Y, N));
    Poly cx = Poly::term(2, Monomial({t.first[0], 0}), t.second);
    R += jet(scale(pw[b], cx), N);
  }
  return R;
}

// invertible C over k[[x]] with F C = [0 | F'], kernel columns first; entries
// of order above lim count as zero
PolyMatrix dvr_kernel_split(PolyMatrix F, int N, int lim, int *kdim) {
  const int r = F.dim();
  PolyMatrix C = PolyMatrix::identity(r, 2);
  std::vector<bool> row_done(r, false), pivot(r, false);
  for (;;) {
    int br = -1, bc = -1, bo = lim + 1;
    for (int a = 0; a < r; ++a) {
      if (row_done[a]) continue;
      for (int b = 0; b < r; ++b) {
        if (pivot[b]) continue;
        int o = F(a, b).ord();
        if (o < bo) bo = o, br = a, bc = b;
      }
    }
    if (br < 0) break;
    for (int b = 0; b < r; ++b) {
      if (pivot[b] || b == bc || F(br, b).is_zero()) continue;
      Poly q = series_div(F(br, b), F(br, bc), N);
      for (int a = 0; a < r; ++a) {
        F(a, b) = jet(F(a, b) - mul_trunc(q, F(a, bc), N), N);
        C(a, b) = jet(C(a, b) - mul_trunc(q, C(a, bc), N), N);
      }
      F(br, b) = Poly(2);
    }
    row_done[br] = true;
    pivot[bc] = true;
  }
  std::vector<int> order;
  for (int b = 0; b < r; ++b)
    if (!pivot[b]) order.push_back(b);
  *kdim = static_cast<int>(order.size());
  for (int b = 0; b < r; ++b)
    if (pivot[b]) order.push_back(b);
  std::vector<int> all(r);
  for (int a = 0; a < r; ++a) all[a] = a;
  return submatrix(C, all, order);
}

int y_block_size(const Poly &f) {
  // ord of f(0, y): the number of eigenvalues of Y that f accounts for
  Poly f0 = substitute(f, {Poly(2), Poly::var(2, 1)});
  if (f0.is_zero()) throw InconclusiveError("curve_triangularize: factor contains the y axis after the coordinate change");
  return f0.ord();
}

}  // namespace

DecompCertificate curve_triangularize(const PolyMatrix &M, const HypersurfaceSpec &H,
                                      const std::vector<std::vector<BranchParam>> &params, int N) {
  if (M.nvars() != 2) throw InconclusiveError("curve_triangularize needs two variables");
  const int d = M.dim();
  validate_spec(H);
  if (params.size() != H.factors.size()) throw SpecError("curve_triangularize: one branch list per factor expected");
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i].empty())
      throw SpecError("curve_triangularize: factor " + std::to_string(i + 1) + " has no parametrization");
    for (const auto &b : params[i])
      if (!vanishes_on(H.factors[i].first, b, default_t_precision(b)))
        throw SpecError("curve_triangularize: branch " + b.label + " does not lie on factor " + std::to_string(i + 1));
  }
  check_determinant(M, H.product());
  if (!M.constant_part().empty() && rat_rank(M.constant_part()) != 0)
    throw InconclusiveError("curve_triangularize: M(0) != 0, reduce to the minimal form first");
  if (d != multiplicity(determinant(M)))
    throw InconclusiveError("curve_triangularize: not maximally generated at the origin");

  RatMat T = detail::y_regular_coordinates(M, 0, false);
  RatMat Ti = *rat_inverse(T);
  PolyMatrix Mt = linear_change(M, T);
  std::vector<Poly> ft;
  std::vector<int> sizes;
  for (const auto &[f, p] : H.factors) {
    ft.push_back(pow(linear_change(f, T), p));
    sizes.push_back(y_block_size(ft.back()));
  }

  std::string why;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const int Nw = 2 * N + 6 + attempt * (N + 4);
    auto ya = detail::y_action(Mt, Nw, N);
    PolyMatrix Y = jet(ya.Y, Nw);
    PolyMatrix g = PolyMatrix::identity(d, 2);
    int s = 0;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < ft.size() && ok; ++i) {
      const int r = d - s;
      PolyMatrix F = eval_at_matrix(ft[i], Y.block(s, s, r, r), Nw);
      int kd = 0;
      PolyMatrix Gs = dvr_kernel_split(F, Nw, Nw / 2, &kd);
      if (kd != sizes[i]) {
        why = "kernel rank " + std::to_string(kd) + " for a block of size " + std::to_string(sizes[i]);
        ok = false;
        break;
      }
      PolyMatrix G = PolyMatrix::identity(d, 2);
      G.set_block(s, s, Gs);
      Y = mul_trunc(mul_trunc(invert_jet(G, Nw), Y, Nw), G, Nw);
      g = mul_trunc(g, G, Nw);
      s += kd;
    }
    if (!ok) continue;
    PolyMatrix A = linear_change(invert_jet(g, Nw), Ti);
    PolyMatrix B = linear_change(mul_trunc(ya.Z, g, Nw), Ti);
    A = jet(A, N);
    B = jet(B, N);
    DecompCertificate c;
    c.P = {A, B};
    c.structure = Structure::UpperTriangular;
    c.certified_order = N;
    PolyMatrix R = jet(A * M * B, N);
    int off = 0;
    for (int sz : sizes) {
      c.blocks.push_back(R.block(off, off, sz, sz));
      off += sz;
    }
    auto v = verify_certificate(M, c);
    if (v.ok) return c;
    why = v.message;
  }
  throw InconclusiveError("curve_triangularize: no certificate at order " + std::to_string(N) + " (" + why + ")");
}

}  // namespace detrep
