#include "detrep/decompose.hpp"

#include "weierstrass.hpp"

namespace detrep {

using detail::xdiv;

PolyMatrix assemble(const DecompCertificate &c, int nvars) { return block_diag(c.blocks, nvars); }

VerifyResult verify_certificate(const PolyMatrix &M, const DecompCertificate &c) {
  const int d = M.dim();
  const int N = c.certified_order;
  auto fail = [](std::string m) { return VerifyResult{false, std::move(m)}; };
  if (c.P.A.rows() != d || c.P.A.cols() != d || c.P.B.rows() != d || c.P.B.cols() != d)
    return fail("transform size does not match the matrix");
  int tot = 0;
  for (const auto &b : c.blocks) {
    if (!b.is_square()) return fail("non-square block");
    tot += b.rows();
  }
  if (tot != d) return fail("block sizes add up to " + std::to_string(tot) + ", expected " + std::to_string(d));
  if (!invertible_at_origin(c.P.A)) return fail("A is not invertible at the origin");
  if (!invertible_at_origin(c.P.B)) return fail("B is not invertible at the origin");
  PolyMatrix R = jet(mul_trunc(mul_trunc(c.P.A, M, N), c.P.B, N), N);
  std::vector<int> own, start;
  for (std::size_t k = 0; k < c.blocks.size(); ++k) {
    start.push_back(static_cast<int>(own.size()));
    own.insert(own.end(), c.blocks[k].rows(), static_cast<int>(k));
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Poly want(M.nvars());
      bool free = false;
      if (own[i] == own[j]) {
        const auto &b = c.blocks[own[i]];
        want = jet(b(i - start[own[i]], j - start[own[j]]), N);
      } else if (own[i] < own[j] && c.structure == Structure::UpperTriangular) {
        free = true;
      }
      if (free) continue;
      if (!(R(i, j) == want))
        return fail("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") of A M B differs from the claimed pattern at order " +
                    std::to_string(N));
    }
  return {true, "ok"};
}

PolyMatrix mf_augment(const PolyMatrix &M, const HypersurfaceSpec &H) {
  validate_spec(H);
  check_determinant(M, H.product());
  const int d = M.dim();
  auto adj = adjugate(M);
  auto B = exact_divide(adj.matrix, H.excess());
  if (!B) throw ObstructionError("mf_augment: adjugate is not divisible by prod f_i^(p_i - 1)");
  PolyMatrix MB = M * *B;
  Poly f = H.reduced();
  auto u = exact_divide(MB(0, 0), f);
  if (!u || u->constant_term() == 0) throw SpecError("mf_augment: det(M) is the product times a unit that is not a polynomial");
  // a non-constant unit has no polynomial inverse, so it stays in M B
  if (u->is_constant()) {
    Rat s = 1 / u->constant_term();
    *B *= s;
    MB *= s;
    *u = Poly::constant(M.nvars(), 1);
  }
  if (!(MB == scale(PolyMatrix::identity(d, M.nvars()), f * *u)))
    throw AlgebraError("mf_augment: M B is not the product times the identity");
  return *B;
}

namespace {

PolyMatrix columns_matrix(const std::vector<RatVec> &cols, int d, int nvars) {
  RatMat m(d, RatVec(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < d; ++i) m[i][j] = cols[j][i];
  PolyMatrix P(d, static_cast<int>(cols.size()), nvars);
  for (int i = 0; i < d; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) P(i, static_cast<int>(j)) = Poly::constant(nvars, m[i][j]);
  return P;
}

PolyMatrix hcat(const PolyMatrix &a, const PolyMatrix &b) {
  PolyMatrix r(a.rows(), a.cols() + b.cols(), a.nvars());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

// Newton refinement of an approximate idempotent: e <- 3e^2 - 2e^3
PolyMatrix refine_idempotent(PolyMatrix e, int N) {
  for (int it = 0; it < 64; ++it) {
    PolyMatrix e2 = mul_trunc(e, e, N);
    if (jet(e2 - e, N).is_zero()) return e;
    PolyMatrix e3 = mul_trunc(e2, e, N);
    e = jet(e2 * Rat(3) - e3 * Rat(2), N);
  }
  throw InconclusiveError("idempotent refinement did not converge");
}

std::vector<RatVec> column_space(const RatMat &a) {
  const int d = static_cast<int>(a.size());
  std::vector<RatVec> out;
  RatMat acc;
  for (int j = 0; j < d; ++j) {
    RatVec col(d);
    for (int i = 0; i < d; ++i) col[i] = a[i][j];
    acc.push_back(col);
    if (rat_rank(acc) > static_cast<int>(out.size()))
      out.push_back(col);
    else
      acc.pop_back();
  }
  return out;
}

std::vector<RatVec> image_basis(const RatMat &P) {
  const int d = static_cast<int>(P.size());
  RatMat I = rat_identity(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) I[i][j] -= P[i][j];
  return rat_nullspace(I, d);
}

DecompCertificate split_minimal(const PolyMatrix &M, const Poly &f1, const Poly &f2, int N) {
  const int d = M.dim();
  const int n = M.nvars();
  auto sat = is_saturated(M, f1, f2, N);
  if (sat.status == SatStatus::NotSaturated) throw ObstructionError("not saturated: " + sat.detail);
  if (sat.status == SatStatus::Inconclusive) throw InconclusiveError("saturation inconclusive: " + sat.detail);
  PolyMatrix A1(d, d, n), A2(d, d, n);
  for (int q = 0; q < d * d; ++q) {
    const auto &c = sat.certs[q];
    if (c.multipliers.size() != 2 || !c.exact) throw InconclusiveError("decompose_saturated: inexact membership certificate");
    A2(q / d, q % d) = c.multipliers[0];
    A1(q / d, q % d) = c.multipliers[1];
  }
  auto P1 = exact_divide(M * A1, f1), P2 = exact_divide(M * A2, f2);
  auto O1 = exact_divide(A1 * M, f1), O2 = exact_divide(A2 * M, f2);
  if (!P1 || !P2 || !O1 || !O2) throw InconclusiveError("decompose_saturated: certificate inconsistency (projector division)");
  PolyMatrix S = *P1 + *P2;
  Poly u = S(0, 0);
  if (!(S == scale(PolyMatrix::identity(d, n), u)) || u.constant_term() == 0)
    throw InconclusiveError("decompose_saturated: projectors do not sum to a unit multiple of the identity");
  Poly ui = invert_unit_jet(u, N);
  PolyMatrix e = refine_idempotent(jet(scale(*P1, ui), N), N);
  PolyMatrix g = refine_idempotent(jet(scale(*O1, ui), N), N);
  RatMat e0 = e.constant_part(), g0 = g.constant_part();
  int d1 = rat_rank(e0);
  if (d1 == 0 || d1 == d) throw InconclusiveError("decompose_saturated: projector splitting degenerates");
  if (rat_rank(g0) != d1) throw InconclusiveError("decompose_saturated: left and right projectors have different ranks");
  RatMat ce = rat_identity(d), cg = rat_identity(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) ce[i][j] -= e0[i][j], cg[i][j] -= g0[i][j];
  PolyMatrix I = PolyMatrix::identity(d, n);
  PolyMatrix Phi = hcat(mul_trunc(e, columns_matrix(image_basis(e0), d, n), N),
                        mul_trunc(I - e, columns_matrix(image_basis(ce), d, n), N));
  PolyMatrix Psi = hcat(mul_trunc(g, columns_matrix(image_basis(g0), d, n), N),
                        mul_trunc(I - g, columns_matrix(image_basis(cg), d, n), N));
  DecompCertificate c;
  c.P = {invert_jet(Phi, N), jet(Psi, N)};
  c.structure = Structure::Diagonal;
  c.certified_order = N;
  PolyMatrix R = jet(mul_trunc(mul_trunc(c.P.A, M, N), c.P.B, N), N);
  c.blocks = {R.block(0, 0, d1, d1), R.block(d1, d1, d - d1, d - d1)};
  return c;
}

}  // namespace

DecompCertificate decompose_saturated(const PolyMatrix &M, const Poly &f1, const Poly &f2, int N) {
  const int d = M.dim();
  const int n = M.nvars();
  DecompCertificate c;
  if (corank_at_origin(M) == d) {
    c = split_minimal(M, f1, f2, N);
  } else {
    // unit part first; it joins whichever block keeps the pattern
    auto red = reduce_minimal(M);
    const int k = d - red.corank;
    if (red.corank == 0) throw SpecError("decompose_saturated: det(M) is a unit");
    // the split of M' is a split of M since the adjugates agree up to units
    DecompCertificate inner = split_minimal(red.reduced, f1, f2, N);
    PolyMatrix A = PolyMatrix::identity(d, n), B = PolyMatrix::identity(d, n);
    A.set_block(k, k, inner.P.A);
    B.set_block(k, k, inner.P.B);
    c.P = {jet(mul_trunc(A, red.P.A, N), N), jet(mul_trunc(red.P.B, B, N), N)};
    c.structure = Structure::Diagonal;
    c.certified_order = N;
    const int d1 = k + inner.blocks[0].rows();
    PolyMatrix R = jet(mul_trunc(mul_trunc(c.P.A, M, N), c.P.B, N), N);
    c.blocks = {R.block(0, 0, d1, d1), R.block(d1, d1, d - d1, d - d1)};
  }
  auto v = verify_certificate(M, c);
  if (!v.ok) throw InconclusiveError("decompose_saturated: " + v.message);
  return c;
}

namespace {

RatVec charpoly(const RatMat &W0) {
  const int d = static_cast<int>(W0.size());
  PolyMatrix S(d, d, 1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) S(i, j) = Poly::constant(1, -W0[i][j]) + (i == j ? Poly::var(1, 0) : Poly(1));
  Poly p = determinant(S);
  RatVec c(d + 1);
  for (const auto &t : p.terms()) c[t.first[0]] = t.second;
  return c;
}

RatMat rat_pow(const RatMat &a, int k) {
  RatMat r = rat_identity(static_cast<int>(a.size()));
  for (int i = 0; i < k; ++i) r = rat_mul(r, a);
  return r;
}

// coefficient matrix of x^k in a block
RatMat x_coeff(const PolyMatrix &W, int r0, int c0, int nr, int nc, int k) {
  RatMat o(nr, RatVec(nc));
  Monomial m({k, 0});
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) o[i][j] = W(r0 + i, c0 + j).coeff(m);
  return o;
}

DecompCertificate finish_y_certificate(const PolyMatrix &M, const RatMat &T, const PolyMatrix &Z, const PolyMatrix &G,
                                       const std::vector<int> &sizes, int Nw, int N) {
  RatMat Ti = *rat_inverse(T);
  DecompCertificate c;
  c.P = {jet(linear_change(invert_jet(G, Nw), Ti), N), jet(linear_change(mul_trunc(Z, G, Nw), Ti), N)};
  c.structure = Structure::Diagonal;
  c.certified_order = N;
  PolyMatrix R = jet(mul_trunc(mul_trunc(c.P.A, M, N), c.P.B, N), N);
  int off = 0;
  for (int s : sizes) {
    c.blocks.push_back(R.block(off, off, s, s));
    off += s;
  }
  return c;
}

}  // namespace

DecompCertificate tangential_decompose(const PolyMatrix &M, int N, std::uint64_t seed) {
  if (M.nvars() != 2) throw InconclusiveError("tangential_decompose needs two variables");
  const int d = M.dim();
  if (corank_at_origin(M) != d) throw InconclusiveError("tangential_decompose: M(0) != 0, reduce to the minimal form first");
  RatMat T;
  try {
    T = detail::y_regular_coordinates(M, seed, true);
  } catch (const AlgebraError &) {
    throw InconclusiveError("tangential_decompose: det(jet_1 M) vanishes identically (not maximally generated)");
  }
  PolyMatrix Mt = linear_change(M, T);
  std::string why;
  for (int attempt = 0; attempt < 3; ++attempt) {
    const int Nw = N + 4 + attempt * (N + 4);
    auto ya = detail::y_action(Mt, Nw, N);
    PolyMatrix W(d, d, 2);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) W(i, j) = xdiv(jet(ya.Y(i, j), Nw), 1);
    const int Ww = Nw - 1;
    RatMat W0 = W.constant_part();
    auto roots = rational_roots(charpoly(W0));
    int tot = 0;
    for (const auto &r : roots) tot += r.second;
    if (tot != d) throw InconclusiveError("tangential_decompose: tangent cone has irrational directions");
    std::vector<RatVec> basis;
    std::vector<int> sizes;
    for (const auto &[s, mu] : roots) {
      RatMat A = W0;
      for (int i = 0; i < d; ++i) A[i][i] -= s;
      auto ns = rat_nullspace(rat_pow(A, mu), d);
      if (static_cast<int>(ns.size()) != mu) throw InconclusiveError("tangential_decompose: generalized eigenspace of wrong size");
      basis.insert(basis.end(), ns.begin(), ns.end());
      sizes.push_back(mu);
    }
    if (sizes.size() == 1) {
      DecompCertificate c;
      c.P = {PolyMatrix::identity(d, 2), PolyMatrix::identity(d, 2)};
      c.blocks = {M};
      c.certified_order = N;
      return c;
    }
    PolyMatrix G = columns_matrix(basis, d, 2);
    W = mul_trunc(mul_trunc(invert_jet(G, Ww), W, Ww), G, Ww);
    std::vector<int> off{0};
    for (int s : sizes) off.push_back(off.back() + s);
    const int nb = static_cast<int>(sizes.size());
    RatMat D0 = W.constant_part();
    for (int k = 1; k < Ww; ++k)
      for (int a = 0; a < nb; ++a)
        for (int b = 0; b < nb; ++b) {
          if (a == b) continue;
          const int ma = sizes[a], mb = sizes[b];
          RatMat O = x_coeff(W, off[a], off[b], ma, mb, k);
          bool zero = true;
          for (const auto &row : O)
            for (const auto &v : row) zero = zero && v == 0;
          if (zero) continue;
          // D_a X - X D_b = O
          RatMat L(ma * mb, RatVec(ma * mb));
          RatVec rhs(ma * mb);
          for (int i = 0; i < ma; ++i)
            for (int j = 0; j < mb; ++j) {
              int eq = i * mb + j;
              rhs[eq] = O[i][j];
              for (int l = 0; l < ma; ++l) L[eq][l * mb + j] += D0[off[a] + i][off[a] + l];
              for (int l = 0; l < mb; ++l) L[eq][i * mb + l] -= D0[off[b] + l][off[b] + j];
            }
          auto X = rat_solve(L, rhs, ma * mb);
          if (!X) throw InconclusiveError("tangential_decompose: repeated tangent direction across blocks");
          PolyMatrix g = PolyMatrix::identity(d, 2), gi = PolyMatrix::identity(d, 2);
          Poly xk = pow(Poly::var(2, 0), k);
          for (int i = 0; i < ma; ++i)
            for (int j = 0; j < mb; ++j) {
              Poly e = Poly::constant(2, (*X)[i * mb + j]) * xk;
              g(off[a] + i, off[b] + j) = e;
              gi(off[a] + i, off[b] + j) = -e;
            }
          W = mul_trunc(mul_trunc(g, W, Ww), gi, Ww);
          G = mul_trunc(G, gi, Ww);
        }
    auto c = finish_y_certificate(M, T, ya.Z, G, sizes, Nw, N);
    auto v = verify_certificate(M, c);
    if (v.ok) return c;
    why = v.message;
  }
  throw InconclusiveError("tangential_decompose: no certificate at order " + std::to_string(N) + " (" + why + ")");
}

DecompCertificate multiple_curve_decompose(const PolyMatrix &M, const Poly &f, const BranchParam &param, int r, int N) {
  if (M.nvars() != 2) throw InconclusiveError("multiple_curve_decompose needs two variables");
  const int d = M.dim();
  if (r < 1) throw SpecError("multiple_curve_decompose: r must be positive");
  if (!vanishes_on(f, param, default_t_precision(param)))
    throw SpecError("multiple_curve_decompose: parametrization does not lie on f");
  check_determinant(M, pow(f, r));
  if (r == 1) {
    DecompCertificate c;
    c.P = {PolyMatrix::identity(d, 2), PolyMatrix::identity(d, 2)};
    c.blocks = {M};
    c.certified_order = N;
    return c;
  }
  auto adj = adjugate(M);
  if (!exact_divide(adj.matrix, pow(f, r - 1)))
    throw ObstructionError("multiple_curve_decompose: adjugate is not divisible by f^" + std::to_string(r - 1));
  if (d % r != 0) throw SpecError("multiple_curve_decompose: size is not a multiple of r");
  const int p = d / r;
  if (corank_at_origin(M) != d) throw InconclusiveError("multiple_curve_decompose: M(0) != 0, reduce to the minimal form first");
  RatMat T;
  try {
    T = detail::y_regular_coordinates(M, 0, false);
  } catch (const AlgebraError &) {
    throw InconclusiveError("multiple_curve_decompose: not maximally generated at the origin");
  }
  PolyMatrix Mt = linear_change(M, T);
  std::vector<int> sizes(r, p);
  std::string why;
  for (int attempt = 0; attempt < 3; ++attempt) {
    const int Nw = 2 * N + 8 + attempt * (N + 4);
    auto ya = detail::y_action(Mt, Nw, N);
    // Y = s(x) I + x^k W; a basis splitting W splits Y
    PolyMatrix W = jet(ya.Y, Nw);
    int prec = Nw;
    PolyMatrix G = PolyMatrix::identity(d, 2);
    bool found = false;
    while (prec > N / 2 + 1 && !found) {
      RatMat W0 = W.constant_part();
      Rat c0 = 0;
      for (int i = 0; i < d; ++i) c0 += W0[i][i];
      c0 /= d;
      RatMat n0 = W0;
      for (int i = 0; i < d; ++i) n0[i][i] -= c0;
      if (rat_rank(n0) == 0) {
        PolyMatrix Wn(d, d, 2);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            Wn(i, j) = xdiv(W(i, j) - (i == j ? Poly::constant(2, c0) : Poly(2)), 1);
        W = jet(Wn, prec - 1);
        --prec;
        if (jet(W, prec).is_zero()) found = true;  // scalar to working precision
        continue;
      }
      if (rat_rank(rat_pow(n0, d)) != 0)
        throw InconclusiveError("multiple_curve_decompose: the curve has more than one tangent direction");
      if (rat_rank(n0) != d - r)
        throw InconclusiveError("multiple_curve_decompose: cokernel is not free over the blown-up ring");
      // complement of im n0, then cyclic bases v, Wv, ..., W^{p-1} v
      auto ib = column_space(n0);
      RatMat cb = complete_basis(ib, d);
      std::vector<std::vector<Poly>> cols;
      for (int k = static_cast<int>(ib.size()); k < d; ++k) {
        std::vector<Poly> v(d, Poly(2));
        for (int i = 0; i < d; ++i) v[i] = Poly::constant(2, cb[i][k]);
        for (int s = 0; s < p; ++s) {
          cols.push_back(v);
          std::vector<Poly> w(d, Poly(2));
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) w[i] += mul_trunc(W(i, j), v[j], prec);
          v = w;
        }
      }
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) G(i, j) = cols[j][i];
      if (!invertible_at_origin(G))
        throw InconclusiveError("multiple_curve_decompose: cokernel is not free over the blown-up ring");
      found = true;
    }
    if (!found) {
      why = "blow-up sequence did not terminate within the working precision";
      continue;
    }
    auto c = finish_y_certificate(M, T, ya.Z, G, sizes, Nw, N);
    auto v = verify_certificate(M, c);
    if (v.ok) return c;
    why = v.message;
  }
  throw InconclusiveError("multiple_curve_decompose: no certificate at order " + std::to_string(N) + " (" + why + ")");
}

FibreLimit kernel_fibre_limit(const PolyMatrix &M, const BranchParam &param, int N) {
  const int d = M.dim();
  const int T = std::max(N, default_t_precision(param));
  auto adj = adjugate(M);
  FibreLimit out;
  int best = kInf, bc = -1;
  std::vector<std::vector<Poly>> pulled(d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      pulled[j].push_back(substitute_curve(adj.matrix(i, j), param.comps, T));
      int o = pulled[j].back().ord();
      if (o < best) best = o, bc = j;
    }
  }
  if (bc < 0) {
    out.flag = "all adjugate columns vanish on the branch to order " + std::to_string(T);
    return out;
  }
  out.defined = true;
  out.direction.assign(d, 0);
  for (int i = 0; i < d; ++i) out.direction[i] = pulled[bc][i].coeff(Monomial({best}));
  Rat lead = 0;
  for (const auto &v : out.direction)
    if (v != 0) {
      lead = v;
      break;
    }
  for (auto &v : out.direction) v /= lead;
  return out;
}

FibreTest fibre_independence_test(const PolyMatrix &M, const std::vector<BranchParam> &params, int N) {
  const int d = M.dim();
  FibreTest out;
  Poly det = determinant(M);
  int mult = multiplicity(det);
  TangentCone tc = tangent_cone(det);
  // squarefree check of the binary form F via gcd-free discriminant test
  Poly F = tc.form;
  int xm = ord_var(F, 0) == kInf ? 0 : ord_var(F, 0);
  bool squarefree = xm <= 1;
  if (squarefree) {
    Poly Fy = substitute(F, {Poly::constant(2, 1), Poly::var(2, 1)});
    RatVec c(deg_var(Fy, 1) + 1);
    for (const auto &t : Fy.terms()) c[t.first[1]] = t.second;
    // resultant of c and c' vanishes iff repeated roots
    const int n = static_cast<int>(c.size()) - 1;
    if (n >= 2) {
      RatVec dc(n);
      for (int i = 1; i <= n; ++i) dc[i - 1] = c[i] * i;
      const int sz = 2 * n - 1;
      RatMat S(sz, RatVec(sz));
      for (int i = 0; i < n - 1; ++i)
        for (int k = 0; k <= n; ++k) S[i][i + k] = c[n - k];
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) S[n - 1 + i][i + k] = dc[n - 1 - k];
      squarefree = rat_det(S) != 0;
    }
  }
  if (squarefree && mult > d) {
    out.flag = "det has " + std::to_string(mult) + " smooth branches, more than d = " + std::to_string(d);
    return out;
  }
  if (squarefree && !params.empty() && static_cast<int>(params.size()) != mult) {
    out.flag = "expected " + std::to_string(mult) + " branches, got " + std::to_string(params.size());
    return out;
  }
  for (const auto &b : params) {
    int o = kInf;
    for (const auto &c : b.comps) o = std::min(o, c.ord());
    if (o != 1) {
      out.flag = "branch " + b.label + " is not smooth; the test only applies to smooth branches";
      return out;
    }
  }
  if (params.empty()) {
    out.flag = "no branch parametrizations";
    return out;
  }
  if (static_cast<int>(params.size()) > d) {
    out.flag = "more branches than d";
    return out;
  }
  RatMat dirs;
  for (const auto &b : params) {
    if (!vanishes_on(det, b, default_t_precision(b))) {
      out.flag = "branch " + b.label + " does not lie on det = 0";
      return out;
    }
    auto lim = kernel_fibre_limit(M, b, N);
    if (!lim.defined) {
      out.flag = "branch " + b.label + ": " + lim.flag;
      return out;
    }
    dirs.push_back(lim.direction);
  }
  if (rat_rank(dirs) != static_cast<int>(dirs.size())) {
    out.flag = "fibre limits are linearly dependent";
    return out;
  }
  out.independent = true;
  return out;
}

}  // namespace detrep
