#include "detrep/matring.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace detrep {

PolyMatrix::PolyMatrix(int rows, int cols, int nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), e_(static_cast<std::size_t>(rows) * cols, Poly(nvars)) {
  if (rows < 0 || cols < 0) throw AlgebraError("negative matrix size");
}

PolyMatrix PolyMatrix::identity(int d, int nvars) {
  PolyMatrix m(d, d, nvars);
  for (int i = 0; i < d; ++i) m(i, i) = Poly::constant(nvars, 1);
  return m;
}

PolyMatrix PolyMatrix::from_rows(std::vector<std::vector<Poly>> rows, int nvars) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  PolyMatrix m(r, c, nvars);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw AlgebraError("ragged matrix rows");
    for (int j = 0; j < c; ++j) {
      if (rows[i][j].nvars() != nvars) throw AlgebraError("matrix entry has wrong variable count");
      m(i, j) = std::move(rows[i][j]);
    }
  }
  return m;
}

PolyMatrix PolyMatrix::constant(const RatMat &a, int nvars) {
  const int r = static_cast<int>(a.size());
  const int c = r ? static_cast<int>(a[0].size()) : 0;
  PolyMatrix m(r, c, nvars);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = Poly::constant(nvars, a[i][j]);
  return m;
}

int PolyMatrix::dim() const {
  if (rows_ != cols_) throw AlgebraError("matrix is not square");
  return rows_;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_, nvars_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMat PolyMatrix::constant_part() const {
  RatMat a(rows_, RatVec(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) a[i][j] = (*this)(i, j).constant_term();
  return a;
}

RatMat PolyMatrix::evaluate_at(const std::vector<Rat> &pt) const {
  RatMat a(rows_, RatVec(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) a[i][j] = evaluate((*this)(i, j), pt);
  return a;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Poly &p) { return p.is_zero(); });
}

int PolyMatrix::ord() const {
  int o = kInf;
  for (const auto &p : e_) o = std::min(o, p.ord());
  return o;
}

PolyMatrix PolyMatrix::block(int r0, int c0, int nr, int nc) const {
  PolyMatrix b(nr, nc, nvars_);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void PolyMatrix::set_block(int r0, int c0, const PolyMatrix &b) {
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

PolyMatrix &PolyMatrix::operator+=(const PolyMatrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw AlgebraError("matrix size mismatch");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
  return *this;
}

PolyMatrix &PolyMatrix::operator-=(const PolyMatrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw AlgebraError("matrix size mismatch");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
  return *this;
}

PolyMatrix &PolyMatrix::operator*=(const Rat &c) {
  for (auto &p : e_) p *= c;
  return *this;
}

PolyMatrix mul_trunc(const PolyMatrix &a, const PolyMatrix &b, int N) {
  if (a.cols() != b.rows()) throw AlgebraError("matrix size mismatch in product");
  PolyMatrix r(a.rows(), b.cols(), a.nvars());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) r(i, j) += mul_trunc(a(i, k), b(k, j), N);
    }
  return r;
}

PolyMatrix operator*(const PolyMatrix &a, const PolyMatrix &b) { return mul_trunc(a, b, kInf); }

PolyMatrix jet(const PolyMatrix &m, int N) {
  PolyMatrix r = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = jet(m(i, j), N);
  return r;
}

PolyMatrix scale(const PolyMatrix &m, const Poly &p) {
  PolyMatrix r = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j) * p;
  return r;
}

PolyMatrix block_diag(const std::vector<PolyMatrix> &blocks, int nvars) {
  int r = 0, c = 0;
  for (const auto &b : blocks) r += b.rows(), c += b.cols();
  PolyMatrix m(r, c, nvars);
  int i = 0, j = 0;
  for (const auto &b : blocks) {
    m.set_block(i, j, b);
    i += b.rows();
    j += b.cols();
  }
  return m;
}

PolyMatrix submatrix(const PolyMatrix &m, const std::vector<int> &rows, const std::vector<int> &cols) {
  PolyMatrix s(static_cast<int>(rows.size()), static_cast<int>(cols.size()), m.nvars());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = m(rows[i], cols[j]);
  return s;
}

PolyMatrix linear_change(const PolyMatrix &m, const RatMat &T) {
  PolyMatrix r = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = linear_change(m(i, j), T);
  return r;
}

std::optional<PolyMatrix> exact_divide(const PolyMatrix &m, const Poly &q) {
  PolyMatrix r = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      auto d = exact_divide(m(i, j), q);
      if (!d) return std::nullopt;
      r(i, j) = std::move(*d);
    }
  return r;
}

namespace {

Poly laplace(const PolyMatrix &M) {
  const int d = M.rows();
  const int n = M.nvars();
  if (d == 0) return Poly::constant(n, 1);
  if (d == 1) return M(0, 0);
  if (d == 2) return M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  Poly s(n);
  std::vector<int> rows;
  for (int i = 1; i < d; ++i) rows.push_back(i);
  for (int j = 0; j < d; ++j) {
    if (M(0, j).is_zero()) continue;
    std::vector<int> cols;
    for (int c = 0; c < d; ++c)
      if (c != j) cols.push_back(c);
    Poly t = M(0, j) * laplace(submatrix(M, rows, cols));
    if (j % 2)
      s -= t;
    else
      s += t;
  }
  return s;
}

Poly bareiss(PolyMatrix a) {
  const int d = a.rows();
  const int n = a.nvars();
  Poly prev = Poly::constant(n, 1);
  bool neg = false;
  for (int k = 0; k < d - 1; ++k) {
    if (a(k, k).is_zero()) {
      int p = k + 1;
      while (p < d && a(p, k).is_zero()) ++p;
      if (p == d) return Poly(n);
      for (int j = 0; j < d; ++j) std::swap(a(k, j), a(p, j));
      neg = !neg;
    }
    for (int i = k + 1; i < d; ++i)
      for (int j = k + 1; j < d; ++j) {
        Poly num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        auto q = exact_divide(num, prev);
        if (!q) throw AlgebraError("bareiss: inexact division (internal error)");
        a(i, j) = std::move(*q);
      }
    prev = a(k, k);
  }
  Poly det = a(d - 1, d - 1);
  return neg ? -det : det;
}

Poly cofactor(const PolyMatrix &M, int i, int j) {
  const int d = M.rows();
  std::vector<int> rows, cols;
  for (int r = 0; r < d; ++r)
    if (r != j) rows.push_back(r);
  for (int c = 0; c < d; ++c)
    if (c != i) cols.push_back(c);
  Poly m = determinant(submatrix(M, rows, cols));
  return (i + j) % 2 ? -m : m;
}

void verify_adjugate(const PolyMatrix &M, const Adjugate &a) {
  PolyMatrix lhs = M * a.matrix;
  PolyMatrix rhs = scale(PolyMatrix::identity(M.rows(), M.nvars()), a.det);
  if (!(lhs == rhs)) throw AlgebraError("adjugate: M*adj != det*I (internal error)");
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int s) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = s; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

Poly determinant(const PolyMatrix &M) {
  const int d = M.dim();
  if (d <= 4) return laplace(M);
  return bareiss(M);
}

Adjugate adjugate_serial(const PolyMatrix &M) {
  const int d = M.dim();
  Adjugate a;
  a.det = determinant(M);
  a.matrix = PolyMatrix(d, d, M.nvars());
  if (d == 1) {
    a.matrix(0, 0) = Poly::constant(M.nvars(), 1);
  } else {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a.matrix(i, j) = cofactor(M, i, j);
  }
  verify_adjugate(M, a);
  return a;
}

Adjugate adjugate(const PolyMatrix &M) {
  const int d = M.dim();
  Adjugate a;
  a.det = determinant(M);
  a.matrix = PolyMatrix(d, d, M.nvars());
  if (d == 1) {
    a.matrix(0, 0) = Poly::constant(M.nvars(), 1);
  } else {
    std::vector<Poly> cof(static_cast<std::size_t>(d) * d);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < d * d; ++k) cof[k] = cofactor(M, k / d, k % d);
    for (int k = 0; k < d * d; ++k) a.matrix(k / d, k % d) = std::move(cof[k]);
  }
  verify_adjugate(M, a);
  return a;
}

int corank_at_origin(const PolyMatrix &M) { return M.dim() - rat_rank(M.constant_part()); }

int corank_at_point(const PolyMatrix &M, const std::vector<Rat> &pt) {
  return M.dim() - rat_rank(M.evaluate_at(pt));
}

MinimalReduction reduce_minimal(const PolyMatrix &M) {
  const int d = M.dim();
  const int n = M.nvars();
  PolyMatrix W = M;
  PolyMatrix A = PolyMatrix::identity(d, n), B = PolyMatrix::identity(d, n);
  std::vector<Poly> pivots;
  auto swap_rows = [&](PolyMatrix &X, int a, int b) {
    for (int j = 0; j < X.cols(); ++j) std::swap(X(a, j), X(b, j));
  };
  auto swap_cols = [&](PolyMatrix &X, int a, int b) {
    for (int i = 0; i < X.rows(); ++i) std::swap(X(i, a), X(i, b));
  };
  for (int k = 0; k < d; ++k) {
    int pi = -1, pj = -1;
    for (int i = k; i < d && pi < 0; ++i)
      for (int j = k; j < d; ++j)
        if (W(i, j).constant_term() != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    if (pi != k) {
      swap_rows(W, pi, k);
      swap_rows(A, pi, k);
    }
    if (pj != k) {
      swap_cols(W, pj, k);
      swap_cols(B, pj, k);
    }
    Poly u = W(k, k);
    if (u.is_constant()) {
      Rat inv = 1 / u.constant_term();
      for (int j = 0; j < d; ++j) {
        W(k, j) *= inv;
        A(k, j) *= inv;
      }
      for (int i = k + 1; i < d; ++i) {
        Poly f = W(i, k);
        if (f.is_zero()) continue;
        for (int j = 0; j < d; ++j) {
          W(i, j) -= f * W(k, j);
          A(i, j) -= f * A(k, j);
        }
      }
      for (int j = k + 1; j < d; ++j) {
        Poly f = W(k, j);
        if (f.is_zero()) continue;
        for (int i = 0; i < d; ++i) {
          W(i, j) -= f * W(i, k);
          B(i, j) -= f * B(i, k);
        }
      }
      pivots.push_back(Poly::constant(n, 1));
    } else {
      // unit but not constant: fraction-free steps, row_i <- u*row_i - f*row_k
      for (int i = k + 1; i < d; ++i) {
        Poly f = W(i, k);
        if (f.is_zero()) continue;
        for (int j = 0; j < d; ++j) {
          W(i, j) = u * W(i, j) - f * W(k, j);
          A(i, j) = u * A(i, j) - f * A(k, j);
        }
      }
      for (int j = k + 1; j < d; ++j) {
        Poly f = W(k, j);
        if (f.is_zero()) continue;
        for (int i = 0; i < d; ++i) {
          W(i, j) = u * W(i, j) - f * W(i, k);
          B(i, j) = u * B(i, j) - f * B(i, k);
        }
      }
      pivots.push_back(u);
    }
  }
  MinimalReduction r;
  const int k = static_cast<int>(pivots.size());
  r.P = {A, B};
  r.pivots = pivots;
  r.corank = d - k;
  r.reduced = W.block(k, k, d - k, d - k);
  return r;
}

IdealGens fitting_ideal_serial(const PolyMatrix &M, int k) {
  const int d = M.dim();
  if (k < 1 || k > d) throw AlgebraError("fitting_ideal: k out of range");
  auto S = subsets(d, k);
  std::vector<Poly> g;
  for (const auto &r : S)
    for (const auto &c : S) g.push_back(determinant(submatrix(M, r, c)));
  return IdealGens(M.nvars(), std::move(g));
}

IdealGens fitting_ideal(const PolyMatrix &M, int k) {
  const int d = M.dim();
  if (k < 1 || k > d) throw AlgebraError("fitting_ideal: k out of range");
  auto S = subsets(d, k);
  const int s = static_cast<int>(S.size());
  std::vector<Poly> g(static_cast<std::size_t>(s) * s);
#pragma omp parallel for schedule(dynamic)
  for (int q = 0; q < s * s; ++q) g[q] = determinant(submatrix(M, S[q / s], S[q % s]));
  return IdealGens(M.nvars(), std::move(g));
}

bool invertible_at_origin(const PolyMatrix &A) { return A.is_square() && rat_det(A.constant_part()) != 0; }

PolyMatrix apply_equiv(const PolyMatrix &M, const EquivPair &P) {
  if (!invertible_at_origin(P.A) || !invertible_at_origin(P.B))
    throw AlgebraError("apply_equiv: transform not invertible at the origin");
  return P.A * M * P.B;
}

PolyMatrix invert_jet(const PolyMatrix &A, int N) {
  const int d = A.dim();
  const int n = A.nvars();
  auto inv0 = rat_inverse(A.constant_part());
  if (!inv0) throw AlgebraError("invert_jet: matrix not invertible at the origin");
  PolyMatrix R0 = PolyMatrix::constant(*inv0, n);
  // A = A0 (I + K), K = A0^{-1}(A - A0)
  // Newton: X <- X (2 - A X) doubles the precision
  PolyMatrix Aj = jet(A, N), X = R0, two = PolyMatrix::identity(d, n) * Rat(2);
  for (int prec = 1; prec <= N; prec *= 2) {
    const int p = std::min(N, 2 * prec + 1);
    X = mul_trunc(X, two - mul_trunc(Aj, X, p), p);
  }
  return jet(X, N);
}

EquivPair lift_equivalence_mod_det(const PolyMatrix &M1, const PolyMatrix &M2, const EquivPair &P, int N) {
  const int d = M1.dim();
  const int n = M1.nvars();
  PolyMatrix diff = M1 - P.A * M2 * P.B;
  if (diff.is_zero()) return P;
  Adjugate a1 = adjugate(M1);
  if (a1.det.is_zero()) throw AlgebraError("lift_equivalence_mod_det: det(M1) = 0");
  auto Q = exact_divide(diff, a1.det);
  if (!Q) {
    // det(M1) may divide only up to a unit: solve for jets of the quotients
    const int D = N + a1.det.ord();
    IdealGens g(n, {a1.det});
    PolyMatrix q(d, d, n);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        auto r = local_membership_mod(diff(i, j), g, D);
        if (!r.member)
          throw AlgebraError("lift_equivalence_mod_det: M1 and A*M2*B are not congruent modulo det(M1)");
        q(i, j) = r.cert.multipliers[0];
      }
    Q = q;
  }
  PolyMatrix T = PolyMatrix::identity(d, n) - a1.matrix * *Q;
  if (!invertible_at_origin(T))
    throw AlgebraError("lift_equivalence_mod_det: correction factor not invertible at the origin");
  EquivPair out{P.A, mul_trunc(P.B, invert_jet(T, N), N)};
  PolyMatrix chk = jet(P.A * M2 * out.B - M1, N);
  if (!chk.is_zero()) throw AlgebraError("lift_equivalence_mod_det: lifted pair fails at order N (internal error)");
  return out;
}

PolyMatrix parse_matrix(const std::string &text, const std::vector<std::string> &vars) {
  std::string s = text;
  auto a = s.find('['), b = s.rfind(']');
  if (a == std::string::npos || b == std::string::npos || b < a)
    throw AlgebraError("matrix text must be enclosed in [ ]");
  for (std::size_t i = 0; i < a; ++i)
    if (!std::isspace(static_cast<unsigned char>(s[i]))) throw AlgebraError("junk before matrix");
  for (std::size_t i = b + 1; i < s.size(); ++i)
    if (!std::isspace(static_cast<unsigned char>(s[i]))) throw AlgebraError("junk after matrix");
  std::string body = s.substr(a + 1, b - a - 1);
  std::vector<std::vector<Poly>> rows;
  std::stringstream rs(body);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<Poly> r;
    std::stringstream es(row);
    std::string ent;
    while (std::getline(es, ent, ',')) r.push_back(parse_poly(ent, vars));
    if (r.empty()) throw AlgebraError("empty matrix row");
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw AlgebraError("empty matrix");
  return PolyMatrix::from_rows(std::move(rows), static_cast<int>(vars.size()));
}

std::string to_string(const PolyMatrix &M, const std::vector<std::string> &vars) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < M.rows(); ++i) {
    if (i) os << ";";
    for (int j = 0; j < M.cols(); ++j) os << (j ? ", " : " ") << to_string(M(i, j), vars);
  }
  os << " ]";
  return os.str();
}

}  // namespace detrep
