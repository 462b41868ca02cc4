// Matrices over the series ring: determinant, adjugate, fitting ideals, equivalences.
#pragma once

#include <string>
#include <vector>

#include "detrep/ideals.hpp"
#include "detrep/linalg.hpp"
#include "detrep/psring.hpp"

namespace detrep {

// Row-major grid of Poly.  Most operations want it square; blocks of a
// partition are allowed to be rectangular.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols, int nvars);
  static PolyMatrix identity(int d, int nvars);
  static PolyMatrix from_rows(std::vector<std::vector<Poly>> rows, int nvars);
  static PolyMatrix constant(const RatMat &m, int nvars);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nvars() const { return nvars_; }
  int dim() const;  // throws unless square
  bool is_square() const { return rows_ == cols_; }

  Poly &operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Poly &operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

  PolyMatrix transpose() const;
  RatMat constant_part() const;
  RatMat evaluate_at(const std::vector<Rat> &pt) const;
  bool is_zero() const;
  int ord() const;  // min entry ord
  PolyMatrix block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const PolyMatrix &b);

  PolyMatrix &operator+=(const PolyMatrix &o);
  PolyMatrix &operator-=(const PolyMatrix &o);
  PolyMatrix &operator*=(const Rat &c);
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix &b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix &b) { return a -= b; }
  friend PolyMatrix operator*(PolyMatrix a, const Rat &c) { return a *= c; }
  friend PolyMatrix operator*(const PolyMatrix &a, const PolyMatrix &b);
  friend bool operator==(const PolyMatrix &a, const PolyMatrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

 private:
  int rows_ = 0, cols_ = 0, nvars_ = 0;
  std::vector<Poly> e_;
};

PolyMatrix mul_trunc(const PolyMatrix &a, const PolyMatrix &b, int N);
PolyMatrix jet(const PolyMatrix &m, int N);
PolyMatrix scale(const PolyMatrix &m, const Poly &p);
PolyMatrix block_diag(const std::vector<PolyMatrix> &blocks, int nvars);
PolyMatrix submatrix(const PolyMatrix &m, const std::vector<int> &rows, const std::vector<int> &cols);
PolyMatrix linear_change(const PolyMatrix &m, const RatMat &T);
std::optional<PolyMatrix> exact_divide(const PolyMatrix &m, const Poly &q);

struct Adjugate {
  PolyMatrix matrix;
  Poly det;
};

struct EquivPair {
  PolyMatrix A, B;
};

struct MinimalReduction {
  EquivPair P;
  std::vector<Poly> pivots;  // unit diagonal of the split-off part
  PolyMatrix reduced;        // M', vanishes at the origin
  int corank = 0;
};

Poly determinant(const PolyMatrix &M);
// parallel over cofactors when built with OpenMP
Adjugate adjugate(const PolyMatrix &M);
Adjugate adjugate_serial(const PolyMatrix &M);
int corank_at_origin(const PolyMatrix &M);
int corank_at_point(const PolyMatrix &M, const std::vector<Rat> &pt);
MinimalReduction reduce_minimal(const PolyMatrix &M);
IdealGens fitting_ideal(const PolyMatrix &M, int k);
IdealGens fitting_ideal_serial(const PolyMatrix &M, int k);
bool invertible_at_origin(const PolyMatrix &A);
PolyMatrix apply_equiv(const PolyMatrix &M, const EquivPair &P);
PolyMatrix invert_jet(const PolyMatrix &A, int N);
EquivPair lift_equivalence_mod_det(const PolyMatrix &M1, const PolyMatrix &M2, const EquivPair &P, int N);

// "[ a , b ; c , d ]"
PolyMatrix parse_matrix(const std::string &text, const std::vector<std::string> &vars);
std::string to_string(const PolyMatrix &M, const std::vector<std::string> &vars);

}  // namespace detrep
