// Exact linear algebra over Q: dense helpers plus an incremental sparse echelon form.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "detrep/psring.hpp"

namespace detrep {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

RatMat rat_identity(int n);
RatMat rat_mul(const RatMat &a, const RatMat &b);
RatMat rat_transpose(const RatMat &a);
int rat_rank(RatMat a);
Rat rat_det(RatMat a);
std::optional<RatMat> rat_inverse(const RatMat &a);
// basis of {v : a v = 0}, one vector per free column, in RREF column order
std::vector<RatVec> rat_nullspace(const RatMat &a, int ncols);
// some x with a x = b
std::optional<RatVec> rat_solve(const RatMat &a, const RatVec &b, int ncols);
// extend the given independent columns to a basis of Q^n (appends standard vectors)
RatMat complete_basis(const std::vector<RatVec> &cols, int n);

// distinct rational roots with multiplicity of sum c[i] t^i
std::vector<std::pair<Rat, int>> rational_roots(const RatVec &c);

using SparseRow = std::vector<std::pair<int, Rat>>;  // sorted by column, no zeros

// Rows are added one at a time and reduced against earlier pivots.  Each stored
// row is free of the pivot columns of the rows stored before it, so back
// substitution in reverse insertion order solves the system.
class SparseEchelon {
 public:
  // reduce and store; returns false when the row was dependent
  bool add(SparseRow r);
  SparseRow reduce(SparseRow r) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<SparseRow> &rows() const { return rows_; }
  const std::vector<int> &pivots() const { return piv_; }

 private:
  std::vector<SparseRow> rows_;
  std::vector<int> piv_;
};

// solve sum_j A[i][j] x_j = b_i given sparse equations.  Column nunk holds the
// right-hand side.  Free unknowns are set to zero.
std::optional<RatVec> sparse_solve(const std::vector<SparseRow> &eqs, int nunk);

}  // namespace detrep
