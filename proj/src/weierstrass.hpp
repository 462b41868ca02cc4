// Internal: the y-action on the cokernel of a y-regular matrix in (x, y), and
// power series in x stored as two-variable Poly with no y.
#pragma once

#include <cstdint>

#include "detrep/matring.hpp"

namespace detrep::detail {

// M * Z = y I - Y, Y depending on x only and exact to order N, Z to order NZ
// (default N).  Needs M(0) = 0 and dM/dy(0) invertible.
struct YAction {
  PolyMatrix Y;
  PolyMatrix Z;
};
YAction y_action(const PolyMatrix &M, int N, int NZ = -1);

// terms of degree < c
Poly xlow(const Poly &p, int c);
// p / x^c, every term must have x-degree >= c
Poly xdiv(const Poly &p, int c);
// a / b in k[[x]], ord a >= ord b; accurate to order N - ord b
Poly series_div(const Poly &a, const Poly &b, int N);

// Y <- g Y g^-1 with g = 1 + beta E_ij (i != j)
void conj_elementary(PolyMatrix &Y, int i, int j, const Poly &beta, int N);
// Y <- D Y D^-1 with D = diag(d)
void conj_diagonal(PolyMatrix &Y, const std::vector<Poly> &d, int N);


// a linear change x -> x + a y (a = 0 first, or seeded small random matrices)
// after which dM/dy(0) is invertible
RatMat y_regular_coordinates(const PolyMatrix &M, std::uint64_t seed, bool randomize);

}  // namespace detrep::detail
