// Branch parametrizations, valuations, A_n adjoint ideals and one-tangent normal forms.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "detrep/ideals.hpp"
#include "detrep/matring.hpp"

namespace detrep {

struct BranchParam {
  std::vector<Poly> comps;  // univariate in t, one per ambient variable
  std::string label;
};

int max_exponent(const BranchParam &b);
// default t-precision: 4 * max exponent
int default_t_precision(const BranchParam &b);
// t-order of g(param), kInf when the pullback vanishes to precision T
int valuation(const Poly &g, const BranchParam &b, int T);
// exact: the precision covers the whole pullback
int valuation(const Poly &g, const BranchParam &b);
// exact as well; T only raises the precision
bool vanishes_on(const Poly &g, const BranchParam &b, int T);

struct ValuationPair {
  int f_order = 0;
  int residual = 0;
  friend bool operator<(const ValuationPair &a, const ValuationPair &b) {
    if (a.f_order != b.f_order) return a.f_order < b.f_order;
    return a.residual < b.residual;
  }
  friend bool operator==(const ValuationPair &a, const ValuationPair &b) {
    return a.f_order == b.f_order && a.residual == b.residual;
  }
};

ValuationPair pair_valuation(const Poly &g, const Poly &f, const BranchParam &b);

enum class Parity { Even, Odd };

struct ConductorAdjoint {
  std::string conductor;  // text description in t (or t1, t2)
  IdealGens adjoint;      // in x, y
};

ConductorAdjoint an_conductor_adjoint(int l, int l_prime, Parity parity);

// "branch b1: x = t^2, y = t^5"
BranchParam parse_branch(const std::string &line, const std::vector<std::string> &vars);
std::string to_string(const BranchParam &b, const std::vector<std::string> &vars);

// Upper-triangular normal forms for curves with a single tangent line y = 0.
//
// chain: diagonal y - lam_i(x) with distinct lam_i, superdiagonal
// beta_i x^{n_i}, entries h_ij(x) for j >= i + 2.
// cusp: the y (y^2 - x^{2l+1}) family [[y, p1, p2], [0, y, x^{2l+1-m}], [0, x^m, y]].
enum class NormalFamily { Chain, Cusp };

struct NormalFormSpec {
  NormalFamily family = NormalFamily::Chain;
  std::vector<Poly> diag;  // chain: branch equations in order; univariate data uses vars (x, y)
  std::vector<int> beta;   // chain superdiagonal flags
  std::vector<int> n;      // chain superdiagonal exponents
  std::map<std::pair<int, int>, Poly> h;
  int l = 0, m = 0;        // cusp
  Poly p1, p2;             // cusp, polynomials in x

  friend bool operator==(const NormalFormSpec &a, const NormalFormSpec &b);
};

// contact order of two chain branches: ord(lam_i - lam_j)
int contact_order(const Poly &fi, const Poly &fj);
void check_normal_form(const NormalFormSpec &s);
PolyMatrix normal_form_build(const NormalFormSpec &s);
// M upper triangular with the spec's diagonal (up to units); returns the canonical spec
NormalFormSpec normal_form_reduce(const PolyMatrix &M, const NormalFormSpec &context, int N);
std::string to_string(const NormalFormSpec &s);

}  // namespace detrep
