// Ideal membership: tracked Buchberger (global) and truncated linear algebra (local).
#pragma once

#include <string>
#include <vector>

#include "detrep/psring.hpp"

namespace detrep {

struct IdealGens {
  std::vector<Poly> gens;
  int nvars = 0;

  IdealGens() = default;
  IdealGens(int n, std::vector<Poly> g);
};

struct GroebnerBasis {
  std::vector<Poly> basis;  // reduced, monic, ascending by leading term
  std::string order = "grevlex";
};

struct MembershipCertificate {
  std::vector<Poly> multipliers;  // one per generator
  bool exact = true;
  int residual_order = kInf;  // valid up to this total degree when !exact
};

struct MembershipResult {
  bool member = false;
  MembershipCertificate cert;
};

struct UnitIdealError : AlgebraError {
  using AlgebraError::AlgebraError;
};

// grevlex leading term
const Term &leading_term(const Poly &p);

GroebnerBasis buchberger(const IdealGens &I);
// normal form of h modulo a Groebner basis
Poly normal_form(const Poly &h, const GroebnerBasis &G);
MembershipResult membership(const Poly &h, const IdealGens &I);
MembershipResult local_membership_mod(const Poly &h, const IdealGens &I, int D);
int min_generators_mod(const IdealGens &I, int D);
bool same_ideal(const IdealGens &a, const IdealGens &b);

// all monomials of total degree <= D in n variables, grlex ascending
std::vector<Monomial> monomials_upto(int n, int D);

}  // namespace detrep
