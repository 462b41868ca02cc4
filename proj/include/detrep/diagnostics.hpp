// Decision predicates: multiplicity, tangent cone, maximal generation, saturation,
// extension counts and the fitting-ideal obstruction.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "detrep/curves.hpp"
#include "detrep/ideals.hpp"
#include "detrep/matring.hpp"

namespace detrep {

struct SpecError : AlgebraError {
  using AlgebraError::AlgebraError;
};

struct HypersurfaceSpec {
  std::vector<std::pair<Poly, int>> factors;
  int nvars = 0;

  Poly product() const;        // prod f_i^{p_i}
  Poly reduced() const;        // prod f_i
  Poly excess() const;         // prod f_i^{p_i - 1}
};

// f_i(0) = 0, p_i >= 1, pairwise coprime
void validate_spec(const HypersurfaceSpec &H);
// det = u * f with u a polynomial unit; returns u
std::optional<Poly> unit_ratio(const Poly &det, const Poly &f);
// det(M) = f up to unit or SpecError
void check_determinant(const PolyMatrix &M, const Poly &f);
// g and h generate the same ideal in the local ring to order D
bool associated_mod(const Poly &g, const Poly &h, int D);

int multiplicity(const Poly &f);

struct TangentCone {
  Poly form;
  int mult = 0;
  bool factored = false;
  std::vector<std::pair<Poly, int>> linear_factors;
  std::string note;
};

TangentCone tangent_cone(const Poly &f);

bool is_max_generated_at_origin(const PolyMatrix &M, const Poly &f);
bool is_max_generated_smooth_locus(const PolyMatrix &M, const HypersurfaceSpec &H);

enum class SatStatus { Saturated, NotSaturated, Inconclusive };

struct SaturationResult {
  SatStatus status = SatStatus::Inconclusive;
  // per entry (row-major): adj_ij = mult[0]*f1 + mult[1]*f2, exact when saturated
  std::vector<MembershipCertificate> certs;
  int fail_row = -1, fail_col = -1;  // first failing entry (1-based in messages)
  int order = 0;
  std::string detail;
};

SaturationResult is_saturated(const PolyMatrix &M, const Poly &f1, const Poly &f2, int D);
SaturationResult is_saturated_serial(const PolyMatrix &M, const Poly &f1, const Poly &f2, int D);
// iterates f_1 vs the rest over the factor list
SaturationResult is_saturated_spec(const PolyMatrix &M, const HypersurfaceSpec &H, int D);

struct ExtensionReport {
  int d = 0, dE1 = 0, dE2 = 0, dtrE1 = 0, dtrE2 = 0;
  bool holds_12 = false;  // d = d(E1) + d(trE2)
  bool holds_21 = false;  // d = d(E2) + d(trE1)
  bool upper_bound = false;
  int t_precision = 0;
};

// params1/params2: branch parametrizations of {f1 = 0} and {f2 = 0}; empty means unparametrized
ExtensionReport extension_criterion(const PolyMatrix &M, const Poly &f1, const Poly &f2, int D,
                                    const std::vector<BranchParam> &params1 = {},
                                    const std::vector<BranchParam> &params2 = {});

// minimal number of generators of the module spanned by the given vectors restricted to branches
int module_generators_on_branches(const std::vector<std::vector<Poly>> &vecs, const std::vector<BranchParam> &branches,
                                  int nvars, int *t_used = nullptr);

struct ObstructionReport {
  int min_gens = 0;
  int tri_bound = 0;
  int diag_bound = 0;
  bool obstructed = false;
  bool diag_obstructed = false;
};

ObstructionReport triangular_obstruction(const PolyMatrix &M, int p1, int p2, int D);

struct DiagnosticsReport {
  int mult = 0;
  int corank0 = 0;
  bool max_gen_at_origin = false;
  bool max_gen_smooth_locus = false;
  std::string tangent_cone;
  std::vector<std::pair<std::string, std::string>> saturated_wrt;  // splitting, status
  std::optional<ExtensionReport> extension;
  int fitting_min_gens = 0;
  std::vector<std::pair<std::string, ObstructionReport>> obstructions;
  int jet_order = 0;
  std::optional<bool> fibre_independent;
};

}  // namespace detrep
