// Constructive engines: augmentation, saturated splitting, tangential splitting,
// curve triangularization, multiple-curve splitting, kernel fibre limits.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "detrep/curves.hpp"
#include "detrep/diagnostics.hpp"
#include "detrep/matring.hpp"

namespace detrep {

// a certified negative answer (exit 4)
struct ObstructionError : AlgebraError {
  using AlgebraError::AlgebraError;
};
// the engine could not conclude at this order or its preconditions fail (exit 5)
struct InconclusiveError : AlgebraError {
  using AlgebraError::AlgebraError;
};

enum class Structure { Diagonal, UpperTriangular };

struct DecompCertificate {
  EquivPair P;
  std::vector<PolyMatrix> blocks;
  Structure structure = Structure::Diagonal;
  int certified_order = 0;
};

PolyMatrix assemble(const DecompCertificate &c, int nvars);

struct VerifyResult {
  bool ok = false;
  std::string message;
};

// recompute jet(A M B, N) and check the claimed pattern
VerifyResult verify_certificate(const PolyMatrix &M, const DecompCertificate &c);

// M B = u prod f_i I, u = 1 unless det(M) carries a non-constant polynomial unit
PolyMatrix mf_augment(const PolyMatrix &M, const HypersurfaceSpec &H);

DecompCertificate decompose_saturated(const PolyMatrix &M, const Poly &f1, const Poly &f2, int N);
DecompCertificate tangential_decompose(const PolyMatrix &M, int N, std::uint64_t seed = 0);
// params[i] are the branches of factor i of H (reduced factors only)
DecompCertificate curve_triangularize(const PolyMatrix &M, const HypersurfaceSpec &H,
                                      const std::vector<std::vector<BranchParam>> &params, int N);
DecompCertificate multiple_curve_decompose(const PolyMatrix &M, const Poly &f, const BranchParam &param, int r, int N);

struct FibreLimit {
  bool defined = false;
  RatVec direction;
  std::string flag;
};

FibreLimit kernel_fibre_limit(const PolyMatrix &M, const BranchParam &param, int N);

struct FibreTest {
  bool independent = false;
  std::string flag;
};

// When det(M) has a squarefree tangent cone it has exactly mult smooth branches, so
// more branches than d already rules out independence; params cover the rest.
FibreTest fibre_independence_test(const PolyMatrix &M, const std::vector<BranchParam> &params, int N);

}  // namespace detrep
