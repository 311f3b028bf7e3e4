#pragma once

#include <string>
#include <vector>

#include "gpr/types.hpp"

namespace gpr::kernels {

/// Flattened ensemble for the arithmetic inner loops.
///
/// Complex ensembles enter through their real block linearization
/// (F = [B -C; C B], dimension doubled), so every kernel below runs in
/// plain real arithmetic: out[j] = x^T F_j x and the Jacobian columns
/// F_j x. Matrices are stored contiguously, column-major per matrix.
struct PackedQuadMap {
  int dim = 0;    // rows of each block (d real, 2d complex)
  int count = 0;  // number of matrices
  std::vector<double> mats;

  const double* mat(int j) const {
    return mats.data() + static_cast<size_t>(j) * dim * dim;
  }

  static PackedQuadMap from(const RealEnsemble& e);
  static PackedQuadMap from(const CplxEnsemble& e);
};

enum class Lane { Scalar, Avx2 };

/// Lane picked at startup: AVX2 when compiled in and the CPU reports it,
/// otherwise scalar. GPR_KERNEL_LANE=scalar in the environment forces the
/// reference lane.
Lane active_lane();
const char* lane_name(Lane lane);
bool lane_available(Lane lane);

/// out[j] = x^T F_j x for every matrix in the pack.
void quadratic_forms(const PackedQuadMap& pack, const double* x, double* out);

/// cols(:, j) = F_j x, column-major dim x count.
void matvec_columns(const PackedQuadMap& pack, const double* x, double* cols);

/// Run a specific lane; throws std::runtime_error for an unavailable lane.
/// The scalar lane is the reference the SIMD lanes are tested against.
void quadratic_forms_lane(Lane lane, const double* mats, int dim, int count,
                          const double* x, double* out);
void matvec_columns_lane(Lane lane, const double* mats, int dim, int count,
                         const double* x, double* cols);

// Eigen-friendly wrappers.
inline Eigen::VectorXd quadratic_forms(const PackedQuadMap& pack, const Eigen::VectorXd& x) {
  Eigen::VectorXd out(pack.count);
  quadratic_forms(pack, x.data(), out.data());
  return out;
}

inline Eigen::MatrixXd matvec_columns(const PackedQuadMap& pack, const Eigen::VectorXd& x) {
  Eigen::MatrixXd cols(pack.dim, pack.count);
  matvec_columns(pack, x.data(), cols.data());
  return cols;
}

}  // namespace gpr::kernels
