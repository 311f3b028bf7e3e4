#pragma once

#include <cstdint>
#include <optional>

#include "gpr/types.hpp"

namespace gpr {

struct RecoveryConfig {
  int max_gn_iters = 100;
  double gn_tol = 1e-12;       // relative residual target
  double damping_init = 1e-3;  // Levenberg parameter schedule
  double damping_down = 0.5;
  double damping_up = 4.0;
  int random_retries = 8;  // fallback starts when the spectral path fails
  std::uint64_t seed = 1;
};

template <class S>
struct RecoveryReportT {
  Vec<S> estimate;
  double residual = std::numeric_limits<double>::infinity();  // |M(x)-b| / max(1, |b|)
  std::optional<double> lifted_rank_gap;  // |lambda_2| / |lambda_1| of the lift
  int iterations = 0;
  bool converged = false;
};

using RealRecoveryReport = RecoveryReportT<double>;
using CplxRecoveryReport = RecoveryReportT<Complex>;
using AnyRecoveryReport = std::variant<RealRecoveryReport, CplxRecoveryReport>;

/// Minimum-Frobenius-norm Hermitian solution of the lifted linear system
/// Tr(A_j Q) = b_j in the least-squares sense (pseudoinverse in the real
/// Hermitian coordinate chart).
template <class S>
Hermitian<S> lift_solve(const EnsembleT<S>& e, const Measurements& b);

template <class S>
struct SpectralInit {
  Vec<S> x0;
  bool degenerate = false;       // top eigenvalue not meaningfully positive
  double rank_gap = 0.0;         // |lambda_2| / |lambda_1|
};

/// Rank-one projection of the lifted solution: sqrt(max(lambda_1, 0))
/// times the top eigenvector.
template <class S>
SpectralInit<S> spectral_init(const Hermitian<S>& q);

/// Levenberg-damped Gauss-Newton on r_j(x) = x^*A_j x - b_j over the real
/// parameterization of x. The complex phase-gauge null direction is
/// absorbed by the damping, so no coordinate is pinned. Accepted steps
/// never increase the residual; non-convergence is reported, not thrown.
/// residual_trace, when given, records the residual after each accepted
/// step.
template <class S>
RecoveryReportT<S> refine(const EnsembleT<S>& e, const Measurements& b, const Vec<S>& x0,
                          const RecoveryConfig& cfg = {},
                          std::vector<double>* residual_trace = nullptr);

/// lift -> spectral projection -> refinement. Falls back to seeded random
/// starts when the spectral path is degenerate or fails to converge, and
/// returns the best report by (residual, start index).
template <class S>
RecoveryReportT<S> recover(const EnsembleT<S>& e, const Measurements& b,
                           const RecoveryConfig& cfg = {});

AnyRecoveryReport recover_any(const AnyEnsemble& e, const Measurements& b,
                              const RecoveryConfig& cfg = {});

}  // namespace gpr
