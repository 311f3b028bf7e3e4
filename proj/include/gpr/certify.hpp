#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "gpr/types.hpp"

namespace gpr {

enum class Verdict { CertifiedPR, CertifiedNotPR, LikelyPR, Inconclusive };
enum class DecidedBy { Bounds, NullspaceExact, Witness, Randomized };

const char* to_string(Verdict v);
const char* to_string(DecidedBy d);

struct CertifyConfig {
  int restarts = 64;        // search restarts (collision and null-space)
  int sphere_samples = 512; // Jacobian evidence samples
  std::uint64_t seed = 1;
  double null_rel_tol = 1e-10;          // null-space singular value cutoff
  double eigen_rel_tol = 1e-9;          // eigenvalue sign classification
  double collision_tol = 1e-10;         // accepted collision residual (relative)
  double witness_tol = 1e-8;            // verify_witness measurement gap
  double jacobian_evidence_tol = 1e-6;  // LikelyPR threshold on sampled sigma
  bool use_bounds_layer = true;
  int search_iters = 120;  // per-restart descent budget
};

struct Evidence {
  double min_sigma_jacobian = std::numeric_limits<double>::quiet_NaN();
  int restarts = 0;
  double collision_best = std::numeric_limits<double>::quiet_NaN();
};

template <class S>
struct WitnessT {
  Vec<S> x, y;
};

template <class S>
struct CertificateT {
  Verdict verdict = Verdict::Inconclusive;
  DecidedBy decided_by = DecidedBy::Randomized;
  std::optional<WitnessT<S>> witness;
  std::optional<Mat<S>> nullspace_generator;  // attached for dim-1 decisions
  bool witness_absent = false;                // bounds-layer refutations
  Evidence evidence;
  std::uint64_t seed = 0;
};

using RealCertificate = CertificateT<double>;
using CplxCertificate = CertificateT<Complex>;
using AnyCertificate = std::variant<RealCertificate, CplxCertificate>;

/// Trace-orthonormal basis of {Q Hermitian : Tr(A_j Q) = 0 for all j},
/// computed inside the real symmetric (d(d+1)/2) or Hermitian (d^2)
/// coordinate space by an SVD of the stacked constraint rows. Singular
/// values <= rel_tol * sigma_max count as null.
template <class S>
struct NullspaceT {
  std::vector<Mat<S>> basis;
  int dim() const { return static_cast<int>(basis.size()); }
};

template <class S>
NullspaceT<S> trace_nullspace(const EnsembleT<S>& e, double rel_tol = 1e-10);

/// Eigenvalue sign classification of a nonzero Hermitian Q, with
/// "nonzero" meaning |lambda| > rel_tol * |lambda|_max:
///   exactly two nonzero, same sign -> DefiniteRank2OrLess
///   one nonzero, or two of opposite sign -> IndefiniteOrRank1
///   three or more nonzero -> RankGe3
enum class EigenSignClass { DefiniteRank2OrLess, IndefiniteOrRank1, RankGe3 };

template <class S>
EigenSignClass classify_eigen_signs(const Mat<S>& q, double rel_tol = 1e-9);

/// Collision pair read off a witness-class null-space element:
/// Q = l1 uu^* - |l2| vv^* gives (sqrt(l1) u, sqrt(|l2|) v); a rank-one
/// Q = +-xx^* collides x with the zero signal.
template <class S>
WitnessT<S> witness_from_nullspace(const Mat<S>& q, double rel_tol = 1e-9);

/// Singular values of the measurement Jacobian at x (normalized to the
/// unit sphere internally). Real field: J = 2[A_1 x ... A_N x], d values.
/// Complex field: the real Jacobian 2[F_1 xs ... F_N xs] on the stacked
/// vector, 2d values; the last one is structurally zero along the phase
/// direction. Values are padded with zeros when N is too small.
template <class S>
Eigen::VectorXd jacobian_singular_values(const EnsembleT<S>& e, const Vec<S>& x);

/// sigma_d (real) or sigma_{2d-1} (complex) of the Jacobian at x.
template <class S>
double jacobian_min_sv(const EnsembleT<S>& e, const Vec<S>& x);

/// Jacobian of the measurement map with respect to the real
/// parameterization of x: row j = 2 (A_j x)^T (real) or 2 (F_j xs)^T
/// (complex); shape N x d or N x 2d.
template <class S>
Eigen::MatrixXd measurement_jacobian(const EnsembleT<S>& e, const Vec<S>& x);

template <class S>
struct CollisionT {
  Vec<S> x, y;
  double residual = std::numeric_limits<double>::infinity();
};

/// Damped Gauss-Newton search for measure(x) = measure(y) with the pair
/// kept off the phase orbit. Returns the best verified pair, or nullopt.
/// best_seen, when given, receives the smallest residual over all
/// restarts whether or not it was accepted.
template <class S>
std::optional<CollisionT<S>> collision_search(const EnsembleT<S>& e, int restarts,
                                              std::uint64_t seed,
                                              const CertifyConfig& cfg = {},
                                              double* best_seen = nullptr);

/// Re-verification of a claimed collision using only the measurement map:
/// max-norm gap <= tol * max(1, |M(x)|_inf) and quotient separation
/// >= 1e-3 * (|x| + |y| + 1).
template <class S>
bool verify_witness(const EnsembleT<S>& e, const Vec<S>& x, const Vec<S>& y,
                    double tol = 1e-8);

/// Layered certification: measurement-count bounds, then the exact
/// null-space decision (dim <= 1), then randomized refutation search plus
/// Jacobian evidence. Negative verdicts always re-verify their witness;
/// positive verdicts are exact; randomized outcomes are labeled LikelyPR
/// or Inconclusive.
template <class S>
CertificateT<S> certify_pr(const EnsembleT<S>& e, const CertifyConfig& cfg = {});

AnyCertificate certify_pr_any(const AnyEnsemble& e, const CertifyConfig& cfg = {});

/// Nonsingularity check for the real bilinear map (x, y) |-> (x^T B_j y):
/// multistart damped Gauss-Newton over the product of unit spheres.
/// A singular verdict carries a witness re-verified by direct evaluation.
struct NonsingularityResult {
  bool singular = false;
  Eigen::VectorXd x, y;
  double min_residual = std::numeric_limits<double>::infinity();
  int restarts = 0;
};

NonsingularityResult bilinear_nonsingularity(const std::vector<Eigen::MatrixXd>& mats,
                                             int restarts = 64, std::uint64_t seed = 1);

}  // namespace gpr
