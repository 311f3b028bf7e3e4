#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gpr/types.hpp"

namespace gpr {

/// Certified bounds on the minimal measurement count for the phase
/// retrieval property in dimension d over the given field, together with
/// the combinatorial quantities behind the complex-case formulas. All
/// arithmetic is exact integer arithmetic.
struct BoundsReport {
  int d = 0;
  Field field = Field::Real;
  std::optional<int> lower;
  int upper = 0;
  std::optional<int> exact;
  int alpha = 0;          // ones in the binary expansion of d-1
  int epsilon_alpha = 0;  // in {0,1,2}
  int delta = 0;          // 0 for odd d, 1 for even d
  struct {
    std::string lower, upper, exact;
  } provenance;

  /// Best certified lower bound (exact when present).
  std::optional<int> certified_lower() const {
    if (exact) return exact;
    return lower;
  }
};

/// Ones in the binary expansion of n.
int binary_ones(std::uint64_t n);

enum class Parity { Even, Odd };

/// Parity of binomial(n, k) via the base-2 carry rule: odd exactly when
/// adding k and n-k carries nowhere, i.e. (k AND (n-k)) == 0.
Parity binom_parity(std::uint64_t n, std::uint64_t k);

/// Necessary condition for a nonsingular real bilinear form of size
/// (p, q, N): binomial(N, k) even for all N-q+1 <= k <= p-1 (vacuous when
/// the range is empty).
bool stiefel_hopf_pass(int p, int q, int n);

/// Equivalent row form of the same condition: binomial(m, p-1) even for
/// all N <= m <= p+q-2.
bool stiefel_hopf_pass_rowform(int p, int q, int n);

/// Smallest N >= max(p, q) passing the parity condition; a lower bound
/// for the minimal nonsingular size p#q. Always <= p+q-1.
int sharp_lower_bound(int p, int q);

/// Bounds on the real minimal measurement number m_R(d), d >= 2.
BoundsReport m_real_bounds(int d);

/// Bounds on the complex minimal measurement number m_C(d), d >= 2.
BoundsReport m_complex_bounds(int d);

BoundsReport measurement_bounds(Field field, int d);

/// Dimension-count feasibility of recovering rank-<=r d x d matrices from
/// N trace measurements. Over C, N < 2rd - r^2 is impossible for every
/// measurement tuple; over R the same count is not a certified obstruction,
/// so the verdict is dimension_ok with a caveat flag.
struct MatrixRecoveryFeasibility {
  bool impossible = false;
  bool real_caveat = false;  // real threshold is not tight
  int dimension_threshold = 0;
};

MatrixRecoveryFeasibility matrix_recovery_feasible(int d, int r, int n,
                                                   Field field = Field::Complex);

}  // namespace gpr
