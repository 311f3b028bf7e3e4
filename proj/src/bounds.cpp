#include "gpr/bounds.hpp"

#include <bit>

namespace gpr {

int binary_ones(std::uint64_t n) { return std::popcount(n); }

Parity binom_parity(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw InputError("binom_parity: k out of range");
  return (k & (n - k)) == 0 ? Parity::Odd : Parity::Even;
}

bool stiefel_hopf_pass(int p, int q, int n) {
  if (p < 1 || q < 1 || n < std::max(p, q))
    throw InputError("stiefel_hopf_pass: need p, q >= 1 and N >= max(p, q)");
  for (int k = std::max(1, n - q + 1); k <= p - 1; ++k)
    if (binom_parity(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)) ==
        Parity::Odd)
      return false;
  return true;
}

bool stiefel_hopf_pass_rowform(int p, int q, int n) {
  if (p < 1 || q < 1 || n < std::max(p, q))
    throw InputError("stiefel_hopf_pass_rowform: need p, q >= 1 and N >= max(p, q)");
  for (int m = n; m <= p + q - 2; ++m)
    if (binom_parity(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(p - 1)) ==
        Parity::Odd)
      return false;
  return true;
}

int sharp_lower_bound(int p, int q) {
  if (p < 1 || q < 1) throw InputError("sharp_lower_bound: need p, q >= 1");
  // N = p+q-1 always passes (empty range), so the scan terminates.
  for (int n = std::max(p, q);; ++n)
    if (stiefel_hopf_pass(p, q, n)) return n;
}

namespace {

int floor_log2(int n) {
  int k = -1;
  while (n > 0) {
    n >>= 1;
    ++k;
  }
  return k;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

BoundsReport m_real_bounds(int d) {
  if (d < 2) throw InputError("m_real_bounds: need d >= 2");
  BoundsReport rep;
  rep.d = d;
  rep.field = Field::Real;
  rep.alpha = binary_ones(static_cast<std::uint64_t>(d - 1));
  rep.delta = (d % 2 == 0) ? 1 : 0;
  rep.epsilon_alpha = 0;  // drives the complex bounds only

  if (d % 2 == 1) {
    rep.upper = 2 * d - 1;
    rep.provenance.upper = "generic construction, odd dimension";
  } else {
    rep.upper = 2 * d - 2;
    rep.provenance.upper = "symmetric nonsingular form construction, even dimension";
  }

  // Exact families d = 2^k + 1 and d = 2^k + 2, k >= 1 (d = 2 = 2^0 + 1
  // is excluded; no exact value is certified there).
  if (d >= 3 && is_power_of_two(d - 1)) {
    rep.exact = 2 * d - 1;
    rep.provenance.exact = "power-of-two-plus-one family";
  } else if (d >= 4 && is_power_of_two(d - 2)) {
    rep.exact = 2 * d - 2;
    rep.provenance.exact = "power-of-two-plus-two family";
  }

  int lower = d;  // injectivity on a d-dimensional quotient needs d directions
  std::string lower_why = "dimension floor";
  if (d >= 5) {
    const int formula = (d % 2 == 1) ? 2 * d - 6 * floor_log2(d - 1) + 6
                                     : 2 * d - 6 * floor_log2(d - 2) + 4;
    if (formula > lower) {
      lower = formula;
      lower_why = "non-embedding defect formula";
    } else {
      lower_why = "dimension floor (defect formula clamped)";
    }
  }
  if (rep.exact && *rep.exact > lower) {
    lower = *rep.exact;
    lower_why = rep.provenance.exact;
  }
  rep.lower = lower;
  rep.provenance.lower = lower_why;
  return rep;
}

BoundsReport m_complex_bounds(int d) {
  if (d < 2) throw InputError("m_complex_bounds: need d >= 2");
  BoundsReport rep;
  rep.d = d;
  rep.field = Field::Complex;
  const int alpha = binary_ones(static_cast<std::uint64_t>(d - 1));
  rep.alpha = alpha;
  rep.delta = (d % 2 == 0) ? 1 : 0;
  if (d % 2 == 1 && alpha % 4 == 3)
    rep.epsilon_alpha = 2;
  else if (d % 2 == 1 && alpha % 4 == 2)
    rep.epsilon_alpha = 1;
  else
    rep.epsilon_alpha = 0;

  if (d == 2) {
    rep.lower = 3;
    rep.upper = 3;
    rep.exact = 3;
    rep.provenance.lower = "Jacobian rank floor 2d-1";
    rep.provenance.upper = "explicit three-matrix ensemble";
    rep.provenance.exact = "explicit three-matrix ensemble";
    return rep;
  }

  rep.upper = 4 * d - 3 - alpha - rep.delta;
  rep.provenance.upper = "projective embedding construction";

  if (d <= 4) {
    // The non-embedding lower bound needs d > 4; no certified lower
    // bound is reported here.
    rep.provenance.lower = "unavailable for d in {3,4}";
    return rep;
  }

  rep.lower = 4 * d - 2 - 2 * alpha + rep.epsilon_alpha;
  rep.provenance.lower = "non-embedding of complex projective space";

  if (*rep.lower == rep.upper) {
    rep.exact = rep.upper;
    // The binary patterns where this happens: d = 2^k+1, 2^k+2,
    // 2^k+2^j+1, 2^k+2^j+2^l+1 (low exponents > 1), plus the j=1 and
    // l=1 patterns where the two formulas also meet.
    rep.provenance.exact = "lower and upper bounds coincide";
  }
  return rep;
}

BoundsReport measurement_bounds(Field field, int d) {
  return field == Field::Real ? m_real_bounds(d) : m_complex_bounds(d);
}

MatrixRecoveryFeasibility matrix_recovery_feasible(int d, int r, int n, Field field) {
  if (r < 1 || r > d) throw InputError("matrix_recovery_feasible: need 1 <= r <= d");
  if (n < 0) throw InputError("matrix_recovery_feasible: need N >= 0");
  MatrixRecoveryFeasibility out;
  out.dimension_threshold = 2 * r * d - r * r;
  if (field == Field::Complex) {
    out.impossible = n < out.dimension_threshold;
  } else {
    out.impossible = false;
    out.real_caveat = true;
  }
  return out;
}

}  // namespace gpr
