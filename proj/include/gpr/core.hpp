#pragma once

#include "gpr/types.hpp"

namespace gpr {

namespace detail {

template <class S>
double quadratic_form(const Mat<S>& a, const Vec<S>& x) {
  const S q = x.dot(a * x);  // Eigen's dot conjugates the left argument
  if constexpr (field_of<S> == Field::Complex) {
    // Self-adjointness makes x^*Ax real; anything beyond roundoff means
    // the matrix slipped past validation.
    if (std::abs(std::imag(q)) > 1e-12 * std::max(1.0, std::abs(q)))
      throw std::logic_error("quadratic form has a non-negligible imaginary part");
    return std::real(q);
  } else {
    return q;
  }
}

}  // namespace detail

/// The quadratic measurement map: values[j] = x^* A_j x.
template <class S>
Measurements measure(const EnsembleT<S>& e, const Vec<S>& x) {
  if (x.size() != e.dim()) throw InputError("measure: signal dimension mismatch");
  Measurements out(e.size());
  for (int j = 0; j < e.size(); ++j) out[j] = detail::quadratic_form(e.matrix(j), x);
  return out;
}

/// Both sides of the polarization identity
///   x^*Ax - y^*Ay = 2 Re(v^* A u),  v = (x+y)/2, u = x - y.
/// The half lives on one factor only; splitting it across both would
/// halve the right side. Callers assert the pair is equal.
template <class S>
std::pair<double, double> polarization_gap(const Hermitian<S>& a, const Vec<S>& x,
                                           const Vec<S>& y) {
  if (x.size() != a.dim() || y.size() != a.dim())
    throw InputError("polarization_gap: dimension mismatch");
  const double lhs = detail::quadratic_form(a.mat(), x) - detail::quadratic_form(a.mat(), y);
  const Vec<S> v = 0.5 * (x + y);
  const Vec<S> u = x - y;
  const S cross = v.dot(a.mat() * u);
  return {lhs, 2.0 * std::real(cross)};
}

/// Linear isomorphism from real d x d matrices onto complex Hermitian
/// matrices: A |-> (A + A^T)/2 + i (A - A^T)/2.
inline CplxHermitian hermitian_from_real(const RealMat& a) {
  if (a.rows() != a.cols()) throw InputError("hermitian_from_real: matrix must be square");
  const RealMat sym = 0.5 * (a + a.transpose());
  const RealMat skew = 0.5 * (a - a.transpose());
  CplxMat h(a.rows(), a.cols());
  h.real() = sym;
  h.imag() = skew;
  return CplxHermitian(std::move(h));
}

/// Inverse of hermitian_from_real: H = B + iC with B symmetric and C
/// antisymmetric maps back to B + C.
inline RealMat real_from_hermitian(const CplxHermitian& h) {
  return RealMat(h.mat().real() + h.mat().imag());
}

/// Real 2d x 2d block form of a complex Hermitian matrix A = B + iC:
/// F = [B -C; C B], chosen so that u^*Au = x^T F x for the stacked real
/// vector x = [Re u; Im u].
struct RealLinearization {
  RealMat sym;    // B, symmetric
  RealMat skew;   // C, antisymmetric
  RealMat block;  // F
};

inline RealLinearization real_linearize(const CplxHermitian& a) {
  const Eigen::Index d = a.dim();
  RealLinearization out;
  out.sym = a.mat().real();
  out.skew = a.mat().imag();
  out.block.resize(2 * d, 2 * d);
  out.block.topLeftCorner(d, d) = out.sym;
  out.block.topRightCorner(d, d) = -out.skew;
  out.block.bottomLeftCorner(d, d) = out.skew;
  out.block.bottomRightCorner(d, d) = out.sym;
  return out;
}

inline std::vector<RealLinearization> real_linearize(const CplxEnsemble& e) {
  std::vector<RealLinearization> out;
  out.reserve(static_cast<size_t>(e.size()));
  for (const auto& a : e.matrices()) out.push_back(real_linearize(a));
  return out;
}

/// Stack a complex vector into its real parameterization [Re u; Im u].
inline RealVec stack_real(const CplxVec& u) {
  RealVec x(2 * u.size());
  x.head(u.size()) = u.real();
  x.tail(u.size()) = u.imag();
  return x;
}

inline CplxVec unstack_real(const RealVec& x) {
  const Eigen::Index d = x.size() / 2;
  CplxVec u(d);
  u.real() = x.head(d);
  u.imag() = x.tail(d);
  return u;
}

/// Distance between phase orbits. Real case: min(|x-y|, |x+y|). Complex
/// case: minimizing |x - by|^2 over |b|=1 gives the closed form
/// sqrt(|x|^2 + |y|^2 - 2|<x,y>|), attained at b = conj(<x,y>)/|<x,y>|.
/// Zero exactly when x and y lie on the same unimodular orbit.
template <class S>
double quotient_distance(const Vec<S>& x, const Vec<S>& y) {
  if (x.size() != y.size()) throw InputError("quotient_distance: dimension mismatch");
  if constexpr (field_of<S> == Field::Real) {
    return std::min((x - y).norm(), (x + y).norm());
  } else {
    const double g = x.squaredNorm() + y.squaredNorm() - 2.0 * std::abs(x.dot(y));
    return std::sqrt(std::max(0.0, g));
  }
}

}  // namespace gpr
