#pragma once

#include "gpr/types.hpp"

namespace gpr {

// Real-coordinate chart for Hermitian (resp. real symmetric) matrices.
//
// Ordering, fixed so null-space bases are reproducible: the d diagonal
// entries first, then the strictly upper triangle in row-major order;
// a complex off-diagonal entry contributes its (re, im) pair. Off-diagonal
// coordinates carry a factor sqrt(2) so the chart is an isometry for the
// trace inner product <A,B> = Tr(AB): dot products of coordinate vectors
// equal trace pairings, and orthonormal coordinate vectors pull back to
// trace-orthonormal Hermitian matrices.

inline Eigen::Index herm_coord_dim(Field f, Eigen::Index d) {
  return f == Field::Real ? d * (d + 1) / 2 : d * d;
}

template <class S>
Eigen::VectorXd herm_to_coords(const Mat<S>& a) {
  const Eigen::Index d = a.rows();
  constexpr bool real = field_of<S> == Field::Real;
  const double rt2 = std::sqrt(2.0);
  Eigen::VectorXd c(herm_coord_dim(field_of<S>, d));
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) c[k++] = std::real(a(i, i));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      c[k++] = rt2 * std::real(a(i, j));
      if constexpr (!real) c[k++] = rt2 * std::imag(a(i, j));
    }
  return c;
}

template <class S>
Mat<S> coords_to_herm(const Eigen::VectorXd& c, Eigen::Index d) {
  constexpr bool real = field_of<S> == Field::Real;
  const double inv_rt2 = 1.0 / std::sqrt(2.0);
  Mat<S> a = Mat<S>::Zero(d, d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) a(i, i) = S(c[k++]);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      if constexpr (real) {
        a(i, j) = inv_rt2 * c[k++];
        a(j, i) = a(i, j);
      } else {
        const double re = inv_rt2 * c[k];
        const double im = inv_rt2 * c[k + 1];
        k += 2;
        a(i, j) = Complex(re, im);
        a(j, i) = Complex(re, -im);
      }
    }
  return a;
}

}  // namespace gpr
