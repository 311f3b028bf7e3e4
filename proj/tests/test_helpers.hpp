#pragma once

#include "gpr/rng.hpp"
#include "gpr/types.hpp"

namespace gpr::testing {

template <class S>
Vec<S> random_signal(CounterRng& rng, Eigen::Index d) {
  Vec<S> x(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if constexpr (field_of<S> == Field::Real)
      x[i] = rng.next_gaussian();
    else
      x[i] = Complex(rng.next_gaussian(), rng.next_gaussian());
  }
  return x;
}

template <class S>
Hermitian<S> random_hermitian(CounterRng& rng, Eigen::Index d) {
  Mat<S> m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      if constexpr (field_of<S> == Field::Real)
        m(i, j) = rng.next_gaussian();
      else
        m(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    }
  return Hermitian<S>(Mat<S>(0.5 * (m + Mat<S>(m.adjoint()))));
}

inline RealMat random_real_matrix(CounterRng& rng, Eigen::Index rows, Eigen::Index cols) {
  RealMat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.next_gaussian();
  return m;
}

}  // namespace gpr::testing
