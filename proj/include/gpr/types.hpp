#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace gpr {

using Complex = std::complex<double>;

enum class Field { Real, Complex };

inline const char* to_string(Field f) { return f == Field::Real ? "R" : "C"; }

template <class S>
struct field_tag;
template <>
struct field_tag<double> {
  static constexpr Field value = Field::Real;
};
template <>
struct field_tag<Complex> {
  static constexpr Field value = Field::Complex;
};
template <class S>
inline constexpr Field field_of = field_tag<S>::value;

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using RealVec = Vec<double>;
using CplxVec = Vec<Complex>;
using RealMat = Mat<double>;
using CplxMat = Mat<Complex>;

// Quadratic measurements are real regardless of the field.
using Measurements = Eigen::VectorXd;

// Self-adjointness residual allowed on input, relative to the largest entry.
inline constexpr double kHermitianTol = 1e-12;
// Residual allowed on A*A = A for declared projectors.
inline constexpr double kProjectorTol = 1e-10;

// Raised on malformed user input (files, flags, incompatible shapes).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A validated d x d self-adjoint matrix over R or C.
///
/// Construction checks ||A - A^*||_max <= 1e-12 * max|A_ij| and then
/// replaces A by (A + A^*)/2 so downstream code can rely on exact
/// self-adjointness.
template <class S>
class Hermitian {
 public:
  explicit Hermitian(Mat<S> entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1)
      throw InputError("Hermitian: matrix must be square and nonempty");
    if (!m_.allFinite()) throw InputError("Hermitian: entries must be finite");
    const double scale = m_.cwiseAbs().maxCoeff();
    const double resid = (m_ - Mat<S>(m_.adjoint())).cwiseAbs().maxCoeff();
    if (resid > kHermitianTol * std::max(1.0, scale))
      throw InputError("Hermitian: matrix is not self-adjoint within tolerance");
    m_ = 0.5 * (m_ + Mat<S>(m_.adjoint()));
  }

  const Mat<S>& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Mat<S> m_;
};

using RealHermitian = Hermitian<double>;
using CplxHermitian = Hermitian<Complex>;

struct EnsembleMeta {
  std::optional<std::vector<int>> ranks;  // declared rank per matrix
  bool projectors = false;                // every matrix satisfies A*A = A
};

/// An ordered tuple (A_1, ..., A_N) of Hermitian matrices sharing one
/// dimension and one field.
template <class S>
class EnsembleT {
 public:
  EnsembleT(std::vector<Hermitian<S>> matrices, EnsembleMeta meta = {})
      : matrices_(std::move(matrices)), meta_(std::move(meta)) {
    if (matrices_.empty()) throw InputError("Ensemble: needs at least one matrix");
    const Eigen::Index d = matrices_.front().dim();
    for (const auto& a : matrices_)
      if (a.dim() != d) throw InputError("Ensemble: matrices must share one dimension");
    if (meta_.ranks && static_cast<int>(meta_.ranks->size()) != size())
      throw InputError("Ensemble: rank list length must equal the matrix count");
    if (meta_.projectors) {
      for (const auto& a : matrices_) {
        const auto& m = a.mat();
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        if (((m * m) - m).cwiseAbs().maxCoeff() > kProjectorTol * scale * scale)
          throw InputError("Ensemble: declared projector fails A*A = A");
      }
    }
  }

  Eigen::Index dim() const { return matrices_.front().dim(); }
  int size() const { return static_cast<int>(matrices_.size()); }
  const std::vector<Hermitian<S>>& matrices() const { return matrices_; }
  const Mat<S>& matrix(int j) const { return matrices_[static_cast<size_t>(j)].mat(); }
  const EnsembleMeta& meta() const { return meta_; }
  static constexpr Field field() { return field_of<S>; }

  /// Same ensemble with every matrix multiplied by c > 0.
  EnsembleT scaled(double c) const {
    std::vector<Hermitian<S>> out;
    out.reserve(matrices_.size());
    for (const auto& a : matrices_) out.emplace_back(Mat<S>(c * a.mat()));
    return EnsembleT(std::move(out), meta_);
  }

 private:
  std::vector<Hermitian<S>> matrices_;
  EnsembleMeta meta_;
};

using RealEnsemble = EnsembleT<double>;
using CplxEnsemble = EnsembleT<Complex>;

/// Runtime-tagged ensemble for the file/CLI boundary; internally each
/// field keeps its own arithmetic.
using AnyEnsemble = std::variant<RealEnsemble, CplxEnsemble>;

inline Field field_of_ensemble(const AnyEnsemble& e) {
  return std::visit([](const auto& v) { return v.field(); }, e);
}

inline Eigen::Index dim_of_ensemble(const AnyEnsemble& e) {
  return std::visit([](const auto& v) { return v.dim(); }, e);
}

inline int size_of_ensemble(const AnyEnsemble& e) {
  return std::visit([](const auto& v) { return v.size(); }, e);
}

}  // namespace gpr
