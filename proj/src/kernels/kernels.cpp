#include "gpr/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

#include "gpr/core.hpp"

namespace gpr::kernels {

PackedQuadMap PackedQuadMap::from(const RealEnsemble& e) {
  PackedQuadMap pack;
  pack.dim = static_cast<int>(e.dim());
  pack.count = e.size();
  pack.mats.resize(static_cast<size_t>(pack.dim) * pack.dim * pack.count);
  for (int j = 0; j < pack.count; ++j)
    Eigen::Map<Eigen::MatrixXd>(pack.mats.data() + static_cast<size_t>(j) * pack.dim * pack.dim,
                                pack.dim, pack.dim) = e.matrix(j);
  return pack;
}

PackedQuadMap PackedQuadMap::from(const CplxEnsemble& e) {
  PackedQuadMap pack;
  pack.dim = static_cast<int>(2 * e.dim());
  pack.count = e.size();
  pack.mats.resize(static_cast<size_t>(pack.dim) * pack.dim * pack.count);
  for (int j = 0; j < pack.count; ++j) {
    const RealLinearization lin = real_linearize(e.matrices()[static_cast<size_t>(j)]);
    Eigen::Map<Eigen::MatrixXd>(pack.mats.data() + static_cast<size_t>(j) * pack.dim * pack.dim,
                                pack.dim, pack.dim) = lin.block;
  }
  return pack;
}

namespace {

void quadratic_forms_scalar(const double* mats, int dim, int count, const double* x,
                            double* out) {
  const size_t stride = static_cast<size_t>(dim) * dim;
  for (int j = 0; j < count; ++j) {
    const double* a = mats + static_cast<size_t>(j) * stride;
    double acc = 0.0;
    for (int c = 0; c < dim; ++c) {
      const double* col = a + static_cast<size_t>(c) * dim;
      double dot = 0.0;
      for (int r = 0; r < dim; ++r) dot += col[r] * x[r];
      acc += dot * x[c];
    }
    out[j] = acc;
  }
}

void matvec_columns_scalar(const double* mats, int dim, int count, const double* x,
                           double* cols) {
  const size_t stride = static_cast<size_t>(dim) * dim;
  for (int j = 0; j < count; ++j) {
    const double* a = mats + static_cast<size_t>(j) * stride;
    double* y = cols + static_cast<size_t>(j) * dim;
    for (int r = 0; r < dim; ++r) y[r] = 0.0;
    for (int c = 0; c < dim; ++c) {
      const double* col = a + static_cast<size_t>(c) * dim;
      const double xc = x[c];
      for (int r = 0; r < dim; ++r) y[r] += col[r] * xc;
    }
  }
}

#if defined(GPR_HAVE_AVX2_LANE)
bool cpu_has_avx2() { return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"); }
#else
bool cpu_has_avx2() { return false; }
#endif

Lane pick_lane() {
  const char* forced = std::getenv("GPR_KERNEL_LANE");
  if (forced != nullptr && std::string(forced) == "scalar") return Lane::Scalar;
  return cpu_has_avx2() ? Lane::Avx2 : Lane::Scalar;
}

}  // namespace

#if defined(GPR_HAVE_AVX2_LANE)
// Defined in kernels_avx2.cpp, compiled with the AVX2 flags.
void quadratic_forms_avx2(const double* mats, int dim, int count, const double* x, double* out);
void matvec_columns_avx2(const double* mats, int dim, int count, const double* x, double* cols);
#endif

Lane active_lane() {
  static const Lane lane = pick_lane();
  return lane;
}

const char* lane_name(Lane lane) { return lane == Lane::Avx2 ? "avx2" : "scalar"; }

bool lane_available(Lane lane) {
  if (lane == Lane::Scalar) return true;
  return cpu_has_avx2();
}

void quadratic_forms_lane(Lane lane, const double* mats, int dim, int count, const double* x,
                          double* out) {
  if (lane == Lane::Scalar) return quadratic_forms_scalar(mats, dim, count, x, out);
#if defined(GPR_HAVE_AVX2_LANE)
  if (cpu_has_avx2()) return quadratic_forms_avx2(mats, dim, count, x, out);
#endif
  throw std::runtime_error("kernel lane unavailable on this host");
}

void matvec_columns_lane(Lane lane, const double* mats, int dim, int count, const double* x,
                         double* cols) {
  if (lane == Lane::Scalar) return matvec_columns_scalar(mats, dim, count, x, cols);
#if defined(GPR_HAVE_AVX2_LANE)
  if (cpu_has_avx2()) return matvec_columns_avx2(mats, dim, count, x, cols);
#endif
  throw std::runtime_error("kernel lane unavailable on this host");
}

void quadratic_forms(const PackedQuadMap& pack, const double* x, double* out) {
  quadratic_forms_lane(active_lane(), pack.mats.data(), pack.dim, pack.count, x, out);
}

void matvec_columns(const PackedQuadMap& pack, const double* x, double* cols) {
  matvec_columns_lane(active_lane(), pack.mats.data(), pack.dim, pack.count, x, cols);
}

}  // namespace gpr::kernels
