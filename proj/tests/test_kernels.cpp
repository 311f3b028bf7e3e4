#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gpr/core.hpp"
#include "gpr/ensembles.hpp"
#include "gpr/kernels.hpp"
#include "test_helpers.hpp"

using namespace gpr;
using gpr::testing::random_hermitian;
using gpr::testing::random_signal;

namespace {

// Dense random pack, including dimensions that are not lane multiples.
kernels::PackedQuadMap random_pack(CounterRng& rng, int dim, int count) {
  kernels::PackedQuadMap pack;
  pack.dim = dim;
  pack.count = count;
  pack.mats.resize(static_cast<size_t>(dim) * dim * count);
  for (auto& v : pack.mats) v = rng.next_gaussian();
  return pack;
}

}  // namespace

TEST_CASE("lanes agree with the scalar reference") {
  CounterRng rng(101);
  for (int dim : {1, 2, 3, 4, 5, 7, 8, 11, 16, 17}) {
    for (int count : {1, 3, 9}) {
      const auto pack = random_pack(rng, dim, count);
      Eigen::VectorXd x(dim);
      for (int i = 0; i < dim; ++i) x[i] = rng.next_gaussian();

      Eigen::VectorXd q_ref(count), q_lane(count);
      Eigen::MatrixXd m_ref(dim, count), m_lane(dim, count);
      kernels::quadratic_forms_lane(kernels::Lane::Scalar, pack.mats.data(), dim, count,
                                    x.data(), q_ref.data());
      kernels::matvec_columns_lane(kernels::Lane::Scalar, pack.mats.data(), dim, count,
                                   x.data(), m_ref.data());

      // Scalar lane against a plain Eigen evaluation.
      for (int j = 0; j < count; ++j) {
        const Eigen::Map<const Eigen::MatrixXd> a(pack.mat(j), dim, dim);
        REQUIRE(std::abs(q_ref[j] - x.dot(a * x)) <= 1e-12 * std::max(1.0, std::abs(q_ref[j])));
        REQUIRE((m_ref.col(j) - a * x).norm() <= 1e-12 * std::max(1.0, m_ref.col(j).norm()));
      }

      if (!kernels::lane_available(kernels::Lane::Avx2)) continue;
      kernels::quadratic_forms_lane(kernels::Lane::Avx2, pack.mats.data(), dim, count,
                                    x.data(), q_lane.data());
      kernels::matvec_columns_lane(kernels::Lane::Avx2, pack.mats.data(), dim, count,
                                   x.data(), m_lane.data());
      for (int j = 0; j < count; ++j) {
        REQUIRE(std::abs(q_lane[j] - q_ref[j]) <= 1e-13 * std::max(1.0, std::abs(q_ref[j])));
        REQUIRE((m_lane.col(j) - m_ref.col(j)).norm() <=
                1e-13 * std::max(1.0, m_ref.col(j).norm()));
      }
    }
  }
}

TEST_CASE("active lane resolves and runs") {
  const kernels::Lane lane = kernels::active_lane();
  CHECK(kernels::lane_available(lane));
  CHECK((std::string(kernels::lane_name(lane)) == "scalar" ||
         std::string(kernels::lane_name(lane)) == "avx2"));
}

TEST_CASE("packed complex ensembles reproduce the measurement map") {
  CounterRng rng(103);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_below(6));
    const int n = 1 + static_cast<int>(rng.next_below(5));
    std::vector<CplxHermitian> mats;
    for (int j = 0; j < n; ++j) mats.push_back(random_hermitian<Complex>(rng, d));
    const CplxEnsemble e(std::move(mats));
    const auto pack = kernels::PackedQuadMap::from(e);
    CHECK(pack.dim == 2 * d);

    const CplxVec x = random_signal<Complex>(rng, d);
    const Measurements direct = measure(e, x);
    const Eigen::VectorXd packed = kernels::quadratic_forms(pack, stack_real(x));
    REQUIRE((direct - packed).cwiseAbs().maxCoeff() <=
            1e-12 * std::max(1.0, direct.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("packed real ensembles reproduce the measurement map") {
  CounterRng rng(107);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_below(8));
    const int n = 1 + static_cast<int>(rng.next_below(5));
    std::vector<RealHermitian> mats;
    for (int j = 0; j < n; ++j) mats.push_back(random_hermitian<double>(rng, d));
    const RealEnsemble e(std::move(mats));
    const auto pack = kernels::PackedQuadMap::from(e);
    const RealVec x = random_signal<double>(rng, d);
    const Measurements direct = measure(e, x);
    const Eigen::VectorXd packed = kernels::quadratic_forms(pack, x);
    REQUIRE((direct - packed).cwiseAbs().maxCoeff() <=
            1e-12 * std::max(1.0, direct.cwiseAbs().maxCoeff()));
  }
}
