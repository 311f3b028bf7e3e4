#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>

#include "gpr/core.hpp"
#include "gpr/ensembles.hpp"
#include "test_helpers.hpp"

using namespace gpr;

namespace {

template <class S>
Eigen::VectorXd normalized_singular_values(const Mat<S>& a) {
  Eigen::JacobiSVD<Mat<S>> svd(Mat<S>(a / a.norm()));
  return svd.singularValues();
}

template <class S>
void check_rank_thresholds(const EnsembleT<S>& e, const std::vector<int>& ranks) {
  for (int j = 0; j < e.size(); ++j) {
    const int r = ranks[static_cast<size_t>(j)];
    const Eigen::VectorXd sv = normalized_singular_values(e.matrix(j));
    REQUIRE(sv[r - 1] > 1e-8);
    if (r < sv.size()) REQUIRE(sv[r] < 1e-10);
  }
}

}  // namespace

TEST_CASE("gen: determinism in the seed") {
  const GenSpec spec = GenSpec::uniform_rank(4, 5, Field::Complex, GenKind::GenericRank, 2, 99);
  const CplxEnsemble a = generate_complex(spec);
  const CplxEnsemble b = generate_complex(spec);
  for (int j = 0; j < a.size(); ++j) {
    // Bit-identical, not merely close.
    REQUIRE((a.matrix(j).array() == b.matrix(j).array()).all());
  }
  GenSpec other = spec;
  other.seed = 100;
  const CplxEnsemble c = generate_complex(other);
  bool any_different = false;
  for (int j = 0; j < a.size(); ++j)
    any_different = any_different || ((a.matrix(j) - c.matrix(j)).cwiseAbs().maxCoeff() > 1e-6);
  CHECK(any_different);
}

TEST_CASE("gen: rank and projector invariants over random specs") {
  CounterRng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    GenSpec spec;
    spec.d = 2 + static_cast<int>(rng.next_below(4));
    spec.n = 1 + static_cast<int>(rng.next_below(4));
    spec.field = trial % 2 == 0 ? Field::Real : Field::Complex;
    const int kind_pick = static_cast<int>(rng.next_below(4));
    spec.kind = static_cast<GenKind>(kind_pick);
    spec.seed = 5000 + static_cast<std::uint64_t>(trial);
    const int rmax = spec.kind == GenKind::FrameRank1 ? 1
                     : spec.kind == GenKind::Projection ? spec.d - 1
                                                        : spec.d;
    spec.ranks.resize(static_cast<size_t>(spec.n));
    for (auto& r : spec.ranks) r = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(rmax)));

    if (spec.field == Field::Real) {
      const RealEnsemble e = generate_real(spec);
      check_rank_thresholds(e, spec.ranks);
      if (spec.kind == GenKind::Projection) {
        REQUIRE(e.meta().projectors);
        for (int j = 0; j < e.size(); ++j) {
          const RealMat& p = e.matrix(j);
          REQUIRE(((p * p) - p).cwiseAbs().maxCoeff() <= 1e-10);
        }
      }
    } else {
      const CplxEnsemble e = generate_complex(spec);
      check_rank_thresholds(e, spec.ranks);
      if (spec.kind == GenKind::Projection) {
        for (int j = 0; j < e.size(); ++j) {
          const CplxMat& p = e.matrix(j);
          REQUIRE(((p * p) - p).cwiseAbs().maxCoeff() <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("gen: psd kind is positive semidefinite, generic kind mixes signs") {
  int mixed_sign_seen = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t seed = 31337 + static_cast<std::uint64_t>(trial);
    const GenSpec psd = GenSpec::uniform_rank(4, 1, Field::Complex, GenKind::PsdRank, 3, seed);
    const CplxEnsemble pe = generate_complex(psd);
    Eigen::SelfAdjointEigenSolver<CplxMat> es(pe.matrix(0));
    REQUIRE(es.eigenvalues().minCoeff() >= -1e-12);

    const GenSpec gen = GenSpec::uniform_rank(4, 1, Field::Complex, GenKind::GenericRank, 3, seed);
    const CplxEnsemble ge = generate_complex(gen);
    Eigen::SelfAdjointEigenSolver<CplxMat> es2(ge.matrix(0));
    if (es2.eigenvalues().minCoeff() < -1e-8 && es2.eigenvalues().maxCoeff() > 1e-8)
      ++mixed_sign_seen;
  }
  // Signs are Rademacher-mixed; all-one-sign rank-3 draws are rare.
  CHECK(mixed_sign_seen >= 60);
}

TEST_CASE("gen: frame kind gives PSD rank-one matrices") {
  const GenSpec spec = GenSpec::uniform_rank(2, 3, Field::Real, GenKind::FrameRank1, 1, 7);
  const RealEnsemble e = generate_real(spec);
  CHECK(e.size() == 3);
  for (int j = 0; j < 3; ++j) {
    Eigen::SelfAdjointEigenSolver<RealMat> es(e.matrix(j));
    REQUIRE(es.eigenvalues().minCoeff() >= -1e-12);
    const Eigen::VectorXd sv = normalized_singular_values(e.matrix(j));
    REQUIRE(sv[0] > 1e-8);
    REQUIRE(sv[1] < 1e-10);
  }
}

TEST_CASE("gen: projection of full dimension is rejected") {
  GenSpec spec = GenSpec::uniform_rank(3, 2, Field::Complex, GenKind::Projection, 3, 1);
  CHECK_THROWS_AS(generate(spec), InputError);
  spec.ranks = {1, 4};
  CHECK_THROWS_AS(generate(spec), InputError);
  spec.ranks = {1};
  CHECK_THROWS_AS(generate(spec), InputError);
}

TEST_CASE("builtin: the explicit minimal complex ensemble") {
  const CplxEnsemble e = mc2_ensemble();
  REQUIRE(e.size() == 3);
  REQUIRE(e.dim() == 2);
  CplxMat a3(2, 2);
  a3 << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
  CHECK((e.matrix(2) - a3).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(e.matrix(1)(0, 1) == Complex(-2, -1));
  CHECK(e.matrix(1)(1, 0) == Complex(-2, 1));
  for (int j = 0; j < 3; ++j)
    CHECK((e.matrix(j) - CplxMat(e.matrix(j).adjoint())).cwiseAbs().maxCoeff() ==
          doctest::Approx(0.0));
}

TEST_CASE("builtin: squaring pair realizes complex multiplication") {
  const RealEnsemble e = squaring_pair_ensemble();
  RealVec x(2);
  x << 1, 0;
  Measurements m = measure(e, x);
  CHECK(m[0] == doctest::Approx(1.0));
  CHECK(m[1] == doctest::Approx(0.0));
  x << 3, 4;
  m = measure(e, x);
  CHECK(m[0] == doctest::Approx(-7.0));
  CHECK(m[1] == doctest::Approx(24.0));
}
