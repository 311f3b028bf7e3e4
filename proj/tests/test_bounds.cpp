#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "gpr/bounds.hpp"

using namespace gpr;

TEST_CASE("binary ones") {
  CHECK(binary_ones(6) == 2);
  CHECK(binary_ones(0) == 0);
  for (int k = 0; k <= 62; ++k) CHECK(binary_ones(1ull << k) == 1);
}

TEST_CASE("binomial parity: explicit values and the Pascal oracle") {
  CHECK(binom_parity(4, 2) == Parity::Even);
  CHECK(binom_parity(3, 1) == Parity::Odd);
  CHECK_THROWS_AS(binom_parity(3, 4), InputError);

  // Independent oracle: Pascal's triangle mod 2, row by row.
  std::vector<std::vector<int>> pascal(65);
  for (int n = 0; n <= 64; ++n) {
    pascal[static_cast<size_t>(n)].assign(static_cast<size_t>(n) + 1, 1);
    for (int k = 1; k < n; ++k)
      pascal[static_cast<size_t>(n)][static_cast<size_t>(k)] =
          (pascal[static_cast<size_t>(n - 1)][static_cast<size_t>(k - 1)] +
           pascal[static_cast<size_t>(n - 1)][static_cast<size_t>(k)]) %
          2;
    for (int k = 0; k <= n; ++k) {
      const Parity expected =
          pascal[static_cast<size_t>(n)][static_cast<size_t>(k)] == 1 ? Parity::Odd
                                                                      : Parity::Even;
      REQUIRE(binom_parity(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)) ==
              expected);
    }
  }
}

TEST_CASE("parity condition: explicit sizes") {
  CHECK(stiefel_hopf_pass(2, 2, 2));
  CHECK_FALSE(stiefel_hopf_pass(3, 3, 3));
  CHECK(stiefel_hopf_pass(4, 4, 4));
}

TEST_CASE("parity condition: the two formulations agree exhaustively") {
  for (int p = 1; p <= 32; ++p)
    for (int q = 1; q <= 32; ++q)
      for (int n = std::max(p, q); n <= p + q + 4; ++n)
        REQUIRE(stiefel_hopf_pass(p, q, n) == stiefel_hopf_pass_rowform(p, q, n));
}

TEST_CASE("sharp lower bound") {
  CHECK(sharp_lower_bound(2, 2) == 2);
  CHECK(sharp_lower_bound(3, 3) == 4);
  CHECK(sharp_lower_bound(4, 4) == 4);
  CHECK(sharp_lower_bound(8, 8) == 8);
  // Never beyond p+q-1, where the condition is vacuous.
  for (int p = 1; p <= 16; ++p)
    for (int q = 1; q <= 16; ++q) REQUIRE(sharp_lower_bound(p, q) <= p + q - 1);
}

TEST_CASE("real bounds: exact families and formula cases") {
  CHECK(m_real_bounds(5).exact == 9);
  CHECK(m_real_bounds(4).exact == 6);
  CHECK(m_real_bounds(3).exact == 5);
  CHECK_FALSE(m_real_bounds(2).exact.has_value());
  CHECK(m_real_bounds(2).upper == 2);

  const BoundsReport d7 = m_real_bounds(7);
  CHECK(d7.lower == 8);
  CHECK(d7.upper == 13);
  CHECK_FALSE(d7.exact.has_value());

  for (int k = 1; k <= 8; ++k) {
    const int d1 = (1 << k) + 1;
    const int d2 = (1 << k) + 2;
    CHECK(m_real_bounds(d1).exact == 2 * d1 - 1);
    CHECK(m_real_bounds(d2).exact == 2 * d2 - 2);
  }
  CHECK_THROWS_AS(m_real_bounds(1), InputError);
}

TEST_CASE("complex bounds: exact families and the d<=4 gaps") {
  CHECK(m_complex_bounds(2).exact == 3);
  CHECK(m_complex_bounds(9).exact == 32);
  CHECK(m_complex_bounds(29).exact == 110);
  CHECK(m_complex_bounds(13).exact == 47);

  CHECK_FALSE(m_complex_bounds(3).lower.has_value());
  CHECK_FALSE(m_complex_bounds(4).lower.has_value());
  CHECK(m_complex_bounds(3).upper == 8);
  CHECK(m_complex_bounds(4).upper == 10);

  // The quoted families, enumerated directly from their binary patterns.
  for (int k = 2; k <= 7; ++k) {
    const int d1 = (1 << k) + 1;
    CHECK(m_complex_bounds(d1).exact == 4 * d1 - 4);
    const int d2 = (1 << k) + 2;
    CHECK(m_complex_bounds(d2).exact == 4 * d2 - 6);
    for (int j = 2; j < k; ++j) {
      const int d3 = (1 << k) + (1 << j) + 1;
      CHECK(m_complex_bounds(d3).exact == 4 * d3 - 5);
      for (int l = 2; l < j; ++l) {
        const int d4 = (1 << k) + (1 << j) + (1 << l) + 1;
        CHECK(m_complex_bounds(d4).exact == 4 * d4 - 6);
      }
    }
  }
}

TEST_CASE("bounds ordering invariant for 2 <= d <= 512") {
  for (int d = 2; d <= 512; ++d) {
    for (const Field f : {Field::Real, Field::Complex}) {
      const BoundsReport rep = measurement_bounds(f, d);
      if (rep.lower) REQUIRE(*rep.lower <= rep.upper);
      if (rep.exact) {
        REQUIRE(rep.lower.has_value());
        REQUIRE(*rep.lower <= *rep.exact);
        REQUIRE(*rep.exact <= rep.upper);
      }
    }
  }
}

TEST_CASE("matrix recovery feasibility") {
  CHECK(matrix_recovery_feasible(4, 1, 6, Field::Complex).impossible);
  CHECK_FALSE(matrix_recovery_feasible(4, 1, 7, Field::Complex).impossible);
  const auto real_case = matrix_recovery_feasible(4, 1, 11, Field::Real);
  CHECK_FALSE(real_case.impossible);
  CHECK(real_case.real_caveat);
  CHECK_THROWS_AS(matrix_recovery_feasible(4, 5, 6), InputError);
}
