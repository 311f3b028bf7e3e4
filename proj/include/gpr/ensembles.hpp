#pragma once

#include <cstdint>
#include <string>

#include "gpr/types.hpp"

namespace gpr {

enum class GenKind { GenericRank, PsdRank, Projection, FrameRank1 };

const char* to_string(GenKind kind);
GenKind gen_kind_from_string(const std::string& name);

/// Seeded generator request. Rank bounds: 1 <= r_j <= d for the rank
/// kinds, 1 <= r_j <= d-1 for projections (the identity projector is
/// rejected), r_j = 1 for rank-one frames.
struct GenSpec {
  int d = 2;
  int n = 1;
  Field field = Field::Real;
  GenKind kind = GenKind::GenericRank;
  std::vector<int> ranks;  // length n
  std::uint64_t seed = 1;

  static GenSpec uniform_rank(int d, int n, Field field, GenKind kind, int rank,
                              std::uint64_t seed);
};

/// Draw the ensemble described by `spec`. Deterministic in the seed;
/// matrix j only consumes substream (seed, j), so the result does not
/// depend on generation order. Rank kinds are rescaled to unit Frobenius
/// norm; projectors are left untouched so A*A = A survives.
AnyEnsemble generate(const GenSpec& spec);

RealEnsemble generate_real(const GenSpec& spec);
CplxEnsemble generate_complex(const GenSpec& spec);

/// The explicit three-matrix complex ensemble in dimension 2 that meets
/// the minimal measurement count m_C(2) = 3.
CplxEnsemble mc2_ensemble();

/// Real d=2 pair (diag(1,-1), [[0,1],[1,0]]); its measurement map is
/// (a,b) |-> (a^2 - b^2, 2ab), the squaring map of complex numbers.
RealEnsemble squaring_pair_ensemble();

/// squaring_pair_ensemble with the identity prepended; phase retrievable.
RealEnsemble squaring_triple_ensemble();

}  // namespace gpr
