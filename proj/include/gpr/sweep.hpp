#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "gpr/ensembles.hpp"

namespace gpr {

enum class RanksPolicy { Fixed, RandomInRange };

/// Monte-Carlo grid over (d, N) cells: `trials` ensembles per cell, each
/// certified; per-trial rows plus one summary row per cell.
struct SweepSpec {
  int d_min = 2, d_max = 2;
  int n_min = 1, n_max = 1;
  Field field = Field::Real;
  GenKind kind = GenKind::GenericRank;
  RanksPolicy ranks_policy = RanksPolicy::Fixed;
  int fixed_rank = 1;
  int trials = 1;
  int restarts = 64;
  int sphere_samples = 512;
  std::uint64_t seed = 1;
  int threads = 1;
  bool timing = false;  // wall_ms column; off by default so output is byte-stable
};

inline constexpr const char* kSweepSchemaVersion = "gpr-sweep-v1";

/// Writes the CSV to `out`. Output is byte-identical for identical specs
/// regardless of `threads` (unless timing is enabled).
void run_sweep(const SweepSpec& spec, std::ostream& out);

}  // namespace gpr
