#include "gpr/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>
#include <vector>

#include "gpr/certify.hpp"
#include "gpr/rng.hpp"

namespace gpr {

namespace {

struct TrialResult {
  int d = 0, n = 0, trial = 0;
  Verdict verdict = Verdict::Inconclusive;
  DecidedBy decided_by = DecidedBy::Randomized;
  double min_sigma_jacobian = std::numeric_limits<double>::quiet_NaN();
  double collision_best = std::numeric_limits<double>::quiet_NaN();
  double wall_ms = 0.0;
};

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

int max_rank(const SweepSpec& spec, int d) {
  switch (spec.kind) {
    case GenKind::FrameRank1: return 1;
    case GenKind::Projection: return std::max(1, d - 1);
    default: return d;
  }
}

TrialResult run_trial(const SweepSpec& spec, int d, int n, int trial,
                      std::uint64_t cell_index) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t trial_key =
      CounterRng::mix64(spec.seed ^ CounterRng::mix64(cell_index * 1000003ull +
                                                      static_cast<std::uint64_t>(trial)));
  GenSpec gen;
  gen.d = d;
  gen.n = n;
  gen.field = spec.field;
  gen.kind = spec.kind;
  gen.seed = trial_key;
  const int rmax = max_rank(spec, d);
  gen.ranks.resize(static_cast<size_t>(n));
  CounterRng rng = CounterRng::substream(trial_key, 0xa11c);
  for (int j = 0; j < n; ++j) {
    if (spec.ranks_policy == RanksPolicy::Fixed)
      gen.ranks[static_cast<size_t>(j)] = std::min(spec.fixed_rank, rmax);
    else
      gen.ranks[static_cast<size_t>(j)] = 1 + static_cast<int>(rng.next_below(
                                                  static_cast<std::uint64_t>(rmax)));
  }

  CertifyConfig cfg;
  cfg.restarts = spec.restarts;
  cfg.sphere_samples = spec.sphere_samples;
  cfg.seed = CounterRng::mix64(trial_key ^ 0xce27);

  const AnyEnsemble ensemble = generate(gen);
  const AnyCertificate cert = certify_pr_any(ensemble, cfg);

  TrialResult res;
  res.d = d;
  res.n = n;
  res.trial = trial;
  std::visit(
      [&](const auto& c) {
        res.verdict = c.verdict;
        res.decided_by = c.decided_by;
        res.min_sigma_jacobian = c.evidence.min_sigma_jacobian;
        res.collision_best = c.evidence.collision_best;
      },
      cert);
  res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                          start)
                    .count();
  return res;
}

}  // namespace

void run_sweep(const SweepSpec& spec, std::ostream& out) {
  if (spec.d_min < 1 || spec.d_max < spec.d_min || spec.n_min < 1 || spec.n_max < spec.n_min)
    throw InputError("sweep: empty (d, N) range");
  if (spec.trials < 1) throw InputError("sweep: trials must be >= 1");

  struct Task {
    int d, n, trial;
    std::uint64_t cell;
  };
  std::vector<Task> tasks;
  std::uint64_t cell = 0;
  for (int d = spec.d_min; d <= spec.d_max; ++d)
    for (int n = spec.n_min; n <= spec.n_max; ++n, ++cell)
      for (int t = 0; t < spec.trials; ++t) tasks.push_back({d, n, t, cell});

  std::vector<TrialResult> results(tasks.size());
  const int threads = std::max(1, spec.threads);
  if (threads == 1) {
    for (size_t i = 0; i < tasks.size(); ++i)
      results[i] = run_trial(spec, tasks[i].d, tasks[i].n, tasks[i].trial, tasks[i].cell);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
        results[i] = run_trial(spec, tasks[i].d, tasks[i].n, tasks[i].trial, tasks[i].cell);
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  out << "# " << kSweepSchemaVersion << "\n";
  out << "row_type,d,n,trial,verdict,decided_by,min_sigma_jacobian,collision_best,"
         "count_certified_pr,count_likely_pr,count_certified_not_pr,count_inconclusive";
  if (spec.timing) out << ",wall_ms";
  out << "\n";

  size_t i = 0;
  while (i < results.size()) {
    const int d = results[i].d, n = results[i].n;
    int counts[4] = {0, 0, 0, 0};
    size_t j = i;
    for (; j < results.size() && results[j].d == d && results[j].n == n; ++j) {
      const TrialResult& r = results[j];
      counts[static_cast<int>(r.verdict)]++;
      out << "trial," << d << ',' << n << ',' << r.trial << ',' << to_string(r.verdict) << ','
          << to_string(r.decided_by) << ',' << format_double(r.min_sigma_jacobian) << ','
          << format_double(r.collision_best) << ",,,,";
      if (spec.timing) out << ',' << format_double(r.wall_ms);
      out << "\n";
    }
    out << "summary," << d << ',' << n << ",,,,,," << counts[static_cast<int>(Verdict::CertifiedPR)]
        << ',' << counts[static_cast<int>(Verdict::LikelyPR)] << ','
        << counts[static_cast<int>(Verdict::CertifiedNotPR)] << ','
        << counts[static_cast<int>(Verdict::Inconclusive)];
    if (spec.timing) out << ',';
    out << "\n";
    i = j;
  }
}

}  // namespace gpr
