// Command-line front end: gen, certify, bounds, recover, sweep, bilinear.
// Exit codes: 0 success, 2 input error, 3 inconclusive certification.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gpr/bilinear.hpp"
#include "gpr/bounds.hpp"
#include "gpr/certify.hpp"
#include "gpr/ensembles.hpp"
#include "gpr/json_io.hpp"
#include "gpr/kernels.hpp"
#include "gpr/recover.hpp"
#include "gpr/rng.hpp"
#include "gpr/sweep.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitInconclusive = 3;

gpr::Field parse_field(const std::string& s) {
  if (s == "R" || s == "r") return gpr::Field::Real;
  if (s == "C" || s == "c") return gpr::Field::Complex;
  throw gpr::InputError("field must be R or C");
}

std::vector<int> parse_rank_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw gpr::InputError("--ranks: empty list");
  return out;
}

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << std::endl;
  } else {
    std::ofstream out(out_path);
    if (!out) throw gpr::InputError("cannot write " + out_path);
    out << doc.dump(2) << '\n';
  }
}

struct GenArgs {
  int d = 2, n = 1;
  std::string field = "R", kind = "generic_rank", ranks;
  int rank = 0;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  gpr::GenSpec spec;
  spec.d = a.d;
  spec.n = a.n;
  spec.field = parse_field(a.field);
  spec.kind = gpr::gen_kind_from_string(a.kind);
  spec.seed = a.seed;
  if (!a.ranks.empty()) {
    spec.ranks = parse_rank_list(a.ranks);
  } else if (a.rank > 0) {
    spec.ranks.assign(static_cast<size_t>(a.n), a.rank);
  } else {
    // Sensible defaults per kind: rank-one frames and projections start
    // at rank 1, the dense kinds at full rank.
    const int def = (spec.kind == gpr::GenKind::GenericRank ||
                     spec.kind == gpr::GenKind::PsdRank)
                        ? a.d
                        : 1;
    spec.ranks.assign(static_cast<size_t>(a.n), def);
  }
  const gpr::AnyEnsemble e = gpr::generate(spec);
  if (a.out.empty()) {
    std::cout << gpr::ensemble_to_json(e).dump(2) << std::endl;
  } else {
    gpr::write_ensemble_file(a.out, e);
  }
  return kExitOk;
}

struct CertifyArgs {
  std::string ensemble, builtin;
  int restarts = 64, samples = 512;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  bool no_bounds_layer = false;
  std::string out;
};

gpr::AnyEnsemble load_builtin(const std::string& name) {
  if (name == "mc2") return gpr::mc2_ensemble();
  if (name == "squaring") return gpr::squaring_pair_ensemble();
  throw gpr::InputError("unknown builtin ensemble: " + name + " (expected mc2 or squaring)");
}

int cmd_certify(const CertifyArgs& a) {
  if (a.ensemble.empty() == a.builtin.empty())
    throw gpr::InputError("certify: pass exactly one of --ensemble or --builtin");
  const gpr::AnyEnsemble e =
      a.builtin.empty() ? gpr::read_ensemble_file(a.ensemble) : load_builtin(a.builtin);
  gpr::CertifyConfig cfg;
  cfg.restarts = a.restarts;
  cfg.sphere_samples = a.samples;
  cfg.seed = a.seed;
  cfg.witness_tol = a.tol;
  cfg.use_bounds_layer = !a.no_bounds_layer;
  const gpr::AnyCertificate cert = gpr::certify_pr_any(e, cfg);
  emit(gpr::certificate_to_json(cert, cfg), a.out);
  const gpr::Verdict verdict = std::visit([](const auto& c) { return c.verdict; }, cert);
  return verdict == gpr::Verdict::Inconclusive ? kExitInconclusive : kExitOk;
}

struct BoundsArgs {
  int d = 0, dmax = 0;
  std::string field = "C";
  bool table = false;
  std::string out;
};

int cmd_bounds(const BoundsArgs& a) {
  if (a.table) {
    if (a.dmax < 2) throw gpr::InputError("bounds --table: need --dmax >= 2");
    std::ostringstream csv;
    csv << "d,field,lower,upper,exact,provenance\n";
    for (int d = 2; d <= a.dmax; ++d) {
      for (const gpr::Field f : {gpr::Field::Real, gpr::Field::Complex}) {
        const gpr::BoundsReport rep = gpr::measurement_bounds(f, d);
        csv << d << ',' << to_string(f) << ',';
        if (rep.lower) csv << *rep.lower;
        csv << ',' << rep.upper << ',';
        if (rep.exact) csv << *rep.exact;
        csv << ",\"lower: " << rep.provenance.lower << "; upper: " << rep.provenance.upper;
        if (rep.exact) csv << "; exact: " << rep.provenance.exact;
        csv << "\"\n";
      }
    }
    if (a.out.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream out(a.out);
      if (!out) throw gpr::InputError("cannot write " + a.out);
      out << csv.str();
    }
    return kExitOk;
  }
  if (a.d < 2) throw gpr::InputError("bounds: need --d >= 2 (or --table --dmax D)");
  emit(gpr::bounds_report_to_json(gpr::measurement_bounds(parse_field(a.field), a.d)), a.out);
  return kExitOk;
}

struct RecoverArgs {
  std::string ensemble, b;
  double noise = 0.0;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_recover(const RecoverArgs& a) {
  if (a.ensemble.empty() || a.b.empty())
    throw gpr::InputError("recover: need --ensemble and --b");
  const gpr::AnyEnsemble e = gpr::read_ensemble_file(a.ensemble);
  gpr::Measurements b = gpr::read_measurements_file(a.b);
  if (b.size() != gpr::size_of_ensemble(e))
    throw gpr::InputError("recover: measurement count does not match the ensemble");
  if (a.noise > 0.0) {
    gpr::CounterRng rng = gpr::CounterRng::substream(a.seed, 0x2013e);
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] += a.noise * rng.next_gaussian();
  }
  gpr::RecoveryConfig cfg;
  cfg.seed = a.seed;
  const gpr::AnyRecoveryReport rep = gpr::recover_any(e, b, cfg);
  json doc = gpr::recovery_report_to_json(rep);

  // Cheap exact-layer check: deterministic warning when the ensemble is
  // certifiably not phase retrievable, so users know the preimage orbit
  // may not be unique.
  gpr::CertifyConfig ccfg;
  ccfg.restarts = 1;
  ccfg.sphere_samples = 1;
  const gpr::AnyCertificate cert = gpr::certify_pr_any(e, ccfg);
  const gpr::Verdict verdict = std::visit([](const auto& c) { return c.verdict; }, cert);
  doc["non_unique_warning"] = verdict == gpr::Verdict::CertifiedNotPR;
  if (a.noise > 0.0) doc["noise_sigma"] = a.noise;
  emit(doc, a.out);
  return kExitOk;
}

struct SweepArgs {
  int dmin = 2, dmax = 2, nmin = 1, nmax = 1, trials = 1, restarts = 64, samples = 512;
  std::string field = "R", kind = "generic_rank", ranks_policy = "fixed";
  int rank = 0;
  std::uint64_t seed = 1;
  int threads = 1;
  bool timing = false;
  std::string out;
};

int cmd_sweep(const SweepArgs& a) {
  gpr::SweepSpec spec;
  spec.d_min = a.dmin;
  spec.d_max = a.dmax;
  spec.n_min = a.nmin;
  spec.n_max = a.nmax;
  spec.field = parse_field(a.field);
  spec.kind = gpr::gen_kind_from_string(a.kind);
  if (a.ranks_policy == "fixed")
    spec.ranks_policy = gpr::RanksPolicy::Fixed;
  else if (a.ranks_policy == "random")
    spec.ranks_policy = gpr::RanksPolicy::RandomInRange;
  else
    throw gpr::InputError("--ranks-policy must be fixed or random");
  spec.fixed_rank = a.rank > 0 ? a.rank : 1;
  spec.trials = a.trials;
  spec.restarts = a.restarts;
  spec.sphere_samples = a.samples;
  spec.seed = a.seed;
  spec.threads = a.threads;
  spec.timing = a.timing;
  if (a.out.empty()) {
    gpr::run_sweep(spec, std::cout);
  } else {
    std::ofstream out(a.out);
    if (!out) throw gpr::InputError("cannot write " + a.out);
    gpr::run_sweep(spec, out);
  }
  return kExitOk;
}

struct BilinearArgs {
  std::string algebra;
  int p = 0, q = 0, n = 0, rank = 1;
  int restarts = 64;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_bilinear(const BilinearArgs& a) {
  gpr::BilinearForm form;
  if (!a.algebra.empty()) {
    form = gpr::normed_form(gpr::algebra_from_string(a.algebra));
  } else {
    if (a.p < 1 || a.q < 1 || a.n < 1)
      throw gpr::InputError("bilinear: need --algebra or all of --p --q --n");
    form = gpr::generic_bilinear(a.p, a.q, a.n,
                                 std::vector<int>(static_cast<size_t>(a.n), a.rank), a.seed);
  }
  const gpr::NonsingularityResult res =
      gpr::bilinear_nonsingularity(form.mats, a.restarts, a.seed);
  json doc;
  doc["size"] = {{"p", form.p}, {"q", form.q}, {"n", form.count()}};
  json mats = json::array();
  for (const auto& m : form.mats) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      rows.push_back(std::move(row));
    }
    mats.push_back(std::move(rows));
  }
  doc["matrices"] = std::move(mats);
  doc["verdict"] = res.singular ? "singular" : "likely_nonsingular";
  doc["min_residual"] = res.min_residual;
  doc["restarts"] = res.restarts;
  if (res.singular) {
    doc["witness"] = {{"x", gpr::signal_to_json(Eigen::VectorXd(res.x))},
                      {"y", gpr::signal_to_json(Eigen::VectorXd(res.y))}};
  }
  emit(doc, a.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized phase retrieval toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gpr 1.0");
  app.add_flag_callback(
      "--kernel-lane",
      [] { std::cout << gpr::kernels::lane_name(gpr::kernels::active_lane()) << std::endl; },
      "Print the active arithmetic kernel lane and exit");

  GenArgs gen;
  auto* cgen = app.add_subcommand("gen", "Generate a measurement ensemble");
  cgen->add_option("--d", gen.d, "Dimension")->required();
  cgen->add_option("--n", gen.n, "Number of matrices")->required();
  cgen->add_option("--field", gen.field, "R or C");
  cgen->add_option("--kind", gen.kind, "generic_rank|psd_rank|projection|frame_rank1");
  cgen->add_option("--ranks", gen.ranks, "Comma-separated ranks r1,r2,...");
  cgen->add_option("--rank", gen.rank, "Uniform rank for all matrices");
  cgen->add_option("--seed", gen.seed, "Seed");
  cgen->add_option("--out", gen.out, "Output path (stdout if omitted)");

  CertifyArgs certify;
  auto* ccert = app.add_subcommand("certify", "Certify the phase retrieval property");
  ccert->add_option("--ensemble", certify.ensemble, "Ensemble JSON path");
  ccert->add_option("--builtin", certify.builtin, "mc2 | squaring");
  ccert->add_option("--restarts", certify.restarts, "Search restarts");
  ccert->add_option("--samples", certify.samples, "Jacobian evidence samples");
  ccert->add_option("--seed", certify.seed, "Seed");
  ccert->add_option("--tol", certify.tol, "Witness verification tolerance");
  ccert->add_flag("--no-bounds-layer", certify.no_bounds_layer,
                  "Skip the measurement-count rejection layer");
  ccert->add_option("--out", certify.out, "Output path");

  BoundsArgs bounds;
  auto* cbounds = app.add_subcommand("bounds", "Minimal measurement number bounds");
  cbounds->add_option("--d", bounds.d, "Dimension");
  cbounds->add_option("--field", bounds.field, "R or C");
  cbounds->add_flag("--table", bounds.table, "Emit a CSV table for d = 2..dmax");
  cbounds->add_option("--dmax", bounds.dmax, "Largest dimension for --table");
  cbounds->add_option("--out", bounds.out, "Output path");

  RecoverArgs recover;
  auto* crec = app.add_subcommand("recover", "Reconstruct a signal from measurements");
  crec->add_option("--ensemble", recover.ensemble, "Ensemble JSON path")->required();
  crec->add_option("--b", recover.b, "Measurement JSON path")->required();
  crec->add_option("--noise", recover.noise, "Additive Gaussian noise sigma");
  crec->add_option("--seed", recover.seed, "Seed");
  crec->add_option("--out", recover.out, "Output path");

  SweepArgs sweep;
  auto* csweep = app.add_subcommand("sweep", "Monte-Carlo certification sweep");
  csweep->add_option("--dmin", sweep.dmin, "Smallest dimension")->required();
  csweep->add_option("--dmax", sweep.dmax, "Largest dimension")->required();
  csweep->add_option("--nmin", sweep.nmin, "Smallest measurement count")->required();
  csweep->add_option("--nmax", sweep.nmax, "Largest measurement count")->required();
  csweep->add_option("--trials", sweep.trials, "Trials per (d, N) cell");
  csweep->add_option("--field", sweep.field, "R or C");
  csweep->add_option("--kind", sweep.kind, "Ensemble kind");
  csweep->add_option("--ranks-policy", sweep.ranks_policy, "fixed | random");
  csweep->add_option("--rank", sweep.rank, "Rank for the fixed policy");
  csweep->add_option("--restarts", sweep.restarts, "Search restarts per trial");
  csweep->add_option("--samples", sweep.samples, "Jacobian samples per trial");
  csweep->add_option("--seed", sweep.seed, "Seed");
  csweep->add_option("--threads", sweep.threads, "Worker threads");
  csweep->add_flag("--timing", sweep.timing, "Append a wall_ms column (breaks byte stability)");
  csweep->add_option("--out", sweep.out, "Output CSV path");

  BilinearArgs bilinear;
  auto* cbil = app.add_subcommand("bilinear", "Nonsingular / normed bilinear forms");
  cbil->add_option("--algebra", bilinear.algebra, "complex | quaternion | octonion");
  cbil->add_option("--p", bilinear.p, "Rows");
  cbil->add_option("--q", bilinear.q, "Columns");
  cbil->add_option("--n", bilinear.n, "Number of matrices");
  cbil->add_option("--rank", bilinear.rank, "Uniform rank");
  cbil->add_option("--restarts", bilinear.restarts, "Search restarts");
  cbil->add_option("--seed", bilinear.seed, "Seed");
  cbil->add_option("--out", bilinear.out, "Output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cgen->parsed()) return cmd_gen(gen);
    if (ccert->parsed()) return cmd_certify(certify);
    if (cbounds->parsed()) return cmd_bounds(bounds);
    if (crec->parsed()) return cmd_recover(recover);
    if (csweep->parsed()) return cmd_sweep(sweep);
    if (cbil->parsed()) return cmd_bilinear(bilinear);
  } catch (const gpr::InputError& err) {
    std::cerr << "error: " << err.what() << std::endl;
    return kExitInputError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << std::endl;
    return kExitInputError;
  }
  return kExitOk;
}
