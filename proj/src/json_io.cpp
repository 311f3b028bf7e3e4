#include "gpr/json_io.hpp"

#include <cmath>
#include <fstream>

namespace gpr {

using nlohmann::json;

namespace {

json real_matrix_to_json(const RealMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json cplx_matrix_to_json(const CplxMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError("expected a number at " + where);
  return v.get<double>();
}

json meta_to_json(const EnsembleMeta& meta) {
  json out = json::object();
  if (meta.ranks) out["ranks"] = *meta.ranks;
  out["projectors"] = meta.projectors;
  return out;
}

EnsembleMeta meta_from_json(const json& doc) {
  EnsembleMeta meta;
  if (!doc.contains("meta")) return meta;
  const json& m = doc.at("meta");
  if (m.contains("ranks")) meta.ranks = m.at("ranks").get<std::vector<int>>();
  if (m.contains("projectors")) meta.projectors = m.at("projectors").get<bool>();
  return meta;
}

json optional_double(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

}  // namespace

json ensemble_to_json(const AnyEnsemble& e) {
  json doc;
  doc["field"] = to_string(field_of_ensemble(e));
  doc["d"] = dim_of_ensemble(e);
  json mats = json::array();
  std::visit(
      [&](const auto& ens) {
        for (const auto& a : ens.matrices()) {
          if constexpr (std::decay_t<decltype(ens)>::field() == Field::Real)
            mats.push_back(real_matrix_to_json(a.mat()));
          else
            mats.push_back(cplx_matrix_to_json(a.mat()));
        }
        doc["meta"] = meta_to_json(ens.meta());
      },
      e);
  doc["matrices"] = std::move(mats);
  return doc;
}

AnyEnsemble ensemble_from_json(const json& doc) {
  if (!doc.contains("field") || !doc.contains("d") || !doc.contains("matrices"))
    throw InputError("ensemble document needs 'field', 'd' and 'matrices'");
  const std::string field = doc.at("field").get<std::string>();
  if (field != "R" && field != "C") throw InputError("ensemble field must be \"R\" or \"C\"");
  const Eigen::Index d = doc.at("d").get<Eigen::Index>();
  const json& mats = doc.at("matrices");
  if (!mats.is_array() || mats.empty()) throw InputError("'matrices' must be a nonempty array");

  auto parse_matrix = [&](const json& rows, auto scalar_tag) {
    using S = decltype(scalar_tag);
    Mat<S> m(d, d);
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != d)
      throw InputError("matrix must have d rows");
    for (Eigen::Index i = 0; i < d; ++i) {
      const json& row = rows.at(static_cast<size_t>(i));
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
        throw InputError("matrix row must have d entries");
      for (Eigen::Index j = 0; j < d; ++j) {
        const json& v = row.at(static_cast<size_t>(j));
        const std::string where =
            "matrix entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
        if constexpr (field_of<S> == Field::Real) {
          m(i, j) = number_at(v, where);
        } else {
          if (!v.is_array() || v.size() != 2)
            throw InputError("complex " + where + " must be [re, im]");
          m(i, j) = Complex(number_at(v.at(0), where), number_at(v.at(1), where));
        }
      }
    }
    return m;
  };

  const EnsembleMeta meta = meta_from_json(doc);
  if (field == "R") {
    std::vector<RealHermitian> out;
    out.reserve(mats.size());
    for (const auto& m : mats) out.emplace_back(parse_matrix(m, double{}));
    return RealEnsemble(std::move(out), meta);
  }
  std::vector<CplxHermitian> out;
  out.reserve(mats.size());
  for (const auto& m : mats) out.emplace_back(parse_matrix(m, Complex{}));
  return CplxEnsemble(std::move(out), meta);
}

namespace {

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& err) {
    throw InputError("malformed JSON in " + path + ": " + err.what());
  }
  return doc;
}

void write_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << doc.dump(2) << '\n';
}

}  // namespace

AnyEnsemble read_ensemble_file(const std::string& path) {
  try {
    return ensemble_from_json(parse_file(path));
  } catch (const json::exception& err) {
    throw InputError("bad ensemble document " + path + ": " + err.what());
  }
}

void write_ensemble_file(const std::string& path, const AnyEnsemble& e) {
  write_file(path, ensemble_to_json(e));
}

json measurements_to_json(const Measurements& b) {
  json values = json::array();
  for (Eigen::Index i = 0; i < b.size(); ++i) values.push_back(b[i]);
  return json{{"values", std::move(values)}};
}

Measurements measurements_from_json(const json& doc) {
  const json* values = &doc;
  if (doc.is_object()) {
    if (!doc.contains("values")) throw InputError("measurement document needs 'values'");
    values = &doc.at("values");
  }
  if (!values->is_array()) throw InputError("measurement values must be an array");
  Measurements b(values->size());
  for (size_t i = 0; i < values->size(); ++i)
    b[static_cast<Eigen::Index>(i)] = number_at(values->at(i), "values[" + std::to_string(i) + "]");
  return b;
}

Measurements read_measurements_file(const std::string& path) {
  try {
    return measurements_from_json(parse_file(path));
  } catch (const json::exception& err) {
    throw InputError("bad measurement document " + path + ": " + err.what());
  }
}

void write_measurements_file(const std::string& path, const Measurements& b) {
  write_file(path, measurements_to_json(b));
}

json signal_to_json(const RealVec& x) {
  json out = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) out.push_back(x[i]);
  return out;
}

json signal_to_json(const CplxVec& x) {
  json out = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i)
    out.push_back(json::array({x[i].real(), x[i].imag()}));
  return out;
}

json certificate_to_json(const AnyCertificate& cert, const CertifyConfig& cfg) {
  json doc;
  std::visit(
      [&](const auto& c) {
        doc["verdict"] = to_string(c.verdict);
        doc["decided_by"] = to_string(c.decided_by);
        doc["witness_absent"] = c.witness_absent;
        if (c.witness) {
          doc["witness"] = {{"x", signal_to_json(c.witness->x)},
                            {"y", signal_to_json(c.witness->y)}};
        }
        doc["evidence"] = {{"min_sigma_jacobian", optional_double(c.evidence.min_sigma_jacobian)},
                           {"restarts", c.evidence.restarts},
                           {"collision_best", optional_double(c.evidence.collision_best)}};
        doc["seed"] = c.seed;
      },
      cert);
  doc["config"] = {{"restarts", cfg.restarts},
                   {"sphere_samples", cfg.sphere_samples},
                   {"null_rel_tol", cfg.null_rel_tol},
                   {"collision_tol", cfg.collision_tol},
                   {"witness_tol", cfg.witness_tol},
                   {"jacobian_evidence_tol", cfg.jacobian_evidence_tol},
                   {"use_bounds_layer", cfg.use_bounds_layer}};
  return doc;
}

json bounds_report_to_json(const BoundsReport& rep) {
  json doc;
  doc["d"] = rep.d;
  doc["field"] = to_string(rep.field);
  doc["lower"] = rep.lower ? json(*rep.lower) : json(nullptr);
  doc["upper"] = rep.upper;
  doc["exact"] = rep.exact ? json(*rep.exact) : json(nullptr);
  doc["alpha"] = rep.alpha;
  doc["epsilon_alpha"] = rep.epsilon_alpha;
  doc["delta"] = rep.delta;
  doc["provenance"] = {{"lower", rep.provenance.lower},
                       {"upper", rep.provenance.upper},
                       {"exact", rep.provenance.exact}};
  return doc;
}

json recovery_report_to_json(const AnyRecoveryReport& rep) {
  json doc;
  std::visit(
      [&](const auto& r) {
        doc["estimate"] = signal_to_json(r.estimate);
        doc["residual"] = r.residual;
        doc["lifted_rank_gap"] = r.lifted_rank_gap ? json(*r.lifted_rank_gap) : json(nullptr);
        doc["iterations"] = r.iterations;
        doc["converged"] = r.converged;
      },
      rep);
  return doc;
}

}  // namespace gpr
