#pragma once

#include <json.hpp>

#include <string>

#include "gpr/bounds.hpp"
#include "gpr/certify.hpp"
#include "gpr/recover.hpp"
#include "gpr/types.hpp"

namespace gpr {

// Ensemble document:
//   {"field": "R"|"C", "d": int, "matrices": [...],
//    "meta": {"ranks": [...], "projectors": bool}}
// Matrices are row-major nested arrays; a complex entry is a two-element
// array [re, im], real entries are plain numbers. meta is optional.
nlohmann::json ensemble_to_json(const AnyEnsemble& e);
AnyEnsemble ensemble_from_json(const nlohmann::json& doc);

/// Parse a file; errors mention the offending path.
AnyEnsemble read_ensemble_file(const std::string& path);
void write_ensemble_file(const std::string& path, const AnyEnsemble& e);

// Measurement document: {"values": [..]} (a bare array is accepted too).
nlohmann::json measurements_to_json(const Measurements& b);
Measurements measurements_from_json(const nlohmann::json& doc);
Measurements read_measurements_file(const std::string& path);
void write_measurements_file(const std::string& path, const Measurements& b);

nlohmann::json signal_to_json(const RealVec& x);
nlohmann::json signal_to_json(const CplxVec& x);

nlohmann::json certificate_to_json(const AnyCertificate& cert, const CertifyConfig& cfg);
nlohmann::json bounds_report_to_json(const BoundsReport& rep);
nlohmann::json recovery_report_to_json(const AnyRecoveryReport& rep);

}  // namespace gpr
