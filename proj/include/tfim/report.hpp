#pragma once

#include <string>

#include <json.hpp>

#include "tfim/avn.hpp"
#include "tfim/measure.hpp"
#include "tfim/model.hpp"
#include "tfim/search.hpp"

namespace tfim {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Machine-readable run record: version, config echo, command payload and
/// wall-clock duration. JSON field names are stable; doubles serialize
/// with full round-trip precision.
struct Report {
  std::string command;
  nlohmann::json config;
  nlohmann::json payload;
  double duration_seconds = 0.0;
};

nlohmann::json to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

std::string serialize(const Report& report, const std::string& format);  // json|csv|text

// Payload builders shared by the CLI and tests.
nlohmann::json spectrum_payload(const SpectrumResult& spectrum);
nlohmann::json constraint_set_payload(const ConstraintSet& set);
nlohmann::json certificate_payload(const ConstraintSet& set, const AvnCertificate& cert);
nlohmann::json inventory_payload(const StabilizerInventory& inventory);
nlohmann::json negative_scan_payload(const NegativeScanReport& scan);
nlohmann::json experiment_payload(const ConstraintSet& set, const ExperimentStats& stats);

}  // namespace tfim
