#include "tfim/report.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace tfim {

namespace {

using nlohmann::json;

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json variables_json(const std::vector<LhvVariable>& vars) {
  json out = json::array();
  for (const LhvVariable& v : vars) {
    out.push_back({{"site", v.site}, {"axis", std::string(1, v.axis)}});
  }
  return out;
}

}  // namespace

json to_json(const Report& report) {
  return json{{"artifact_version", kArtifactVersion},
              {"command", report.command},
              {"config", report.config},
              {"payload", report.payload},
              {"duration_seconds", report.duration_seconds}};
}

Report report_from_json(const json& j) {
  Report report;
  report.command = j.at("command").get<std::string>();
  report.config = j.at("config");
  report.payload = j.at("payload");
  report.duration_seconds = j.at("duration_seconds").get<double>();
  return report;
}

json spectrum_payload(const SpectrumResult& spectrum) {
  json levels = json::array();
  for (const auto& group : spectrum.levels) {
    levels.push_back({{"energy", spectrum.eigenvalues[static_cast<std::size_t>(group.front())]},
                      {"multiplicity", group.size()},
                      {"indices", group}});
  }
  json low = json::array();
  for (const SpectrumLevel& level : spectrum.low_levels) {
    low.push_back({{"energy", level.energy}, {"multiplicity", level.indices.size()}});
  }
  return json{{"eigenvalues", spectrum.eigenvalues},
              {"degeneracy_tol", spectrum.degeneracy_tol},
              {"levels", levels},
              {"low_levels", low}};
}

json constraint_set_payload(const ConstraintSet& set) {
  json constraints = json::array();
  for (const Constraint& c : set.constraints()) {
    constraints.push_back({{"observable", format_pauli(c.observable)}, {"eigenvalue", c.eigenvalue}});
  }
  return json{{"n", set.n()}, {"constraints", constraints}};
}

json certificate_payload(const ConstraintSet& set, const AvnCertificate& cert) {
  json payload = constraint_set_payload(set);
  payload["quantum"] = {{"tol", cert.quantum.tol},
                        {"residuals", cert.quantum.residuals},
                        {"passed", cert.quantum.passed},
                        {"failing", cert.quantum.failing}};
  payload["variables"] = variables_json(cert.lhv.variables);

  json classical;
  classical["verdict"] = cert.classical.satisfiable ? "SATISFIABLE" : "UNSATISFIABLE";
  if (cert.classical.satisfiable) {
    json assignment = json::array();
    for (std::size_t v = 0; v < cert.classical.assignment.size(); ++v) {
      assignment.push_back({{"site", cert.lhv.variables[v].site},
                            {"axis", std::string(1, cert.lhv.variables[v].axis)},
                            {"value", cert.classical.assignment[v]}});
    }
    classical["assignment"] = assignment;
  } else {
    classical["certificate"] = cert.classical.certificate;
  }
  payload["classical"] = classical;

  payload["parity"] = {{"operator_product", format_pauli(cert.parity.operator_product)},
                       {"proportional_to_identity", cert.parity.proportional_to_identity},
                       {"quantum_sign", cert.parity.quantum_sign},
                       {"eigenvalue_product", cert.parity.eigenvalue_product},
                       {"coefficient_sign_product", cert.parity.coefficient_sign_product},
                       {"support_cancels", cert.parity.support_cancels}};
  payload["avn_holds"] = cert.avn_holds;
  return payload;
}

json inventory_payload(const StabilizerInventory& inventory) {
  json entries = json::array();
  for (const StabilizerEntry& e : inventory.entries) {
    entries.push_back(
        {{"op", format_pauli(e.op)}, {"eigenvalue", e.eigenvalue}, {"residual", e.residual}});
  }
  return json{{"n", inventory.n},
              {"tol", inventory.tol},
              {"scan_scope", "all sign-positive Hermitian Pauli strings"},
              {"candidates_scanned", std::uint64_t{1} << (2 * inventory.n)},
              {"count", inventory.entries.size()},
              {"entries", entries}};
}

json negative_scan_payload(const NegativeScanReport& scan) {
  json payload{{"n", scan.params.n},
               {"field_b", scan.params.field_b},
               {"ground_degenerate", scan.ground_degenerate},
               {"ground_dimension", scan.ground_dimension},
               {"ground_energy", scan.ground_energy}};
  if (!scan.ground_degenerate) {
    payload["inventory"] = inventory_payload(scan.inventory);
    json sets = json::array();
    for (const ConstraintSet& set : scan.avn_sets) {
      sets.push_back(constraint_set_payload(set));
    }
    payload["avn_sets"] = sets;
    payload["avn_set_count"] = scan.avn_sets.size();
  }
  return payload;
}

json experiment_payload(const ConstraintSet& set, const ExperimentStats& stats) {
  json constraints = json::array();
  for (std::size_t j = 0; j < set.size(); ++j) {
    const Constraint& c = set.constraints()[j];
    const ConstraintStats& cs = stats.per_constraint[j];
    constraints.push_back({{"observable", format_pauli(c.observable)},
                           {"eigenvalue", c.eigenvalue},
                           {"matched_fraction", cs.matched_fraction},
                           {"sites", cs.sites},
                           {"site_plus_fraction", cs.site_plus_fraction}});
  }
  return json{{"generator", stats.generator},
              {"seed", stats.seed},
              {"shots", stats.shots},
              {"constraints", constraints}};
}

namespace {

void csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out << cells[i] << (i + 1 < cells.size() ? "," : "\n");
  }
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  const json& p = report.payload;
  if (report.command == "spectrum" && p.contains("levels")) {
    csv_row(out, {"level", "energy", "multiplicity"});
    int level = 0;
    for (const auto& l : p["levels"]) {
      csv_row(out, {std::to_string(level++), num17(l["energy"].get<double>()),
                    std::to_string(l["multiplicity"].get<std::size_t>())});
    }
  } else if (p.contains("constraints") && report.command == "simulate") {
    csv_row(out, {"constraint", "observable", "eigenvalue", "matched_fraction"});
    int idx = 1;
    for (const auto& c : p["constraints"]) {
      csv_row(out, {std::to_string(idx++), c["observable"].get<std::string>(),
                    std::to_string(c["eigenvalue"].get<int>()),
                    num17(c["matched_fraction"].get<double>())});
    }
  } else if (p.contains("inventory")) {
    csv_row(out, {"op", "eigenvalue", "residual"});
    for (const auto& e : p["inventory"]["entries"]) {
      csv_row(out, {e["op"].get<std::string>(), std::to_string(e["eigenvalue"].get<int>()),
                    num17(e["residual"].get<double>())});
    }
  } else if (p.contains("constraints") && p.contains("quantum")) {
    csv_row(out, {"constraint", "observable", "eigenvalue", "residual"});
    const auto& residuals = p["quantum"]["residuals"];
    int idx = 0;
    for (const auto& c : p["constraints"]) {
      csv_row(out, {std::to_string(idx + 1), c["observable"].get<std::string>(),
                    std::to_string(c["eigenvalue"].get<int>()),
                    num17(residuals[idx].get<double>())});
      ++idx;
    }
  } else if (p.contains("grid")) {
    csv_row(out, {"field_b", "overlap", "pass"});
    for (const auto& row : p["grid"]) {
      csv_row(out, {num17(row["field_b"].get<double>()), num17(row["overlap"].get<double>()),
                    row["pass"].get<bool>() ? "1" : "0"});
    }
  } else {
    // Generic key,value flattening of scalar payload fields.
    csv_row(out, {"key", "value"});
    for (const auto& [key, value] : p.items()) {
      if (value.is_primitive()) {
        csv_row(out, {key, value.dump()});
      }
    }
  }
  return out.str();
}

std::string to_text(const Report& report) {
  std::ostringstream out;
  out << "tfim-ghz " << kArtifactVersion << " -- " << report.command << "\n";
  out << "config: " << report.config.dump() << "\n";
  out << "duration_seconds: " << num17(report.duration_seconds) << "\n";
  out << "payload:\n" << report.payload.dump(2) << "\n";
  return out.str();
}

}  // namespace

std::string serialize(const Report& report, const std::string& format) {
  if (format == "json") {
    return to_json(report).dump(2) + "\n";
  }
  if (format == "csv") {
    return to_csv(report);
  }
  if (format == "text") {
    return to_text(report);
  }
  throw std::invalid_argument("serialize: unknown format '" + format + "'");
}

}  // namespace tfim
