// tfim-ghz: exact diagonalization of the transverse-field Ising chain and
// all-versus-nothing (GHZ) certification of its ground and excited states.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tfim/avn.hpp"
#include "tfim/errors.hpp"
#include "tfim/measure.hpp"
#include "tfim/model.hpp"
#include "tfim/report.hpp"
#include "tfim/search.hpp"

namespace {

using nlohmann::json;
using namespace tfim;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;
constexpr int kExitCertification = 4;

struct Options {
  int n = 3;
  std::vector<double> fields;  // empty -> command default
  double tol_eigen = 1e-10;
  bool tol_eigen_set = false;
  double tol_degeneracy = 1e-8;
  double tol_stabilizer = 1e-8;
  int shots = 10000;
  std::uint64_t seed = 12345;
  std::string parity;  // "", "even" or "odd"
  bool excited = false;
  int levels = 4;
  int max_size = 4;
  std::string format = "json";
  std::string out_path;
};

double single_field(const Options& opt) { return opt.fields.empty() ? 0.0 : opt.fields.front(); }

json config_echo(const std::string& command, const Options& opt) {
  json config{{"command", command},
              {"n", opt.n},
              {"tol_eigen", opt.tol_eigen},
              {"tol_degeneracy", opt.tol_degeneracy},
              {"tol_stabilizer", opt.tol_stabilizer},
              {"seed", opt.seed},
              {"shots", opt.shots},
              {"format", opt.format}};
  if (command == "verify-closed-form") {
    config["field_grid"] = opt.fields;
  } else {
    config["field_b"] = single_field(opt);
  }
  if (!opt.parity.empty()) config["parity"] = opt.parity;
  if (opt.excited) config["excited"] = true;
  if (command == "spectrum") config["levels"] = opt.levels;
  if (command == "search") config["max_size"] = opt.max_size;
  return config;
}

struct PreparedCase {
  StateVector state;
  ConstraintSet set;
  bool numerical = false;  // state came from the eigensolver
  std::string description;
};

// Shared state/set selection for avn and simulate. B = 0 ground states are
// degenerate, so the parity flag must pick the sector explicitly.
PreparedCase prepare_case(const Options& opt) {
  if (opt.excited) {
    if (opt.n != 4) {
      throw std::invalid_argument("--excited requires --n 4");
    }
    return {first_excited_state_4(), excited_ghz_set_4(), false, "first excited state, n=4, B=0"};
  }
  const double b = single_field(opt);
  if (b == 0.0) {
    if (opt.parity.empty()) {
      throw std::invalid_argument(
          "the B = 0 ground space is doubly degenerate; pick a sector with --parity even|odd");
    }
    if (opt.parity == "even") {
      return {even_parity_uniform_state(opt.n), standard_ghz_set(opt.n), false,
              "even-parity uniform ground state, B=0"};
    }
    // The odd-parity partner takes the same operators with every
    // eigenvalue flipped: (+1, +1, +1, -1).
    std::vector<Constraint> flipped = standard_ghz_set(opt.n).constraints();
    for (Constraint& c : flipped) {
      c.eigenvalue = -c.eigenvalue;
    }
    return {odd_parity_uniform_state(opt.n), ConstraintSet(opt.n, std::move(flipped)), false,
            "odd-parity uniform ground state, B=0"};
  }
  const SpectrumResult spectrum = exact_diagonalize({opt.n, b}, 1, opt.tol_degeneracy);
  const SpectrumLevel& ground = spectrum.low_levels.front();
  if (ground.indices.size() > 1) {
    throw std::invalid_argument("ground space is degenerate (dimension " +
                                std::to_string(ground.indices.size()) + "); refusing to pick a vector");
  }
  return {ground.vectors.front(), standard_ghz_set(opt.n), true,
          "numerical ground state, B=" + std::to_string(b)};
}

int cmd_spectrum(const Options& opt, json& payload) {
  const IsingParams params{opt.n, single_field(opt)};
  const SpectrumResult spectrum = exact_diagonalize(params, opt.levels, opt.tol_degeneracy);
  payload = spectrum_payload(spectrum);
  for (std::size_t l = 0; l < spectrum.low_levels.size(); ++l) {
    const SpectrumLevel& level = spectrum.low_levels[l];
    double max_residual = 0.0;
    for (const StateVector& v : level.vectors) {
      const Eigen::VectorXcd hv = apply_hamiltonian(params, v);
      max_residual = std::max(max_residual, (hv - level.energy * v.amplitudes).norm());
    }
    payload["low_levels"][l]["max_residual"] = max_residual;
  }
  return kExitOk;
}

int cmd_verify_closed_form(const Options& opt, json& payload) {
  if (opt.n != 3 && opt.n != 4) {
    throw std::invalid_argument("no closed form available for n = " + std::to_string(opt.n) +
                                "; closed forms exist for n = 3 and n = 4");
  }
  std::vector<double> grid = opt.fields;
  if (grid.empty()) {
    grid = {0.0, 0.1, 0.25, 0.5, 1.0, 2.0};
  }
  const double threshold = (opt.n == 3) ? 1e-9 : 1e-6;
  bool all_pass = true;

  json rows = json::array();
  for (double b : grid) {
    const StateVector formula =
        (opt.n == 3) ? closed_form_ground_state_3(b) : closed_form_ground_state_4(b);
    const SpectrumResult spectrum = exact_diagonalize({opt.n, b}, 1, opt.tol_degeneracy);
    const SpectrumLevel& ground = spectrum.low_levels.front();
    double proj_sq = 0.0;
    for (const StateVector& v : ground.vectors) {
      const double o = overlap(v, formula);
      proj_sq += o * o;
    }
    const double proj = std::sqrt(proj_sq);
    const bool pass = proj >= 1.0 - threshold;
    all_pass = all_pass && pass;

    json row{{"field_b", b},
             {"ground_multiplicity", ground.indices.size()},
             {"ground_energy", ground.energy},
             {"overlap", proj},
             {"pass", pass}};
    if (opt.n == 3) {
      row["xi1"] = xi1(b);
      row["norm1"] = norm1(b);
    } else {
      row["xi2"] = xi2(b);
      row["xi3"] = xi3(b);
      const std::array<double, 8> amps = g4_formula_amplitudes(b);
      double norm_sq = amps[0] * amps[0] + amps[7] * amps[7];
      for (int i = 1; i < 7; ++i) norm_sq += amps[i] * amps[i];
      row["norm2_formula"] = norm2_formula(b);
      row["norm2_ratio"] = norm2_formula(b) / norm_sq;
    }
    if (opt.n == 4 && b == 0.0) {
      // Two readings of the B = 0 limit differ by the |1111> term;
      // record which one the diagonalized ground space prefers.
      Eigen::VectorXcd without = even_parity_uniform_state(4).amplitudes;
      without(0b1111) = 0.0;
      const StateVector seven_kets(4, std::move(without));
      double with_sq = 0.0, without_sq = 0.0;
      for (const StateVector& v : ground.vectors) {
        const double ow = overlap(v, even_parity_uniform_state(4));
        const double o7 = overlap(v, seven_kets);
        with_sq += ow * ow;
        without_sq += o7 * o7;
      }
      row["overlap_with_1111"] = std::sqrt(with_sq);
      row["overlap_without_1111"] = std::sqrt(without_sq);
      row["includes_1111"] = with_sq > without_sq;
    }
    rows.push_back(row);
  }
  payload = json{{"n", opt.n}, {"threshold", threshold}, {"grid", rows}, {"all_pass", all_pass}};
  return all_pass ? kExitOk : kExitCertification;
}

int cmd_avn(const Options& opt, json& payload) {
  const PreparedCase prepared = prepare_case(opt);
  const double tol = opt.tol_eigen_set ? opt.tol_eigen : (prepared.numerical ? 1e-8 : 1e-10);
  const AvnCertificate cert = certify_avn(prepared.set, prepared.state, tol);
  payload = certificate_payload(prepared.set, cert);
  payload["state"] = prepared.description;
  return cert.avn_holds ? kExitOk : kExitCertification;
}

int cmd_search(const Options& opt, json& payload) {
  const double b = single_field(opt);
  if (b == 0.0) {
    if (opt.parity.empty()) {
      throw std::invalid_argument(
          "the B = 0 ground space is doubly degenerate; pick a sector with --parity even|odd");
    }
    const StateVector state = (opt.parity == "even") ? even_parity_uniform_state(opt.n)
                                                     : odd_parity_uniform_state(opt.n);
    const StabilizerInventory inventory = enumerate_stabilizers(state, opt.tol_stabilizer);
    const std::vector<ConstraintSet> sets = find_avn_subsets(inventory, opt.max_size);
    payload = json{{"n", opt.n}, {"field_b", b}, {"parity", opt.parity},
                   {"inventory", inventory_payload(inventory)}, {"avn_set_count", sets.size()}};
    json set_list = json::array();
    for (const ConstraintSet& set : sets) {
      set_list.push_back(constraint_set_payload(set));
    }
    payload["avn_sets"] = set_list;
    return kExitOk;
  }
  const NegativeScanReport scan = negative_result_scan({opt.n, b}, opt.tol_stabilizer, opt.max_size);
  payload = negative_scan_payload(scan);
  if (scan.ground_degenerate) {
    throw std::invalid_argument("ground space is degenerate (dimension " +
                                std::to_string(scan.ground_dimension) + "); refusing to pick a vector");
  }
  return kExitOk;
}

int cmd_simulate(const Options& opt, json& payload) {
  const PreparedCase prepared = prepare_case(opt);
  const ExperimentStats stats = run_experiment(prepared.state, prepared.set, opt.shots, opt.seed);
  payload = experiment_payload(prepared.set, stats);
  payload["state"] = prepared.description;
  return kExitOk;
}

void emit(const Report& report, const Options& opt) {
  const std::string rendered = serialize(report, opt.format);
  if (opt.out_path.empty()) {
    std::cout << rendered;
    return;
  }
  std::ofstream out(opt.out_path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + opt.out_path);
  }
  out << rendered;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transverse-field Ising chain: exact spectra, closed-form ground states and "
               "all-versus-nothing certification"};
  app.require_subcommand(1);

  Options opt;
  const auto add_common = [&opt](CLI::App* cmd) {
    cmd->add_option("--n", opt.n, "number of sites");
    cmd->add_option("--field", opt.fields, "transverse field B (repeatable for grids)");
    cmd->add_option("--tol-degeneracy", opt.tol_degeneracy, "eigenvalue gap below which levels merge");
    cmd->add_option("--format", opt.format, "output format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", opt.out_path, "write the report to this path instead of stdout");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "diagonalize and list the lowest levels");
  add_common(spectrum);
  spectrum->add_option("--levels", opt.levels, "number of lowest levels to report");

  CLI::App* verify = app.add_subcommand(
      "verify-closed-form", "compare the closed-form ground states against the eigensolver");
  add_common(verify);

  CLI::App* avn = app.add_subcommand("avn", "certify the GHZ contradiction on the chosen state");
  add_common(avn);
  avn->add_option("--tol-eigen", opt.tol_eigen, "eigenequation residual tolerance")
      ->each([&opt](const std::string&) { opt.tol_eigen_set = true; });
  avn->add_option("--parity", opt.parity, "B = 0 ground sector")->check(CLI::IsMember({"even", "odd"}));
  avn->add_flag("--excited", opt.excited, "use the n = 4 first excited state and its operator set");

  CLI::App* search = app.add_subcommand(
      "search", "exhaustive stabilizer inventory and AVN subset discovery for the ground state");
  add_common(search);
  search->add_option("--tol-stabilizer", opt.tol_stabilizer, "stabilizer residual tolerance");
  search->add_option("--max-size", opt.max_size, "largest subset size to search");
  search->add_option("--parity", opt.parity, "B = 0 ground sector")
      ->check(CLI::IsMember({"even", "odd"}));

  CLI::App* simulate = app.add_subcommand("simulate", "seeded single-run measurement experiment");
  add_common(simulate);
  simulate->add_option("--shots", opt.shots, "number of measurement shots per constraint");
  simulate->add_option("--seed", opt.seed, "64-bit generator seed");
  simulate->add_option("--parity", opt.parity, "B = 0 ground sector")
      ->check(CLI::IsMember({"even", "odd"}));
  simulate->add_flag("--excited", opt.excited, "use the n = 4 first excited state and its operator set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Report report;
  report.command = command;
  report.config = config_echo(command, opt);

  const auto start = std::chrono::steady_clock::now();
  int exit_code = kExitOk;
  try {
    if (command == "spectrum") {
      exit_code = cmd_spectrum(opt, report.payload);
    } else if (command == "verify-closed-form") {
      exit_code = cmd_verify_closed_form(opt, report.payload);
    } else if (command == "avn") {
      exit_code = cmd_avn(opt, report.payload);
    } else if (command == "search") {
      exit_code = cmd_search(opt, report.payload);
    } else if (command == "simulate") {
      if (opt.shots < 1) {
        throw std::invalid_argument("--shots must be at least 1");
      }
      exit_code = cmd_simulate(opt, report.payload);
    }
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  report.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  try {
    emit(report, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return exit_code;
}
