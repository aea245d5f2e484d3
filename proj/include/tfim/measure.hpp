#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tfim/avn.hpp"
#include "tfim/state.hpp"

namespace tfim {

/// One single-run measurement of a constraint: per-site outcomes of the
/// local letters, their product, and whether it matched the prediction.
struct ShotRecord {
  int constraint_index = 0;   // 1-based within the set, 0 for standalone shots
  std::vector<int> sites;     // measured (non-identity) sites, in measurement order
  std::vector<int> outcomes;  // +-1 per measured site
  int product = +1;
  bool matched = false;       // product == eigenvalue * observable sign
};

enum class SiteOrder { ascending, descending };

inline constexpr const char* kGeneratorName = "mt19937_64";

/// Measures each non-identity site's letter in sequence: projector
/// probabilities (1 +- P_j)/2 from the current state, seeded draw,
/// projection and renormalization. Commuting single-site factors make the
/// joint distribution order-independent. The optional out-parameter
/// receives the fully collapsed post-measurement state.
ShotRecord sample_constraint(const StateVector& state, const Constraint& c,
                             std::mt19937_64& rng, SiteOrder order = SiteOrder::ascending,
                             StateVector* post_state = nullptr);

ShotRecord sample_constraint(const StateVector& state, const Constraint& c,
                             std::uint64_t seed, SiteOrder order = SiteOrder::ascending,
                             StateVector* post_state = nullptr);

struct ConstraintStats {
  double matched_fraction = 0.0;
  std::vector<int> sites;                  // measured sites, ascending
  std::vector<double> site_plus_fraction;  // frequency of outcome +1 per site
};

struct ExperimentStats {
  std::string generator = kGeneratorName;
  std::uint64_t seed = 0;
  int shots = 0;
  std::vector<ConstraintStats> per_constraint;
  /// Per-constraint shot transcripts, only filled when requested.
  std::vector<std::vector<ShotRecord>> transcripts;
};

/// shots independent single runs per constraint, each from a fresh copy
/// of the state; fully reproducible from the seed.
ExperimentStats run_experiment(const StateVector& state, const ConstraintSet& set,
                               int shots, std::uint64_t seed,
                               bool keep_transcripts = false);

}  // namespace tfim
