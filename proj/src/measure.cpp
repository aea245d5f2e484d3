#include "tfim/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tfim {

namespace {

// Top 53 bits of the draw; portable across standard library implementations,
// unlike std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ShotRecord sample_constraint(const StateVector& state, const Constraint& c, std::mt19937_64& rng,
                             SiteOrder order, StateVector* post_state) {
  if (state.n != c.observable.n) {
    throw std::invalid_argument("sample_constraint: site counts differ");
  }
  if (!c.observable.is_hermitian() || (c.eigenvalue != 1 && c.eigenvalue != -1)) {
    throw std::invalid_argument("sample_constraint: constraint is not a +-1 observable");
  }

  std::vector<int> sites;
  for (int site = 1; site <= state.n; ++site) {
    if (c.observable.letter_at(site) != 'I') {
      sites.push_back(site);
    }
  }
  if (order == SiteOrder::descending) {
    std::reverse(sites.begin(), sites.end());
  }

  ShotRecord record;
  record.sites = sites;
  Eigen::VectorXcd psi = state.amplitudes;
  for (int site : sites) {
    const PauliString letter = PauliString::single(state.n, site, c.observable.letter_at(site));
    const Eigen::VectorXcd image = tfim::apply(letter, psi);
    const double expectation = std::real(psi.dot(image));
    const double p_plus = std::clamp(0.5 * (1.0 + expectation), 0.0, 1.0);
    const int outcome = (uniform01(rng) < p_plus) ? +1 : -1;
    const double p_outcome = (outcome == +1) ? p_plus : 1.0 - p_plus;
    if (p_outcome < 1e-12) {
      // Correct probabilities never select an empty branch.
      throw std::runtime_error("sample_constraint: zero-probability projection (numerical fault)");
    }
    psi = 0.5 * (psi + static_cast<double>(outcome) * image) / std::sqrt(p_outcome);
    psi /= psi.norm();
    record.outcomes.push_back(outcome);
    record.product *= outcome;
  }
  record.matched = record.product == c.eigenvalue * c.observable.sign();
  if (post_state != nullptr) {
    *post_state = StateVector(state.n, std::move(psi));
  }
  return record;
}

ShotRecord sample_constraint(const StateVector& state, const Constraint& c, std::uint64_t seed,
                             SiteOrder order, StateVector* post_state) {
  std::mt19937_64 rng(seed);
  return sample_constraint(state, c, rng, order, post_state);
}

ExperimentStats run_experiment(const StateVector& state, const ConstraintSet& set, int shots,
                               std::uint64_t seed, bool keep_transcripts) {
  if (state.n != set.n()) {
    throw std::invalid_argument("run_experiment: site counts differ");
  }
  if (shots < 1) {
    throw std::invalid_argument("run_experiment: need at least one shot");
  }

  ExperimentStats stats;
  stats.seed = seed;
  stats.shots = shots;
  std::mt19937_64 rng(seed);

  for (std::size_t j = 0; j < set.size(); ++j) {
    const Constraint& c = set.constraints()[j];
    ConstraintStats cs;
    std::vector<int> plus_counts;
    int matched = 0;
    std::vector<ShotRecord> transcript;
    for (int shot = 0; shot < shots; ++shot) {
      ShotRecord record = sample_constraint(state, c, rng);
      record.constraint_index = static_cast<int>(j + 1);
      if (cs.sites.empty()) {
        cs.sites = record.sites;
        plus_counts.assign(record.sites.size(), 0);
      }
      for (std::size_t s = 0; s < record.outcomes.size(); ++s) {
        if (record.outcomes[s] == +1) {
          ++plus_counts[s];
        }
      }
      if (record.matched) {
        ++matched;
      }
      if (keep_transcripts) {
        transcript.push_back(std::move(record));
      }
    }
    cs.matched_fraction = static_cast<double>(matched) / shots;
    for (int count : plus_counts) {
      cs.site_plus_fraction.push_back(static_cast<double>(count) / shots);
    }
    stats.per_constraint.push_back(std::move(cs));
    if (keep_transcripts) {
      stats.transcripts.push_back(std::move(transcript));
    }
  }
  return stats;
}

}  // namespace tfim
