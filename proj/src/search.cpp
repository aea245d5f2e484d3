#include "tfim/search.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

#include "tfim/errors.hpp"

namespace tfim {

namespace {

constexpr char kLetterOrder[4] = {'I', 'X', 'Y', 'Z'};

PauliString candidate_string(int n, std::uint64_t code) {
  std::string letters(static_cast<std::size_t>(n), 'I');
  for (int site = 1; site <= n; ++site) {
    letters[static_cast<std::size_t>(site - 1)] =
        kLetterOrder[(code >> (2 * (n - site))) & 3];
  }
  return PauliString::from_letters(letters);
}

void scan_range(const StateVector& state, double tol, std::uint64_t begin, std::uint64_t end,
                std::vector<StabilizerEntry>& out) {
  for (std::uint64_t code = begin; code < end; ++code) {
    const PauliString p = candidate_string(state.n, code);
    const Eigen::VectorXcd image = tfim::apply(p, state.amplitudes);
    const double r_plus = (image - state.amplitudes).norm();
    const double r_minus = (image + state.amplitudes).norm();
    const double residual = std::min(r_plus, r_minus);
    if (residual <= tol) {
      out.push_back({p, r_plus <= r_minus ? +1 : -1, residual});
    }
  }
}

}  // namespace

StabilizerInventory enumerate_stabilizers(const StateVector& state, double tol, int scan_cap) {
  if (state.n > scan_cap) {
    throw CapExceededError("enumerate_stabilizers: " + std::to_string(state.n) +
                           " sites exceeds scan cap " + std::to_string(scan_cap));
  }
  if (!(tol >= 0.0)) {
    throw std::invalid_argument("enumerate_stabilizers: tolerance must be >= 0");
  }

  const std::uint64_t total = std::uint64_t{1} << (2 * state.n);
  unsigned num_workers = std::max(1u, std::thread::hardware_concurrency());
  num_workers = static_cast<unsigned>(std::min<std::uint64_t>(num_workers, total));

  std::vector<std::vector<StabilizerEntry>> partial(num_workers);
  std::vector<std::thread> workers;
  const std::uint64_t chunk = (total + num_workers - 1) / num_workers;
  for (unsigned w = 0; w < num_workers; ++w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min(total, begin + chunk);
    workers.emplace_back(scan_range, std::cref(state), tol, begin, end, std::ref(partial[w]));
  }
  for (auto& worker : workers) {
    worker.join();
  }

  StabilizerInventory inventory;
  inventory.n = state.n;
  inventory.tol = tol;
  for (auto& part : partial) {
    inventory.entries.insert(inventory.entries.end(), part.begin(), part.end());
  }
  return inventory;
}

namespace {

struct OccurrenceRows {
  std::vector<LhvVariable> variables;
  std::vector<std::uint64_t> masks;  // per non-identity entry
  std::vector<int> parity;           // 1 iff eigenvalue == -1
  std::vector<int> entry_index;      // back-reference into the inventory
};

OccurrenceRows occurrence_rows(const StabilizerInventory& inventory) {
  OccurrenceRows rows;
  for (int site = 1; site <= inventory.n; ++site) {
    for (char axis : {'x', 'y', 'z'}) {
      for (const StabilizerEntry& e : inventory.entries) {
        if (static_cast<char>(std::tolower(e.op.letter_at(site))) == axis) {
          rows.variables.push_back({site, axis});
          break;
        }
      }
    }
  }
  const auto var_bit = [&rows](int site, char axis) {
    const auto it = std::find(rows.variables.begin(), rows.variables.end(), LhvVariable{site, axis});
    return std::uint64_t{1} << (it - rows.variables.begin());
  };
  for (std::size_t i = 0; i < inventory.entries.size(); ++i) {
    const StabilizerEntry& e = inventory.entries[i];
    if (e.op.is_identity_mask()) {
      continue;  // empty support: any contradiction through it has a smaller one
    }
    std::uint64_t mask = 0;
    for (int site = 1; site <= inventory.n; ++site) {
      const char letter = e.op.letter_at(site);
      if (letter != 'I') {
        mask |= var_bit(site, static_cast<char>(std::tolower(letter)));
      }
    }
    rows.masks.push_back(mask);
    rows.parity.push_back(e.eigenvalue == -1 ? 1 : 0);
    rows.entry_index.push_back(static_cast<int>(i));
  }
  return rows;
}

void dfs_subsets(const OccurrenceRows& rows, std::size_t start, int remaining, std::uint64_t acc_mask,
                 int acc_parity, std::vector<int>& picked, std::vector<std::vector<int>>& found) {
  if (acc_mask == 0 && acc_parity == 1 && !picked.empty()) {
    found.push_back(picked);
  }
  if (remaining == 0) {
    return;
  }
  for (std::size_t i = start; i < rows.masks.size(); ++i) {
    picked.push_back(static_cast<int>(i));
    dfs_subsets(rows, i + 1, remaining - 1, acc_mask ^ rows.masks[i], acc_parity ^ rows.parity[i],
                picked, found);
    picked.pop_back();
  }
}

std::vector<std::vector<int>> zero_sum_odd_subsets(const OccurrenceRows& rows, int max_size) {
  std::vector<std::vector<int>> found;
  const std::size_t count = rows.masks.size();

  if (max_size > 4) {
    // Rare path; the bounded DFS is C(count, max_size) and only viable
    // for small inventories.
    if (rows.masks.size() > 64) {
      throw CapExceededError("find_avn_subsets: size bounds above 4 are capped at 64 inventory "
                             "entries, got " + std::to_string(rows.masks.size()));
    }
    std::vector<int> picked;
    dfs_subsets(rows, 0, max_size, 0, 0, picked, found);
    return found;
  }

  // Sizes 1 and 2: a zero row, or two equal rows, with odd parity.
  if (max_size >= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      if (rows.masks[i] == 0 && rows.parity[i] == 1) {
        found.push_back({static_cast<int>(i)});
      }
    }
  }
  if (max_size >= 2) {
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        if (rows.masks[i] == rows.masks[j] && (rows.parity[i] ^ rows.parity[j]) == 1) {
          found.push_back({static_cast<int>(i), static_cast<int>(j)});
        }
      }
    }
  }

  if (max_size >= 3) {
    std::unordered_map<std::uint64_t, std::vector<int>> by_mask;
    for (std::size_t i = 0; i < count; ++i) {
      by_mask[rows.masks[i]].push_back(static_cast<int>(i));
    }
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        const auto it = by_mask.find(rows.masks[i] ^ rows.masks[j]);
        if (it == by_mask.end()) continue;
        for (int k : it->second) {
          if (static_cast<std::size_t>(k) > j &&
              (rows.parity[i] ^ rows.parity[j] ^ rows.parity[static_cast<std::size_t>(k)]) == 1) {
            found.push_back({static_cast<int>(i), static_cast<int>(j), k});
          }
        }
      }
    }
  }

  if (max_size >= 4) {
    // Pair-XOR join; the split with i < j < k < l is counted exactly once.
    std::unordered_map<std::uint64_t, std::vector<std::pair<int, int>>> pairs;
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        pairs[rows.masks[i] ^ rows.masks[j]].push_back(
            {static_cast<int>(i), static_cast<int>(j)});
      }
    }
    for (const auto& [key, bucket] : pairs) {
      for (std::size_t a = 0; a < bucket.size(); ++a) {
        for (std::size_t b = a + 1; b < bucket.size(); ++b) {
          const auto& [i, j] = bucket[a];
          const auto& [k, l] = bucket[b];
          const auto& lo = (j < k) ? bucket[a] : bucket[b];
          const auto& hi = (j < k) ? bucket[b] : bucket[a];
          if (lo.second >= hi.first) continue;
          const int parity = rows.parity[static_cast<std::size_t>(i)] ^
                             rows.parity[static_cast<std::size_t>(j)] ^
                             rows.parity[static_cast<std::size_t>(k)] ^
                             rows.parity[static_cast<std::size_t>(l)];
          if (parity == 1) {
            found.push_back({lo.first, lo.second, hi.first, hi.second});
          }
        }
      }
    }
  }
  return found;
}

}  // namespace

std::vector<ConstraintSet> find_avn_subsets(const StabilizerInventory& inventory, int max_size) {
  if (max_size < 1) {
    throw std::invalid_argument("find_avn_subsets: max_size must be >= 1");
  }
  const OccurrenceRows rows = occurrence_rows(inventory);
  std::vector<std::vector<int>> subsets = zero_sum_odd_subsets(rows, max_size);

  for (auto& subset : subsets) {
    std::sort(subset.begin(), subset.end());
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  std::vector<ConstraintSet> sets;
  sets.reserve(subsets.size());
  for (const auto& subset : subsets) {
    std::vector<Constraint> constraints;
    for (int r : subset) {
      const StabilizerEntry& e =
          inventory.entries[static_cast<std::size_t>(rows.entry_index[static_cast<std::size_t>(r)])];
      constraints.push_back({e.op, e.eigenvalue});
    }
    sets.emplace_back(inventory.n, std::move(constraints));
  }
  return sets;
}

NegativeScanReport negative_result_scan(const IsingParams& params, double stab_tol, int max_size) {
  params.validate();
  NegativeScanReport report;
  report.params = params;

  const SpectrumResult spectrum = exact_diagonalize(params, 1);
  const SpectrumLevel& ground = spectrum.low_levels.front();
  report.ground_energy = ground.energy;
  report.ground_dimension = static_cast<int>(ground.indices.size());
  if (report.ground_dimension > 1) {
    report.ground_degenerate = true;
    return report;
  }

  report.inventory = enumerate_stabilizers(ground.vectors.front(), stab_tol);
  report.avn_sets = find_avn_subsets(report.inventory, max_size);
  return report;
}

}  // namespace tfim
