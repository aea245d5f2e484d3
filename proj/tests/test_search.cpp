#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>

#include "tfim/avn.hpp"
#include "tfim/errors.hpp"
#include "tfim/model.hpp"
#include "tfim/search.hpp"
#include "test_util.hpp"

using namespace tfim;

namespace {

std::map<std::string, int> as_map(const StabilizerInventory& inv) {
  std::map<std::string, int> out;
  for (const StabilizerEntry& e : inv.entries) {
    out[format_pauli(e.op)] = e.eigenvalue;
  }
  return out;
}

std::set<std::string> set_signature(const ConstraintSet& set) {
  std::set<std::string> out;
  for (const Constraint& c : set.constraints()) {
    out.insert(format_pauli(c.observable) + (c.eigenvalue > 0 ? ":+1" : ":-1"));
  }
  return out;
}

StateVector unique_ground_state(int n, double b) {
  const SpectrumResult s = exact_diagonalize({n, b}, 1);
  REQUIRE(s.low_levels.front().indices.size() == 1);
  return s.low_levels.front().vectors.front();
}

}  // namespace

TEST_CASE("inventory of the even-parity 3-site state") {
  const StabilizerInventory inv = enumerate_stabilizers(even_parity_uniform_state(3), 1e-10);
  const std::map<std::string, int> expect = {{"+III", +1}, {"+XXI", +1}, {"+XIX", +1},
                                             {"+IXX", +1}, {"+YYZ", -1}, {"+YZY", -1},
                                             {"+ZYY", -1}, {"+ZZZ", +1}};
  CHECK(as_map(inv) == expect);
  for (const StabilizerEntry& e : inv.entries) {
    CHECK(e.residual <= inv.tol);
  }
}

TEST_CASE("inventory entries are canonically ordered and pairwise commuting") {
  for (const StateVector& state :
       {even_parity_uniform_state(3), odd_parity_uniform_state(3), even_parity_uniform_state(4)}) {
    const StabilizerInventory inv = enumerate_stabilizers(state, 1e-10);
    REQUIRE_FALSE(inv.entries.empty());
    CHECK(inv.entries.front().op.is_identity_mask());
    CHECK(inv.entries.front().eigenvalue == +1);
    for (std::size_t i = 0; i + 1 < inv.entries.size(); ++i) {
      for (std::size_t j = i + 1; j < inv.entries.size(); ++j) {
        CHECK(commutes(inv.entries[i].op, inv.entries[j].op));
      }
    }
  }
}

TEST_CASE("inventory matches a dense eigenvector check on assorted states") {
  std::mt19937_64 rng(73);
  std::vector<StateVector> states = {even_parity_uniform_state(3), odd_parity_uniform_state(3),
                                     StateVector::basis_state(3, 5), first_excited_state_4()};
  states.push_back(testutil::random_state(rng, 3));
  for (const StateVector& state : states) {
    const StabilizerInventory inv = enumerate_stabilizers(state, 1e-9);
    std::set<std::string> scanned;
    for (const StabilizerEntry& e : inv.entries) {
      scanned.insert(format_pauli(e.op) + (e.eigenvalue > 0 ? "+" : "-"));
    }
    std::set<std::string> dense;
    const std::uint64_t total = std::uint64_t{1} << (2 * state.n);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::string letters;
      for (int site = 1; site <= state.n; ++site) {
        letters += "IXYZ"[(code >> (2 * (state.n - site))) & 3];
      }
      const PauliString p = PauliString::from_letters(letters);
      const Eigen::VectorXcd image = to_matrix(p) * state.amplitudes;
      if ((image - state.amplitudes).norm() <= 1e-9) dense.insert(format_pauli(p) + "+");
      if ((image + state.amplitudes).norm() <= 1e-9) dense.insert(format_pauli(p) + "-");
    }
    CHECK(scanned == dense);
  }
}

TEST_CASE("negative result: n=3, B=0.5 stabilizers are exactly identity and ZZZ") {
  const StabilizerInventory inv = enumerate_stabilizers(unique_ground_state(3, 0.5), 1e-8);
  const std::map<std::string, int> expect = {{"+III", +1}, {"+ZZZ", +1}};
  CHECK(as_map(inv) == expect);
  CHECK(find_avn_subsets(inv, 4).empty());
}

TEST_CASE("negative result: n=4, B=1.0 admits no AVN subset") {
  const StabilizerInventory inv = enumerate_stabilizers(unique_ground_state(4, 1.0), 1e-8);
  CHECK(find_avn_subsets(inv, 4).empty());
}

TEST_CASE("excited-state inventory contains the excited-set operators") {
  const StabilizerInventory inv = enumerate_stabilizers(first_excited_state_4(), 1e-10);
  const std::map<std::string, int> got = as_map(inv);
  CHECK(got.at("+XXXX") == -1);
  CHECK(got.at("+XXYY") == +1);
  CHECK(got.at("+XYXY") == +1);
  CHECK(got.at("+XYYX") == +1);
  CHECK(got.at("+ZZII") == +1);
  CHECK(got.at("+IZZI") == +1);
}

TEST_CASE("find_avn_subsets recovers the canonical set on the even-parity state") {
  const StateVector state = even_parity_uniform_state(3);
  const StabilizerInventory inv = enumerate_stabilizers(state, 1e-10);
  const std::vector<ConstraintSet> sets = find_avn_subsets(inv, 4);
  REQUIRE_FALSE(sets.empty());

  const std::set<std::string> canonical = {"+YYZ:-1", "+YZY:-1", "+ZYY:-1", "+ZZZ:+1"};
  bool found = false;
  for (const ConstraintSet& set : sets) {
    if (set_signature(set) == canonical) found = true;
    // Every discovered subset certifies against the same state.
    CHECK(certify_avn(set, state, 1e-10).avn_holds);
  }
  CHECK(found);
}

TEST_CASE("find_avn_subsets on the odd-parity partner") {
  const StateVector state = odd_parity_uniform_state(3);
  const StabilizerInventory inv = enumerate_stabilizers(state, 1e-10);
  const std::vector<ConstraintSet> sets = find_avn_subsets(inv, 4);
  REQUIRE_FALSE(sets.empty());
  const std::set<std::string> flipped = {"+YYZ:+1", "+YZY:+1", "+ZYY:+1", "+ZZZ:-1"};
  bool found = false;
  for (const ConstraintSet& set : sets) {
    if (set_signature(set) == flipped) found = true;
    CHECK(certify_avn(set, state, 1e-10).avn_holds);
  }
  CHECK(found);
}

TEST_CASE("subset discovery agrees with direct enumeration on the 4-site inventory") {
  const StateVector state = even_parity_uniform_state(4);
  const StabilizerInventory inv = enumerate_stabilizers(state, 1e-10);
  const std::vector<ConstraintSet> fast = find_avn_subsets(inv, 4);

  // Direct reference: a subset is a parity contradiction when every
  // (site, axis) occurs an even number of times while the folded
  // eigenvalue bits sum to 1. Enumerate all subsets of size <= 4.
  const auto is_contradiction = [&inv](const std::set<std::size_t>& picked) {
    std::map<std::pair<int, char>, int> occurrences;
    int parity = 0;
    for (std::size_t i : picked) {
      const StabilizerEntry& e = inv.entries[i];
      for (int site = 1; site <= inv.n; ++site) {
        const char letter = e.op.letter_at(site);
        if (letter != 'I') ++occurrences[{site, letter}];
      }
      if (e.eigenvalue == -1) parity ^= 1;
    }
    for (const auto& [var, count] : occurrences) {
      if (count % 2 != 0) return false;
    }
    return parity == 1;
  };

  std::set<std::set<std::string>> expect;
  const std::size_t count = inv.entries.size();
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a; b < count; ++b) {
      for (std::size_t c = b; c < count; ++c) {
        for (std::size_t d = c; d < count; ++d) {
          std::set<std::size_t> picked = {a, b, c, d};
          bool has_identity = false;
          for (std::size_t i : picked) {
            has_identity = has_identity || inv.entries[i].op.is_identity_mask();
          }
          if (has_identity || !is_contradiction(picked)) continue;
          std::vector<Constraint> constraints;
          for (std::size_t i : picked) {
            constraints.push_back({inv.entries[i].op, inv.entries[i].eigenvalue});
          }
          const ConstraintSet candidate(inv.n, constraints);
          expect.insert(set_signature(candidate));
          CHECK_FALSE(brute_force_satisfiable(candidate).satisfiable);
        }
      }
    }
  }

  std::set<std::set<std::string>> got;
  for (const ConstraintSet& set : fast) {
    got.insert(set_signature(set));
  }
  CHECK(got == expect);
}

TEST_CASE("raising the size bound falls back to DFS and finds nothing new at n=3") {
  const StateVector state = even_parity_uniform_state(3);
  const StabilizerInventory inv = enumerate_stabilizers(state, 1e-10);
  const std::vector<ConstraintSet> bounded = find_avn_subsets(inv, 4);
  const std::vector<ConstraintSet> wide = find_avn_subsets(inv, 5);
  std::set<std::set<std::string>> a, b;
  for (const ConstraintSet& s : bounded) a.insert(set_signature(s));
  for (const ConstraintSet& s : wide) b.insert(set_signature(s));
  CHECK(a == b);  // the only contradiction uses four operators
}

TEST_CASE("inventory grows monotonically with tolerance") {
  const StateVector ground = unique_ground_state(3, 0.5);
  const StabilizerInventory tight = enumerate_stabilizers(ground, 1e-10);
  const StabilizerInventory loose = enumerate_stabilizers(ground, 1e-4);
  std::set<std::string> tight_ops, loose_ops;
  for (const auto& e : tight.entries) tight_ops.insert(format_pauli(e.op));
  for (const auto& e : loose.entries) loose_ops.insert(format_pauli(e.op));
  CHECK(std::includes(loose_ops.begin(), loose_ops.end(), tight_ops.begin(), tight_ops.end()));
}

TEST_CASE("negative_result_scan: zero findings at B > 0, degeneracy guard at B = 0") {
  const NegativeScanReport at_half = negative_result_scan({3, 0.5});
  CHECK_FALSE(at_half.ground_degenerate);
  CHECK(at_half.inventory.entries.size() == 2);
  CHECK(at_half.avn_sets.empty());

  const NegativeScanReport at_one = negative_result_scan({4, 1.0});
  CHECK_FALSE(at_one.ground_degenerate);
  CHECK(at_one.avn_sets.empty());

  const NegativeScanReport degenerate = negative_result_scan({3, 0.0});
  CHECK(degenerate.ground_degenerate);
  CHECK(degenerate.ground_dimension == 2);
  CHECK(degenerate.inventory.entries.empty());
}

TEST_CASE("scan cap") {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(1 << 9);
  amps(0) = 1.0;
  const StateVector big(9, std::move(amps));
  CHECK_THROWS_AS(enumerate_stabilizers(big, 1e-8), CapExceededError);
}
