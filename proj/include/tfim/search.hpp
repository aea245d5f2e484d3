#pragma once

#include <vector>

#include "tfim/avn.hpp"
#include "tfim/model.hpp"
#include "tfim/pauli.hpp"
#include "tfim/state.hpp"

namespace tfim {

struct StabilizerEntry {
  PauliString op;      // canonical, coefficient +1
  int eigenvalue = 0;  // +-1
  double residual = 0.0;
};

/// Every sign-positive Hermitian Pauli string that has the state as a
/// +-1 eigenvector within tol, in canonical letter order (I < X < Y < Z,
/// site 1 most significant). The identity is always present with +1.
struct StabilizerInventory {
  int n = 0;
  double tol = 0.0;
  std::vector<StabilizerEntry> entries;
};

/// Exhaustive scan over all 4^n candidate strings. Candidates partition
/// into contiguous ranges scanned concurrently; the merge preserves
/// canonical order. Throws CapExceededError for n above the cap.
StabilizerInventory enumerate_stabilizers(const StateVector& state, double tol = 1e-8,
                                          int scan_cap = 8);

/// All subsets of the inventory of size <= max_size whose LHV sign system
/// is unsatisfiable: the GF(2) occurrence rows of the subset sum to zero
/// while the folded eigenvalue bits sum to 1. Complete for the size bound
/// (pair-XOR join for sizes 3-4, DFS beyond); the identity entry is
/// skipped. Commutation is re-verified by the ConstraintSet constructor.
std::vector<ConstraintSet> find_avn_subsets(const StabilizerInventory& inventory,
                                            int max_size = 4);

struct NegativeScanReport {
  IsingParams params;
  bool ground_degenerate = false;
  int ground_dimension = 0;
  double ground_energy = 0.0;
  StabilizerInventory inventory;       // empty when refused
  std::vector<ConstraintSet> avn_sets; // expected empty for B > 0
};

/// Diagonalize, take the unique ground state, scan for stabilizers and
/// AVN subsets. A degenerate ground space is reported, never resolved by
/// an arbitrary solver choice.
NegativeScanReport negative_result_scan(const IsingParams& params, double stab_tol = 1e-8,
                                        int max_size = 4);

}  // namespace tfim
