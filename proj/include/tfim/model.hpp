#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tfim/pauli.hpp"
#include "tfim/state.hpp"

namespace tfim {

/// Transverse-field Ising chain H = -sum_j (X_j X_{j+1} + B Z_j) with
/// periodic boundary (site N+1 = site 1). Coupling fixed to 1, B >= 0.
struct IsingParams {
  int n = 0;
  double field_b = 0.0;

  void validate() const;  // n >= 2, field_b >= 0
};

/// Exactly 2N terms: the N bonds (coefficient -1) followed by the N field
/// terms (coefficient -B). At N = 2 the two bonds coincide as operators
/// but are still emitted as two terms.
std::vector<std::pair<double, PauliString>> hamiltonian_terms(const IsingParams& params);

/// Dense real-symmetric Hamiltonian; integer entries plus integer
/// multiples of B, so small cases compare bit-exactly.
Eigen::MatrixXd hamiltonian_matrix(const IsingParams& params, int dense_cap = 14);

/// Term-wise H|v>, no matrix formed. Not normalized: H|v> is not a state.
Eigen::VectorXcd apply_hamiltonian(const IsingParams& params, const StateVector& v);

struct SpectrumLevel {
  double energy = 0.0;              // representative (first) eigenvalue
  std::vector<int> indices;         // positions in the ascending eigenvalue list
  std::vector<StateVector> vectors; // orthonormal eigenvectors of the level
};

struct SpectrumResult {
  std::vector<double> eigenvalues;        // full ascending spectrum
  std::vector<std::vector<int>> levels;   // degeneracy groups over the full spectrum
  std::vector<SpectrumLevel> low_levels;  // eigenvectors for the lowest levels
  double degeneracy_tol = 0.0;
};

/// Dense diagonalization, eigenvalues grouped into degenerate levels by
/// adjacent gaps below degeneracy_tol; eigenvectors returned for the
/// lowest level_count levels. Deterministic up to basis rotation within
/// a degenerate level.
SpectrumResult exact_diagonalize(const IsingParams& params, int level_count,
                                 double degeneracy_tol = 1e-8, int dense_cap = 14);

// Closed-form coefficients of the N = 3 and N = 4 ground states.
double xi1(double b);           // -1 + 2B + 2*sqrt(1 - B + B^2)
double norm1(double b);         // 3 + xi1^2
double xi2(double b);           // -1 + 2B^2 + 2*sqrt(1 + B^4)
double xi3(double b);           // sqrt(1 + B^2 + sqrt(1 + B^4))
double norm2_formula(double b);  // the closed-form normalization for N = 4

/// (xi1|000> + |011> + |101> + |110>) / sqrt(norm1).
StateVector closed_form_ground_state_3(double b);

/// The N = 4 closed form on the eight even-parity kets, built verbatim
/// and then renormalized regardless of the formula's own constant.
StateVector closed_form_ground_state_4(double b);

/// Raw closed-form amplitudes of closed_form_ground_state_4 on the
/// even-parity kets in basis-index order (0000, 0011, 0101, 0110, 1001,
/// 1010, 1100, 1111), before normalization. Exposed so reports can audit
/// the formula's normalization constant against the computed squared norm.
std::array<double, 8> g4_formula_amplitudes(double b);

/// Equal amplitude 2^{-(n-1)/2} on every even-parity bitstring; the B = 0
/// ground state in the even sector, eigenvalue -n.
StateVector even_parity_uniform_state(int n);

/// Odd-parity partner, the other degenerate B = 0 ground state.
StateVector odd_parity_uniform_state(int n);

/// (-|0000> + |1111>) / sqrt(2); B = 0 first excited state of the 4-site
/// chain, eigenvalue 0.
StateVector first_excited_state_4();

}  // namespace tfim
