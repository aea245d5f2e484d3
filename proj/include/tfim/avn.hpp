#pragma once

#include <vector>

#include "tfim/gf2.hpp"
#include "tfim/pauli.hpp"
#include "tfim/state.hpp"

namespace tfim {

/// One quantum prediction: a Hermitian +-1-coefficient Pauli observable
/// together with the eigenvalue it takes on the state under study.
struct Constraint {
  PauliString observable;
  int eigenvalue = +1;  // +1 or -1
};

/// Pairwise-commuting constraints on a common site count. Commutation and
/// Hermiticity are checked on construction.
class ConstraintSet {
 public:
  ConstraintSet(int n_sites, std::vector<Constraint> constraints);

  int n() const { return n_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::size_t size() const { return constraints_.size(); }

 private:
  int n_ = 0;
  std::vector<Constraint> constraints_;
};

/// The standard four commuting operators for n >= 3, eigenvalues on the
/// even-parity B = 0 ground state: D1 = Z..Z with Y at sites 2,3 (-1),
/// D2 with Y at sites 1,3 (-1), D3 with Y at sites 1,2 (-1), D4 = Z..Z (+1).
ConstraintSet standard_ghz_set(int n_sites);

/// {XXYY, XYXY, XYYX, XXXX} with eigenvalues (+1, +1, +1, -1) on the
/// first excited state (-|0000> + |1111>)/sqrt(2).
ConstraintSet excited_ghz_set_4();

struct EigenReport {
  std::vector<double> residuals;  // ||O_j v - lambda_j v|| per constraint
  double tol = 0.0;
  bool passed = false;
  std::vector<int> failing;  // 1-based constraint indices above tol
};

EigenReport verify_eigenequations(const ConstraintSet& set, const StateVector& state,
                                  double tol = 1e-10);

/// One sign-bit variable per (site, measurement axis) that occurs in some
/// constraint: the EPR element-of-reality premise that the same local
/// observable has one predetermined value across all equations.
struct LhvVariable {
  int site = 0;   // 1-based
  char axis = 0;  // 'x', 'y' or 'z'

  friend bool operator==(const LhvVariable&, const LhvVariable&) = default;
};

struct LhvSystem {
  std::vector<LhvVariable> variables;  // ordered by (site, axis)
  gf2::LinearSystem system;            // one row per constraint
};

/// Row j marks the variables in constraint j's support; rhs bit is 1 iff
/// eigenvalue * observable sign = -1. Any GF(2) solution v decodes to a
/// +-1 model via m = (-1)^v.
LhvSystem build_lhv_system(const ConstraintSet& set);

struct LhvVerdict {
  bool satisfiable = false;
  /// +-1 value per system variable when satisfiable.
  std::vector<int> assignment;
  /// When unsatisfiable: 1-based constraint indices whose GF(2) rows sum
  /// to zero while the rhs bits sum to 1.
  std::vector<int> certificate;
};

/// Gaussian elimination over GF(2).
LhvVerdict is_classically_satisfiable(const LhvSystem& system);

/// Independent oracle: enumerate all +-1 assignments (at most 24
/// variables) and check every product equation directly.
LhvVerdict brute_force_satisfiable(const ConstraintSet& set);

/// Operator-level audit of the parity argument for the certificate subset.
///
/// Local realism predicts +1 for the product of the constraint left-hand
/// sides whenever every (site, axis) variable occurs an even number of
/// times and all observable coefficients are +1; the eigenvalue product
/// being -1 is then the contradiction. The phase-exact ordered operator
/// product is proportional to identity with sign equal to the eigenvalue
/// product -- quantum mechanics stays consistent where the classical
/// assignment cannot.
struct ParityAudit {
  PauliString operator_product;        // ordered product of the observables
  bool proportional_to_identity = false;
  int quantum_sign = 0;                // sign of the product when +-identity
  int eigenvalue_product = 0;          // prod of (eigenvalue * observable sign)
  int coefficient_sign_product = 0;    // prod of observable signs alone
  bool support_cancels = false;        // GF(2) occurrence sum of the subset is zero
};

struct AvnCertificate {
  EigenReport quantum;
  LhvSystem lhv;
  LhvVerdict classical;
  ParityAudit parity;  // over the certificate subset (all rows when empty verdict)
  bool avn_holds = false;
};

/// Quantum side (eigenequation residuals) plus classical side (GF(2)
/// verdict); AVN holds iff the residuals pass and the system is
/// unsatisfiable.
AvnCertificate certify_avn(const ConstraintSet& set, const StateVector& state,
                           double tol = 1e-10);

}  // namespace tfim
