#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "tfim/state.hpp"

namespace tfim {

/// N-site Pauli string as a bitmask pair with an i-power phase ledger.
///
/// The operator value is i^phase_exp * prod_j W_j, where the site letter
/// W_j is read from the mask pair at site j under the fixed convention
/// (x,z) = (0,0) -> I, (1,0) -> X, (0,1) -> Z, (1,1) -> XZ. The letter Y
/// is stored as (1,1) together with one unit of phase_exp, since Y = i*XZ.
/// Site 1 occupies the most significant used mask bit, matching the basis
/// convention of StateVector.
///
/// A string is Hermitian iff phase_exp == popcount(x & z) (mod 2); a
/// Hermitian string carries an overall coefficient of +1 or -1 relative
/// to its canonical letter product, see sign().
struct PauliString {
  int n = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  int phase_exp = 0;  // mod 4

  static PauliString identity(int n_sites);

  /// Single-letter string; site is 1-based, letter in {I, X, Y, Z}.
  static PauliString single(int n_sites, int site, char letter);

  /// Canonical letter string such as "ZYY", with an overall sign of +-1.
  static PauliString from_letters(std::string_view letters, int sign = +1);

  std::uint64_t site_bit(int site) const;  // mask bit for a 1-based site
  char letter_at(int site) const;
  bool is_identity_mask() const { return x_mask == 0 && z_mask == 0; }
  int weight() const;  // number of non-identity sites

  bool is_hermitian() const;

  /// Overall coefficient of a Hermitian string: +1 or -1. Throws
  /// std::invalid_argument for non-Hermitian strings.
  int sign() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
};

/// Exact operator product a*b: masks combine by XOR, the phase picks up
/// 2*popcount(a.z & b.x) from moving Z factors past X factors.
PauliString multiply(const PauliString& a, const PauliString& b);

/// Symplectic commutation test:
/// popcount(a.x & b.z) + popcount(a.z & b.x) even.
bool commutes(const PauliString& a, const PauliString& b);

/// p acting on v in O(2^n): basis-index XOR with x_mask and per-component
/// phase (-1)^popcount(index & z_mask) times i^phase_exp. No dense matrix.
Eigen::VectorXcd apply(const PauliString& p, const Eigen::VectorXcd& v);
StateVector apply(const PauliString& p, const StateVector& v);

/// Dense 2^n x 2^n oracle: Kronecker product of the single-site letter
/// matrices times i^phase_exp. Kept independent of apply() so the two
/// routes check each other. Throws CapExceededError above the cap.
Eigen::MatrixXcd to_matrix(const PauliString& p, int dense_cap = 10);

/// Text grammar: optional sign, then either a compact letter string
/// ("-YYZ") or whitespace-separated site-indexed tokens ("Z1 Y2 Y3");
/// sites are 1-based. Rejects any phase other than +-1. The one-argument
/// form infers n (compact: length; indexed: largest site index).
PauliString parse_pauli(std::string_view text);
PauliString parse_pauli(std::string_view text, int n_sites);

/// Canonical form: explicit sign followed by compact letters, e.g. "-YYZ".
/// Non-Hermitian strings render with an "i" or "-i" prefix.
std::string format_pauli(const PauliString& p);

}  // namespace tfim
