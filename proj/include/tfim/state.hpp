#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace tfim {

using Complex = std::complex<double>;

/// Normalized amplitude vector over the computational (sigma^z) basis.
///
/// Basis index k spells |b1 b2 ... bn> with site 1 in the most significant
/// bit and b = 0 meaning sigma^z eigenvalue +1, so index 0 is |00...0> and
/// index 2^n - 1 is |11...1>.
struct StateVector {
  int n = 0;
  Eigen::VectorXcd amplitudes;

  StateVector() = default;

  /// Takes ownership of the amplitudes and normalizes them. Throws
  /// std::invalid_argument if the size is not 2^n or the norm is zero.
  StateVector(int n_sites, Eigen::VectorXcd amps);

  static StateVector basis_state(int n_sites, std::uint64_t index);

  Eigen::Index dim() const { return amplitudes.size(); }
};

Complex inner(const StateVector& a, const StateVector& b);

/// |<a|b>|
double overlap(const StateVector& a, const StateVector& b);

}  // namespace tfim
