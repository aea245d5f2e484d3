#include "tfim/state.hpp"

#include <stdexcept>
#include <string>

namespace tfim {

StateVector::StateVector(int n_sites, Eigen::VectorXcd amps) : n(n_sites), amplitudes(std::move(amps)) {
  if (n < 1 || n > 30) {
    throw std::invalid_argument("StateVector: site count must be in [1, 30], got " + std::to_string(n));
  }
  const Eigen::Index want = Eigen::Index{1} << n;
  if (amplitudes.size() != want) {
    throw std::invalid_argument("StateVector: expected 2^" + std::to_string(n) + " amplitudes, got " +
                                std::to_string(amplitudes.size()));
  }
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) {
    throw std::invalid_argument("StateVector: zero-norm amplitude vector");
  }
  amplitudes /= norm;
}

StateVector StateVector::basis_state(int n_sites, std::uint64_t index) {
  if (n_sites < 1 || n_sites > 30) {
    throw std::invalid_argument("basis_state: site count must be in [1, 30]");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  if (index >= static_cast<std::uint64_t>(dim)) {
    throw std::invalid_argument("basis_state: index out of range");
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(dim);
  amps(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(n_sites, std::move(amps));
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.n != b.n) {
    throw std::invalid_argument("inner: site counts differ");
  }
  return a.amplitudes.dot(b.amplitudes);
}

double overlap(const StateVector& a, const StateVector& b) { return std::abs(inner(a, b)); }

}  // namespace tfim
