#include "tfim/model.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "tfim/errors.hpp"

namespace tfim {

void IsingParams::validate() const {
  if (n < 2) {
    throw std::invalid_argument("IsingParams: need at least 2 sites, got " + std::to_string(n));
  }
  if (n > 30) {
    throw std::invalid_argument("IsingParams: site count too large");
  }
  if (!(field_b >= 0.0)) {
    throw std::invalid_argument("IsingParams: transverse field must be >= 0");
  }
}

std::vector<std::pair<double, PauliString>> hamiltonian_terms(const IsingParams& params) {
  params.validate();
  std::vector<std::pair<double, PauliString>> terms;
  terms.reserve(static_cast<std::size_t>(2 * params.n));
  for (int j = 1; j <= params.n; ++j) {
    const int next = (j == params.n) ? 1 : j + 1;
    PauliString bond = PauliString::identity(params.n);
    bond.x_mask |= bond.site_bit(j);
    bond.x_mask |= bond.site_bit(next);
    terms.emplace_back(-1.0, bond);
  }
  for (int j = 1; j <= params.n; ++j) {
    terms.emplace_back(-params.field_b, PauliString::single(params.n, j, 'Z'));
  }
  return terms;
}

Eigen::MatrixXd hamiltonian_matrix(const IsingParams& params, int dense_cap) {
  params.validate();
  if (params.n > dense_cap) {
    throw CapExceededError("hamiltonian_matrix: " + std::to_string(params.n) +
                           " sites exceeds dense cap " + std::to_string(dense_cap));
  }
  const Eigen::Index dim = Eigen::Index{1} << params.n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& [coeff, term] : hamiltonian_terms(params)) {
    // Bond and field strings hold only X and Z letters, so every matrix
    // element is the real coefficient times +-1.
    for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(dim); ++k) {
      const double z_sign = (std::popcount(k & term.z_mask) % 2 == 0) ? 1.0 : -1.0;
      h(static_cast<Eigen::Index>(k ^ term.x_mask), static_cast<Eigen::Index>(k)) += coeff * z_sign;
    }
  }
  return h;
}

Eigen::VectorXcd apply_hamiltonian(const IsingParams& params, const StateVector& v) {
  params.validate();
  if (v.n != params.n) {
    throw std::invalid_argument("apply_hamiltonian: state size does not match params");
  }
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(v.dim());
  for (const auto& [coeff, term] : hamiltonian_terms(params)) {
    acc += coeff * tfim::apply(term, v.amplitudes);
  }
  return acc;
}

SpectrumResult exact_diagonalize(const IsingParams& params, int level_count, double degeneracy_tol,
                                 int dense_cap) {
  params.validate();
  if (params.n > dense_cap) {
    throw CapExceededError("exact_diagonalize: " + std::to_string(params.n) +
                           " sites exceeds dense cap " + std::to_string(dense_cap));
  }
  const Eigen::Index dim = Eigen::Index{1} << params.n;
  if (level_count < 1 || level_count > dim) {
    throw std::invalid_argument("exact_diagonalize: level count must be in [1, 2^n]");
  }
  if (!(degeneracy_tol > 0.0)) {
    throw std::invalid_argument("exact_diagonalize: degeneracy tolerance must be positive");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian_matrix(params, dense_cap));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("exact_diagonalize: eigensolver failed");
  }

  SpectrumResult result;
  result.degeneracy_tol = degeneracy_tol;
  result.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + dim);

  for (Eigen::Index i = 0; i < dim; ++i) {
    if (result.levels.empty() ||
        result.eigenvalues[static_cast<std::size_t>(i)] -
                result.eigenvalues[static_cast<std::size_t>(result.levels.back().back())] >
            degeneracy_tol) {
      result.levels.push_back({static_cast<int>(i)});
    } else {
      result.levels.back().push_back(static_cast<int>(i));
    }
  }

  const int n_levels = std::min<int>(level_count, static_cast<int>(result.levels.size()));
  for (int l = 0; l < n_levels; ++l) {
    SpectrumLevel level;
    level.indices = result.levels[static_cast<std::size_t>(l)];
    level.energy = result.eigenvalues[static_cast<std::size_t>(level.indices.front())];
    for (int idx : level.indices) {
      Eigen::VectorXcd vec = solver.eigenvectors().col(idx).cast<Complex>();
      level.vectors.emplace_back(params.n, std::move(vec));
    }
    result.low_levels.push_back(std::move(level));
  }
  return result;
}

namespace {

void check_field(double b) {
  if (!(b >= 0.0)) {
    throw std::invalid_argument("closed-form coefficients: field must be >= 0");
  }
}

}  // namespace

double xi1(double b) {
  check_field(b);
  return -1.0 + 2.0 * b + 2.0 * std::sqrt(1.0 - b + b * b);
}

double norm1(double b) {
  const double x = xi1(b);
  return 3.0 + x * x;
}

double xi2(double b) {
  check_field(b);
  return -1.0 + 2.0 * b * b + 2.0 * std::sqrt(1.0 + b * b * b * b);
}

double xi3(double b) {
  check_field(b);
  return std::sqrt(1.0 + b * b + std::sqrt(1.0 + b * b * b * b));
}

double norm2_formula(double b) {
  const double s2 = std::sqrt(2.0);
  const double x2 = xi2(b);
  const double x3 = xi3(b);
  const double pair = b + x3 / s2;
  return 1.0 + 3.0 * pair * pair + 0.25 * (2.0 * b + s2 * x3) * (2.0 * b + s2 * x3) +
         (4.0 * b + 2.0 * s2 * x3) * (4.0 * b + 2.0 * s2 * x3) / (4.0 * x3 * x3) +
         (x2 - 2.0 * s2 * b / x3 + 2.0 * s2 * b * x3) * (x2 - 2.0 * s2 * b / x3 + 2.0 * s2 * b * x3);
}

StateVector closed_form_ground_state_3(double b) {
  check_field(b);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
  amps(0b000) = xi1(b);
  amps(0b011) = 1.0;
  amps(0b101) = 1.0;
  amps(0b110) = 1.0;
  return StateVector(3, std::move(amps));  // constructor normalizes by sqrt(norm1)
}

std::array<double, 8> g4_formula_amplitudes(double b) {
  check_field(b);
  const double s2 = std::sqrt(2.0);
  const double x2 = xi2(b);
  const double x3 = xi3(b);
  const double c0000 = x2 - 2.0 * s2 * b * (1.0 - x3 * x3) / x3;
  const double pair = b + x3 / s2;                         // |0011>, |0110>, |1001>, |1100>
  const double alt = (4.0 * b + 2.0 * s2 * x3) / (2.0 * s2 * x3);  // |0101>, |1010>
  return {c0000, pair, alt, pair, pair, alt, pair, 1.0};
}

StateVector closed_form_ground_state_4(double b) {
  const std::array<double, 8> coeffs = g4_formula_amplitudes(b);
  constexpr std::array<int, 8> kEvenKets = {0b0000, 0b0011, 0b0101, 0b0110,
                                            0b1001, 0b1010, 0b1100, 0b1111};
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(16);
  for (std::size_t i = 0; i < kEvenKets.size(); ++i) {
    amps(kEvenKets[i]) = coeffs[i];
  }
  return StateVector(4, std::move(amps));
}

namespace {

StateVector parity_uniform(int n, int parity) {
  if (n < 2 || n > 24) {
    throw std::invalid_argument("parity uniform state: site count must be in [2, 24]");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(dim);
  for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(dim); ++k) {
    if (std::popcount(k) % 2 == parity) {
      amps(static_cast<Eigen::Index>(k)) = 1.0;
    }
  }
  return StateVector(n, std::move(amps));
}

}  // namespace

StateVector even_parity_uniform_state(int n) { return parity_uniform(n, 0); }

StateVector odd_parity_uniform_state(int n) { return parity_uniform(n, 1); }

StateVector first_excited_state_4() {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(16);
  amps(0b0000) = -1.0;
  amps(0b1111) = 1.0;
  return StateVector(4, std::move(amps));
}

}  // namespace tfim
