#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "tfim/errors.hpp"
#include "tfim/model.hpp"
#include "tfim/pauli.hpp"

using namespace tfim;

namespace {

// The frozen 8x8 three-site reference matrix: diagonal entries are integer
// multiples of B, off-diagonal entries 0 or -1.
Eigen::MatrixXd reference_h3(double b) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(8, 8);
  const double diag[8] = {-3 * b, -b, -b, b, -b, b, b, 3 * b};
  const std::vector<std::vector<int>> offdiag = {{3, 5, 6}, {2, 4, 7}, {1, 4, 7}, {0, 5, 6},
                                                 {1, 2, 7}, {0, 3, 6}, {0, 3, 5}, {1, 2, 4}};
  for (int r = 0; r < 8; ++r) {
    m(r, r) = diag[r];
    for (int c : offdiag[static_cast<std::size_t>(r)]) {
      m(r, c) = -1.0;
    }
  }
  return m;
}

double ground_energy(const SpectrumResult& s) { return s.eigenvalues.front(); }

}  // namespace

TEST_CASE("hamiltonian_terms: n=3, B=1") {
  const auto terms = hamiltonian_terms({3, 1.0});
  REQUIRE(terms.size() == 6);
  std::multimap<std::string, double> got;
  for (const auto& [coeff, term] : terms) {
    got.insert({format_pauli(term), coeff});
  }
  const std::vector<std::string> expected = {"+XXI", "+IXX", "+XIX", "+ZII", "+IZI", "+IIZ"};
  for (const std::string& op : expected) {
    const auto it = got.find(op);
    REQUIRE(it != got.end());
    CHECK(it->second == -1.0);
  }
}

TEST_CASE("hamiltonian_terms: n=2 wraps to coincident bonds") {
  const auto terms = hamiltonian_terms({2, 0.0});
  REQUIRE(terms.size() == 4);
  CHECK(format_pauli(terms[0].second) == "+XX");
  CHECK(format_pauli(terms[1].second) == "+XX");
  CHECK(terms[0].first == -1.0);
  CHECK(terms[1].first == -1.0);
  CHECK(terms[2].first == 0.0);  // -B with B = 0
  CHECK(terms[3].first == 0.0);
}

TEST_CASE("hamiltonian_terms: n=4 has 8 terms, all Hermitian with sign +1") {
  const auto terms = hamiltonian_terms({4, 0.7});
  REQUIRE(terms.size() == 8);
  for (const auto& [coeff, term] : terms) {
    CHECK(term.is_hermitian());
    CHECK(term.sign() == +1);
  }
}

TEST_CASE("hamiltonian_matrix reproduces the reference 8x8 matrix exactly") {
  for (double b : {0.0, 1.0, 2.5}) {
    const Eigen::MatrixXd h = hamiltonian_matrix({3, b});
    const Eigen::MatrixXd expect = reference_h3(b);
    CHECK((h - expect).cwiseAbs().maxCoeff() == 0.0);  // bit-exact
  }
}

TEST_CASE("hamiltonian_matrix: n=2 at B=0 couples |00>|11> and |01>|10>") {
  const Eigen::MatrixXd h = hamiltonian_matrix({2, 0.0});
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(4, 4);
  expect(0, 3) = expect(3, 0) = -2.0;
  expect(1, 2) = expect(2, 1) = -2.0;
  CHECK((h - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hamiltonian_matrix is exactly symmetric") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const double b = static_cast<double>(rng() % 16) / 4.0;
    const Eigen::MatrixXd h = hamiltonian_matrix({n, b});
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("exact_diagonalize: degeneracy and energies at small n") {
  const SpectrumResult b0 = exact_diagonalize({3, 0.0}, 2);
  CHECK(b0.low_levels.front().indices.size() == 2);
  CHECK(ground_energy(b0) == doctest::Approx(-3.0).epsilon(1e-12));

  const SpectrumResult b1 = exact_diagonalize({3, 1.0}, 1);
  CHECK(b1.low_levels.front().indices.size() == 1);

  const SpectrumResult n4 = exact_diagonalize({4, 0.0}, 2);
  CHECK(n4.low_levels.front().indices.size() == 2);
  CHECK(std::abs(n4.low_levels[1].energy) < 1e-10);  // first excited level at 0
}

TEST_CASE("exact_diagonalize: residuals and orthonormality") {
  const IsingParams params{4, 0.6};
  const SpectrumResult s = exact_diagonalize(params, 3);
  for (const SpectrumLevel& level : s.low_levels) {
    for (std::size_t i = 0; i < level.vectors.size(); ++i) {
      const StateVector& v = level.vectors[i];
      const Eigen::VectorXcd hv = apply_hamiltonian(params, v);
      CHECK((hv - level.energy * v.amplitudes).norm() < 1e-10);
      for (std::size_t j = i + 1; j < level.vectors.size(); ++j) {
        CHECK(overlap(v, level.vectors[j]) < 1e-10);
      }
    }
  }
}

TEST_CASE("exact_diagonalize: caps and level-count validation") {
  CHECK_THROWS_AS(exact_diagonalize({5, 1.0}, 1, 1e-8, 4), CapExceededError);
  CHECK_THROWS_AS(hamiltonian_matrix({5, 1.0}, 4), CapExceededError);
  CHECK_THROWS_AS(exact_diagonalize({3, 1.0}, 9), std::invalid_argument);
  CHECK_THROWS_AS(exact_diagonalize({3, 1.0}, 0), std::invalid_argument);
}

TEST_CASE("negative field is rejected") {
  CHECK_THROWS_AS(hamiltonian_terms({3, -0.5}), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_ground_state_3(-1.0), std::invalid_argument);
}

TEST_CASE("closed-form coefficients at pinned fields") {
  CHECK(xi1(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(xi1(1.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(norm1(1.0) == doctest::Approx(12.0).epsilon(1e-15));
  CHECK(xi3(0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(xi2(0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("closed_form_ground_state_3: frozen amplitudes") {
  const StateVector at0 = closed_form_ground_state_3(0.0);
  for (int k : {0, 3, 5, 6}) {
    CHECK(at0.amplitudes(k).real() == doctest::Approx(0.5).epsilon(1e-14));
  }
  for (int k : {1, 2, 4, 7}) {
    CHECK(std::abs(at0.amplitudes(k)) == 0.0);
  }

  const StateVector at1 = closed_form_ground_state_3(1.0);
  CHECK(at1.amplitudes(0).real() == doctest::Approx(3.0 / std::sqrt(12.0)).epsilon(1e-14));
  CHECK(at1.amplitudes(3).real() == doctest::Approx(1.0 / std::sqrt(12.0)).epsilon(1e-14));
}

TEST_CASE("closed_form_ground_state_3 matches the eigensolver across the grid") {
  for (double b : {0.1, 0.25, 0.5, 1.0, 2.0}) {
    const StateVector formula = closed_form_ground_state_3(b);
    const SpectrumResult s = exact_diagonalize({3, b}, 1);
    REQUIRE(s.low_levels.front().indices.size() == 1);
    CHECK(overlap(s.low_levels.front().vectors.front(), formula) >= 1.0 - 1e-9);
  }
  // B = 0: the formula state lies inside the 2-dimensional ground space.
  const StateVector formula = closed_form_ground_state_3(0.0);
  const SpectrumResult s = exact_diagonalize({3, 0.0}, 1);
  REQUIRE(s.low_levels.front().indices.size() == 2);
  double proj_sq = 0.0;
  for (const StateVector& v : s.low_levels.front().vectors) {
    proj_sq += overlap(v, formula) * overlap(v, formula);
  }
  CHECK(std::sqrt(proj_sq) >= 1.0 - 1e-9);
}

TEST_CASE("closed_form_ground_state_4: formula normalization and symmetries") {
  for (double b : {0.0, 0.3, 0.5, 1.0, 2.0}) {
    const std::array<double, 8> amps = g4_formula_amplitudes(b);
    double norm_sq = 0.0;
    for (double a : amps) norm_sq += a * a;
    CHECK(norm2_formula(b) == doctest::Approx(norm_sq).epsilon(1e-12));

    const StateVector v = closed_form_ground_state_4(b);
    // Site-permutation symmetry of the closed-form expression.
    CHECK(v.amplitudes(0b0011) == v.amplitudes(0b0110));
    CHECK(v.amplitudes(0b0011) == v.amplitudes(0b1001));
    CHECK(v.amplitudes(0b0011) == v.amplitudes(0b1100));
    CHECK(v.amplitudes(0b0101) == v.amplitudes(0b1010));
    for (int k = 0; k < 16; ++k) {
      if (std::popcount(static_cast<unsigned>(k)) % 2 == 1) {
        CHECK(std::abs(v.amplitudes(k)) == 0.0);
      }
    }
  }
}

TEST_CASE("closed_form_ground_state_4 matches the eigensolver") {
  for (double b : {0.5, 1.0}) {
    const StateVector formula = closed_form_ground_state_4(b);
    const SpectrumResult s = exact_diagonalize({4, b}, 1);
    REQUIRE(s.low_levels.front().indices.size() == 1);
    CHECK(overlap(s.low_levels.front().vectors.front(), formula) >= 1.0 - 1e-6);
  }
}

TEST_CASE("closed_form_ground_state_4 at B=0 is uniform over even parity, |1111> included") {
  const StateVector v = closed_form_ground_state_4(0.0);
  const double expect = 1.0 / (2.0 * std::sqrt(2.0));
  for (int k = 0; k < 16; ++k) {
    if (std::popcount(static_cast<unsigned>(k)) % 2 == 0) {
      CHECK(v.amplitudes(k).real() == doctest::Approx(expect).epsilon(1e-14));
    }
  }
  CHECK(v.amplitudes(0b1111).real() == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("parity uniform states") {
  const StateVector even3 = even_parity_uniform_state(3);
  for (int k : {0, 3, 5, 6}) CHECK(even3.amplitudes(k).real() == doctest::Approx(0.5));
  const StateVector odd3 = odd_parity_uniform_state(3);
  for (int k : {1, 2, 4, 7}) CHECK(odd3.amplitudes(k).real() == doctest::Approx(0.5));

  const StateVector even2 = even_parity_uniform_state(2);
  CHECK(even2.amplitudes(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(even2.amplitudes(3).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("parity uniform states are B=0 eigenvectors with eigenvalue -n") {
  for (int n : {2, 3, 4, 5, 6}) {
    const IsingParams params{n, 0.0};
    for (const StateVector& v : {even_parity_uniform_state(n), odd_parity_uniform_state(n)}) {
      const Eigen::VectorXcd hv = apply_hamiltonian(params, v);
      CHECK((hv + static_cast<double>(n) * v.amplitudes).norm() < 1e-12);
      const double energy = std::real(v.amplitudes.dot(hv));
      CHECK(energy == doctest::Approx(-n).epsilon(1e-12));
    }
  }
}

TEST_CASE("even-parity uniform state is local-unitary equivalent to the GHZ state") {
  // H^(x)n maps (|0..0> + |1..1>)/sqrt(2) onto the even-parity uniform
  // state; single-site unitaries, so the two are GHZ-equivalent.
  Eigen::MatrixXcd hadamard(2, 2);
  hadamard << 1, 1, 1, -1;
  hadamard /= std::sqrt(2.0);
  for (int n : {2, 3, 4, 5, 6}) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(1, 1);
    for (int site = 0; site < n; ++site) {
      u = Eigen::kroneckerProduct(u, hadamard).eval();
    }
    Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    ghz(0) = 1.0 / std::sqrt(2.0);
    ghz(ghz.size() - 1) = 1.0 / std::sqrt(2.0);
    const Eigen::VectorXcd mapped = u * ghz;
    CHECK((mapped - even_parity_uniform_state(n).amplitudes).norm() < 1e-12);
  }
}

TEST_CASE("first excited state of the 4-site chain") {
  const StateVector fe = first_excited_state_4();
  CHECK(fe.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-14));
  const Eigen::VectorXcd hv = apply_hamiltonian({4, 0.0}, fe);
  CHECK(hv.norm() < 1e-12);  // eigenvalue 0

  const SpectrumResult s = exact_diagonalize({4, 0.0}, 1);
  for (const StateVector& g : s.low_levels.front().vectors) {
    CHECK(overlap(g, fe) < 1e-10);
  }
}

TEST_CASE("ground degeneracy: 2 at B=0, 1 at B>0, for n up to 8") {
  for (int n = 3; n <= 8; ++n) {
    CHECK(exact_diagonalize({n, 0.0}, 1).low_levels.front().indices.size() == 2);
    for (double b : {0.5, 1.0, 2.0}) {
      CHECK(exact_diagonalize({n, b}, 1).low_levels.front().indices.size() == 1);
    }
  }
}

TEST_CASE("spectrum is invariant under flipping the bond signs on even rings") {
  // The staggered rotation prod_{odd j} Z_j maps -XX bonds to +XX bonds on
  // a bipartite ring. Odd periodic rings are frustrated and genuinely not
  // iso-spectral (n=3: {-3 x2, +1 x6} vs {+3 x2, -1 x6}).
  for (int n : {4, 6}) {
    for (double b : {0.0, 0.7}) {
      const IsingParams params{n, b};
      const Eigen::MatrixXd h = hamiltonian_matrix(params);
      Eigen::MatrixXd flipped = Eigen::MatrixXd::Zero(h.rows(), h.cols());
      for (const auto& [coeff, term] : hamiltonian_terms(params)) {
        const double sign = (term.x_mask != 0) ? -1.0 : 1.0;  // flip bonds only
        for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(h.rows()); ++k) {
          const double z_sign = (std::popcount(k & term.z_mask) % 2 == 0) ? 1.0 : -1.0;
          flipped(static_cast<Eigen::Index>(k ^ term.x_mask), static_cast<Eigen::Index>(k)) +=
              sign * coeff * z_sign;
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> a(h);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> c(flipped);
      CHECK((a.eigenvalues() - c.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  // The frustrated odd ring: flipping the bonds shifts the B=0 ground
  // energy from -3 to -1.
  Eigen::MatrixXd h3 = hamiltonian_matrix({3, 0.0});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ferro(h3);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> frustrated(Eigen::MatrixXd(-h3));
  CHECK(ferro.eigenvalues()(0) == doctest::Approx(-3.0));
  CHECK(frustrated.eigenvalues()(0) == doctest::Approx(-1.0));
}
