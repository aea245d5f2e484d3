#include "tfim/avn.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

#include "tfim/errors.hpp"

namespace tfim {

ConstraintSet::ConstraintSet(int n_sites, std::vector<Constraint> constraints)
    : n_(n_sites), constraints_(std::move(constraints)) {
  if (n_ < 1) {
    throw std::invalid_argument("ConstraintSet: invalid site count");
  }
  for (std::size_t j = 0; j < constraints_.size(); ++j) {
    const Constraint& c = constraints_[j];
    if (c.observable.n != n_) {
      throw std::invalid_argument("ConstraintSet: constraint " + std::to_string(j + 1) +
                                  " has mismatched site count");
    }
    if (!c.observable.is_hermitian()) {
      throw std::invalid_argument("ConstraintSet: constraint " + std::to_string(j + 1) +
                                  " observable is not Hermitian");
    }
    if (c.eigenvalue != +1 && c.eigenvalue != -1) {
      throw std::invalid_argument("ConstraintSet: constraint " + std::to_string(j + 1) +
                                  " eigenvalue must be +-1");
    }
  }
  for (std::size_t j = 0; j < constraints_.size(); ++j) {
    for (std::size_t k = j + 1; k < constraints_.size(); ++k) {
      if (!commutes(constraints_[j].observable, constraints_[k].observable)) {
        throw std::invalid_argument("ConstraintSet: observables " + std::to_string(j + 1) + " and " +
                                    std::to_string(k + 1) + " do not commute");
      }
    }
  }
}

ConstraintSet standard_ghz_set(int n_sites) {
  if (n_sites < 3) {
    throw std::invalid_argument("standard_ghz_set: need at least 3 sites");
  }
  const auto with_y_at = [n_sites](int a, int b) {
    std::string letters(static_cast<std::size_t>(n_sites), 'Z');
    letters[static_cast<std::size_t>(a - 1)] = 'Y';
    letters[static_cast<std::size_t>(b - 1)] = 'Y';
    return PauliString::from_letters(letters);
  };
  std::vector<Constraint> constraints;
  constraints.push_back({with_y_at(2, 3), -1});
  constraints.push_back({with_y_at(1, 3), -1});
  constraints.push_back({with_y_at(1, 2), -1});
  constraints.push_back({PauliString::from_letters(std::string(static_cast<std::size_t>(n_sites), 'Z')), +1});
  return ConstraintSet(n_sites, std::move(constraints));
}

ConstraintSet excited_ghz_set_4() {
  std::vector<Constraint> constraints;
  constraints.push_back({PauliString::from_letters("XXYY"), +1});
  constraints.push_back({PauliString::from_letters("XYXY"), +1});
  constraints.push_back({PauliString::from_letters("XYYX"), +1});
  constraints.push_back({PauliString::from_letters("XXXX"), -1});
  return ConstraintSet(4, std::move(constraints));
}

EigenReport verify_eigenequations(const ConstraintSet& set, const StateVector& state, double tol) {
  if (set.n() != state.n) {
    throw std::invalid_argument("verify_eigenequations: site counts differ");
  }
  EigenReport report;
  report.tol = tol;
  report.passed = true;
  for (std::size_t j = 0; j < set.size(); ++j) {
    const Constraint& c = set.constraints()[j];
    const Eigen::VectorXcd lhs = tfim::apply(c.observable, state.amplitudes);
    const double residual = (lhs - static_cast<double>(c.eigenvalue) * state.amplitudes).norm();
    report.residuals.push_back(residual);
    if (!(residual <= tol)) {
      report.passed = false;
      report.failing.push_back(static_cast<int>(j + 1));
    }
  }
  return report;
}

namespace {

std::vector<LhvVariable> collect_variables(const ConstraintSet& set) {
  std::vector<LhvVariable> vars;
  for (int site = 1; site <= set.n(); ++site) {
    for (char axis : {'x', 'y', 'z'}) {
      for (const Constraint& c : set.constraints()) {
        const char letter = c.observable.letter_at(site);
        if (letter != 'I' && static_cast<char>(std::tolower(letter)) == axis) {
          vars.push_back({site, axis});
          break;
        }
      }
    }
  }
  return vars;
}

int variable_index(const std::vector<LhvVariable>& vars, int site, char axis) {
  const auto it = std::find(vars.begin(), vars.end(), LhvVariable{site, axis});
  return it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
}

}  // namespace

LhvSystem build_lhv_system(const ConstraintSet& set) {
  LhvSystem lhv;
  lhv.variables = collect_variables(set);
  lhv.system.num_vars = static_cast<int>(lhv.variables.size());
  for (const Constraint& c : set.constraints()) {
    gf2::BitRow row(lhv.system.num_vars);
    for (int site = 1; site <= set.n(); ++site) {
      const char letter = c.observable.letter_at(site);
      if (letter == 'I') continue;
      row.set(variable_index(lhv.variables, site, static_cast<char>(std::tolower(letter))));
    }
    lhv.system.rows.push_back(std::move(row));
    // rhs absorbs both the eigenvalue and the observable's +-1 coefficient.
    lhv.system.rhs.push_back(c.eigenvalue * c.observable.sign() == -1 ? 1 : 0);
  }
  return lhv;
}

LhvVerdict is_classically_satisfiable(const LhvSystem& system) {
  const gf2::Elimination elim = gf2::solve(system.system);
  LhvVerdict verdict;
  verdict.satisfiable = elim.consistent;
  if (elim.consistent) {
    verdict.assignment.reserve(elim.solution.size());
    for (std::uint8_t bit : elim.solution) {
      verdict.assignment.push_back(bit ? -1 : +1);  // m = (-1)^v
    }
  } else {
    for (int row : elim.certificate) {
      verdict.certificate.push_back(row + 1);
    }
  }
  return verdict;
}

LhvVerdict brute_force_satisfiable(const ConstraintSet& set) {
  const std::vector<LhvVariable> vars = collect_variables(set);
  const int num_vars = static_cast<int>(vars.size());
  if (num_vars > 24) {
    throw CapExceededError("brute_force_satisfiable: " + std::to_string(num_vars) +
                           " variables exceeds the enumeration cap of 24");
  }
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << num_vars); ++bits) {
    bool all_hold = true;
    for (const Constraint& c : set.constraints()) {
      int product = 1;
      for (int site = 1; site <= set.n(); ++site) {
        const char letter = c.observable.letter_at(site);
        if (letter == 'I') continue;
        const int v = variable_index(vars, site, static_cast<char>(std::tolower(letter)));
        product *= ((bits >> v) & 1) ? -1 : +1;
      }
      if (product != c.eigenvalue * c.observable.sign()) {
        all_hold = false;
        break;
      }
    }
    if (all_hold) {
      LhvVerdict verdict;
      verdict.satisfiable = true;
      for (int v = 0; v < num_vars; ++v) {
        verdict.assignment.push_back(((bits >> v) & 1) ? -1 : +1);
      }
      return verdict;
    }
  }
  return LhvVerdict{};  // unsatisfiable, no certificate from the scan
}

namespace {

ParityAudit audit_subset(const ConstraintSet& set, const LhvSystem& lhv,
                         const std::vector<int>& subset_1based) {
  ParityAudit audit;
  std::vector<int> subset = subset_1based;
  if (subset.empty()) {
    subset.resize(set.size());
    for (std::size_t j = 0; j < set.size(); ++j) subset[j] = static_cast<int>(j + 1);
  }

  PauliString product = PauliString::identity(set.n());
  gf2::BitRow occupancy(lhv.system.num_vars);
  audit.eigenvalue_product = 1;
  audit.coefficient_sign_product = 1;
  for (int idx : subset) {
    const Constraint& c = set.constraints()[static_cast<std::size_t>(idx - 1)];
    product = multiply(product, c.observable);
    occupancy ^= lhv.system.rows[static_cast<std::size_t>(idx - 1)];
    audit.eigenvalue_product *= c.eigenvalue * c.observable.sign();
    audit.coefficient_sign_product *= c.observable.sign();
  }
  audit.operator_product = product;
  audit.proportional_to_identity = product.is_identity_mask();
  audit.quantum_sign =
      (audit.proportional_to_identity && product.is_hermitian()) ? product.sign() : 0;
  audit.support_cancels = !occupancy.any();
  return audit;
}

}  // namespace

AvnCertificate certify_avn(const ConstraintSet& set, const StateVector& state, double tol) {
  AvnCertificate cert;
  cert.quantum = verify_eigenequations(set, state, tol);
  cert.lhv = build_lhv_system(set);
  cert.classical = is_classically_satisfiable(cert.lhv);
  cert.parity = audit_subset(set, cert.lhv, cert.classical.certificate);
  cert.avn_holds = cert.quantum.passed && !cert.classical.satisfiable;
  return cert;
}

}  // namespace tfim
