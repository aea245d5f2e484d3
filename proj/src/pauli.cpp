#include "tfim/pauli.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "tfim/errors.hpp"

namespace tfim {

namespace {

constexpr std::array<Complex, 4> kIPowers = {Complex{1, 0}, Complex{0, 1}, Complex{-1, 0}, Complex{0, -1}};

int mod4(int v) { return ((v % 4) + 4) % 4; }

void check_site_count(int n) {
  if (n < 1 || n > 63) {
    throw std::invalid_argument("PauliString: site count must be in [1, 63], got " + std::to_string(n));
  }
}

void check_same_n(const PauliString& a, const PauliString& b, const char* op) {
  if (a.n != b.n) {
    throw std::invalid_argument(std::string(op) + ": site counts differ (" + std::to_string(a.n) + " vs " +
                                std::to_string(b.n) + ")");
  }
}

}  // namespace

PauliString PauliString::identity(int n_sites) {
  check_site_count(n_sites);
  return PauliString{n_sites, 0, 0, 0};
}

PauliString PauliString::single(int n_sites, int site, char letter) {
  check_site_count(n_sites);
  if (site < 1 || site > n_sites) {
    throw std::invalid_argument("PauliString::single: site out of range");
  }
  PauliString p = identity(n_sites);
  const std::uint64_t bit = p.site_bit(site);
  switch (letter) {
    case 'I':
      break;
    case 'X':
      p.x_mask |= bit;
      break;
    case 'Y':
      p.x_mask |= bit;
      p.z_mask |= bit;
      p.phase_exp = 1;  // Y = i * XZ
      break;
    case 'Z':
      p.z_mask |= bit;
      break;
    default:
      throw std::invalid_argument(std::string("PauliString::single: bad letter '") + letter + "'");
  }
  return p;
}

PauliString PauliString::from_letters(std::string_view letters, int sign) {
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("PauliString::from_letters: sign must be +-1");
  }
  const int n = static_cast<int>(letters.size());
  check_site_count(n);
  PauliString p = identity(n);
  for (int site = 1; site <= n; ++site) {
    const char c = letters[site - 1];
    const std::uint64_t bit = p.site_bit(site);
    switch (c) {
      case 'I':
        break;
      case 'X':
        p.x_mask |= bit;
        break;
      case 'Y':
        p.x_mask |= bit;
        p.z_mask |= bit;
        p.phase_exp = mod4(p.phase_exp + 1);
        break;
      case 'Z':
        p.z_mask |= bit;
        break;
      default:
        throw std::invalid_argument(std::string("PauliString::from_letters: bad letter '") + c + "'");
    }
  }
  if (sign < 0) {
    p.phase_exp = mod4(p.phase_exp + 2);
  }
  return p;
}

std::uint64_t PauliString::site_bit(int site) const {
  if (site < 1 || site > n) {
    throw std::invalid_argument("PauliString::site_bit: site out of range");
  }
  return std::uint64_t{1} << (n - site);
}

char PauliString::letter_at(int site) const {
  const std::uint64_t bit = site_bit(site);
  const bool x = (x_mask & bit) != 0;
  const bool z = (z_mask & bit) != 0;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

int PauliString::weight() const { return std::popcount(x_mask | z_mask); }

bool PauliString::is_hermitian() const {
  return mod4(phase_exp - std::popcount(x_mask & z_mask)) % 2 == 0;
}

int PauliString::sign() const {
  const int d = mod4(phase_exp - std::popcount(x_mask & z_mask));
  if (d == 0) return +1;
  if (d == 2) return -1;
  throw std::invalid_argument("PauliString::sign: string is not Hermitian");
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  check_same_n(a, b, "multiply");
  PauliString p;
  p.n = a.n;
  p.x_mask = a.x_mask ^ b.x_mask;
  p.z_mask = a.z_mask ^ b.z_mask;
  // Moving a's Z factors past b's X factors costs one -1 per collision.
  p.phase_exp = mod4(a.phase_exp + b.phase_exp + 2 * std::popcount(a.z_mask & b.x_mask));
  return p;
}

bool commutes(const PauliString& a, const PauliString& b) {
  check_same_n(a, b, "commutes");
  const int form = std::popcount(a.x_mask & b.z_mask) + std::popcount(a.z_mask & b.x_mask);
  return form % 2 == 0;
}

Eigen::VectorXcd apply(const PauliString& p, const Eigen::VectorXcd& v) {
  const Eigen::Index dim = Eigen::Index{1} << p.n;
  if (v.size() != dim) {
    throw std::invalid_argument("apply: state dimension does not match site count");
  }
  const Complex phase = kIPowers[mod4(p.phase_exp)];
  Eigen::VectorXcd out(dim);
  for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(dim); ++k) {
    const double z_sign = (std::popcount(k & p.z_mask) % 2 == 0) ? 1.0 : -1.0;
    out(static_cast<Eigen::Index>(k ^ p.x_mask)) = phase * z_sign * v(static_cast<Eigen::Index>(k));
  }
  return out;
}

StateVector apply(const PauliString& p, const StateVector& v) {
  if (p.n != v.n) {
    throw std::invalid_argument("apply: site counts differ");
  }
  StateVector out;
  out.n = v.n;
  out.amplitudes = tfim::apply(p, v.amplitudes);
  return out;
}

Eigen::MatrixXcd to_matrix(const PauliString& p, int dense_cap) {
  if (p.n > dense_cap) {
    throw CapExceededError("to_matrix: " + std::to_string(p.n) + " sites exceeds dense cap " +
                           std::to_string(dense_cap));
  }
  // Site letter under the (x,z) convention; Y's extra i lives in phase_exp.
  const auto letter_matrix = [](bool x, bool z) {
    Eigen::MatrixXcd m(2, 2);
    if (x && z) {
      m << 0, -1, 1, 0;  // XZ
    } else if (x) {
      m << 0, 1, 1, 0;
    } else if (z) {
      m << 1, 0, 0, -1;
    } else {
      m = Eigen::MatrixXcd::Identity(2, 2);
    }
    return m;
  };
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Constant(1, 1, kIPowers[mod4(p.phase_exp)]);
  for (int site = 1; site <= p.n; ++site) {
    const std::uint64_t bit = p.site_bit(site);
    const Eigen::MatrixXcd letter = letter_matrix((p.x_mask & bit) != 0, (p.z_mask & bit) != 0);
    result = Eigen::kroneckerProduct(result, letter).eval();
  }
  return result;
}

namespace {

bool valid_letter(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

PauliString parse_impl(std::string_view text, int n_sites /* 0 = infer */) {
  std::string s(text);
  // Trim.
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) {
    throw std::invalid_argument("parse_pauli: empty string");
  }
  s = s.substr(first, last - first + 1);

  int sign = +1;
  if (s.front() == '+' || s.front() == '-') {
    sign = (s.front() == '-') ? -1 : +1;
    s.erase(0, 1);
    const auto next = s.find_first_not_of(" \t");
    if (next == std::string::npos) {
      throw std::invalid_argument("parse_pauli: sign without operator");
    }
    s.erase(0, next);
  }

  const bool indexed = s.find_first_of("0123456789") != std::string::npos;
  if (!indexed && s.find_first_of(" \t") == std::string::npos) {
    // Compact form.
    for (char c : s) {
      if (!valid_letter(c)) {
        throw std::invalid_argument(std::string("parse_pauli: bad letter '") + c + "'");
      }
    }
    const int n = (n_sites > 0) ? n_sites : static_cast<int>(s.size());
    if (static_cast<int>(s.size()) != n) {
      throw std::invalid_argument("parse_pauli: compact string length " + std::to_string(s.size()) +
                                  " does not match site count " + std::to_string(n));
    }
    return PauliString::from_letters(s, sign);
  }

  // Site-indexed tokens, e.g. "Z1 Y2 Y3".
  std::map<int, char> sites;
  std::istringstream in(s);
  std::string token;
  while (in >> token) {
    if (token.size() < 2 || !valid_letter(token[0])) {
      throw std::invalid_argument("parse_pauli: bad token '" + token + "'");
    }
    for (std::size_t i = 1; i < token.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(token[i]))) {
        throw std::invalid_argument("parse_pauli: bad token '" + token + "'");
      }
    }
    int site = 0;
    try {
      site = std::stoi(token.substr(1));
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("parse_pauli: site index out of range in '" + token + "'");
    }
    if (site < 1 || site > 63) {
      throw std::invalid_argument("parse_pauli: sites are 1-based and at most 63, got " + token);
    }
    if (!sites.emplace(site, token[0]).second) {
      throw std::invalid_argument("parse_pauli: duplicate site index " + std::to_string(site));
    }
  }
  if (sites.empty()) {
    throw std::invalid_argument("parse_pauli: no tokens");
  }
  const int max_site = sites.rbegin()->first;
  const int n = (n_sites > 0) ? n_sites : max_site;
  if (max_site > n) {
    throw std::invalid_argument("parse_pauli: site " + std::to_string(max_site) +
                                " out of range for n = " + std::to_string(n));
  }
  std::string letters(static_cast<std::size_t>(n), 'I');
  for (const auto& [site, letter] : sites) {
    letters[static_cast<std::size_t>(site - 1)] = letter;
  }
  return PauliString::from_letters(letters, sign);
}

}  // namespace

PauliString parse_pauli(std::string_view text) { return parse_impl(text, 0); }

PauliString parse_pauli(std::string_view text, int n_sites) {
  check_site_count(n_sites);
  return parse_impl(text, n_sites);
}

std::string format_pauli(const PauliString& p) {
  const int d = mod4(p.phase_exp - std::popcount(p.x_mask & p.z_mask));
  static constexpr const char* kPrefix[4] = {"+", "i", "-", "-i"};
  std::string out = kPrefix[d];
  for (int site = 1; site <= p.n; ++site) {
    out += p.letter_at(site);
  }
  return out;
}

}  // namespace tfim
