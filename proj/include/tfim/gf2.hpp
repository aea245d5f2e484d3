#pragma once

#include <cstdint>
#include <vector>

namespace tfim::gf2 {

/// Dense bit vector packed in 64-bit words.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(int bits);

  bool test(int i) const;
  void set(int i);
  void flip(int i);
  BitRow& operator^=(const BitRow& other);
  bool any() const;
  int popcount() const;
  std::vector<int> ones() const;
  int size() const { return bits_; }

  friend bool operator==(const BitRow&, const BitRow&) = default;

 private:
  int bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A x = b over GF(2), rows indexed by equation.
struct LinearSystem {
  int num_vars = 0;
  std::vector<BitRow> rows;
  std::vector<std::uint8_t> rhs;
};

struct Elimination {
  bool consistent = true;
  /// One bit per variable, free variables set to 0. Empty when inconsistent.
  std::vector<std::uint8_t> solution;
  /// When inconsistent: 0-based indices of original rows summing to the
  /// zero vector with odd rhs. Minimal cardinality among the dependencies
  /// surfaced by the elimination order, ties broken lexicographically.
  std::vector<int> certificate;
};

/// Deterministic Gauss-Jordan elimination with row provenance tracking.
Elimination solve(const LinearSystem& sys);

}  // namespace tfim::gf2
