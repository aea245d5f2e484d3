#include "tfim/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace tfim::gf2 {

BitRow::BitRow(int bits) : bits_(bits), words_((bits + 63) / 64, 0) {
  if (bits < 0) {
    throw std::invalid_argument("BitRow: negative size");
  }
}

bool BitRow::test(int i) const { return (words_[i / 64] >> (i % 64)) & 1; }

void BitRow::set(int i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

void BitRow::flip(int i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

BitRow& BitRow::operator^=(const BitRow& other) {
  if (other.bits_ != bits_) {
    throw std::invalid_argument("BitRow: size mismatch in xor");
  }
  for (std::size_t w = 0; w < words_.size(); ++w) {
    words_[w] ^= other.words_[w];
  }
  return *this;
}

bool BitRow::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

int BitRow::popcount() const {
  int count = 0;
  for (std::uint64_t w : words_) {
    count += std::popcount(w);
  }
  return count;
}

std::vector<int> BitRow::ones() const {
  std::vector<int> out;
  for (int i = 0; i < bits_; ++i) {
    if (test(i)) {
      out.push_back(i);
    }
  }
  return out;
}

Elimination solve(const LinearSystem& sys) {
  const int num_rows = static_cast<int>(sys.rows.size());
  if (static_cast<int>(sys.rhs.size()) != num_rows) {
    throw std::invalid_argument("gf2::solve: rhs size does not match row count");
  }

  std::vector<BitRow> work = sys.rows;
  std::vector<std::uint8_t> rhs = sys.rhs;
  // Provenance: which original rows each working row is a sum of.
  std::vector<BitRow> origin(num_rows, BitRow(num_rows));
  for (int r = 0; r < num_rows; ++r) {
    origin[r].set(r);
  }

  std::vector<int> pivot_row_of_col(sys.num_vars, -1);
  std::vector<bool> is_pivot_row(num_rows, false);

  for (int col = 0; col < sys.num_vars; ++col) {
    int pivot = -1;
    for (int r = 0; r < num_rows; ++r) {
      if (!is_pivot_row[r] && work[r].test(col)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      continue;
    }
    pivot_row_of_col[col] = pivot;
    is_pivot_row[pivot] = true;
    for (int r = 0; r < num_rows; ++r) {
      if (r != pivot && work[r].test(col)) {
        work[r] ^= work[pivot];
        rhs[r] ^= rhs[pivot];
        origin[r] ^= origin[pivot];
      }
    }
  }

  // Fully reduced rows that vanished with rhs 1 witness inconsistency;
  // their provenance is a parity certificate.
  Elimination out;
  std::vector<std::vector<int>> certificates;
  for (int r = 0; r < num_rows; ++r) {
    if (!work[r].any() && rhs[r] == 1) {
      certificates.push_back(origin[r].ones());
    }
  }
  if (!certificates.empty()) {
    out.consistent = false;
    out.certificate = *std::min_element(
        certificates.begin(), certificates.end(), [](const auto& a, const auto& b) {
          if (a.size() != b.size()) return a.size() < b.size();
          return a < b;
        });
    return out;
  }

  out.solution.assign(static_cast<std::size_t>(sys.num_vars), 0);
  // Gauss-Jordan left each pivot row with its pivot column plus free
  // columns only; with free variables fixed to 0 the pivot value is rhs.
  for (int col = 0; col < sys.num_vars; ++col) {
    if (pivot_row_of_col[col] >= 0) {
      out.solution[static_cast<std::size_t>(col)] = rhs[static_cast<std::size_t>(pivot_row_of_col[col])];
    }
  }
  return out;
}

}  // namespace tfim::gf2
