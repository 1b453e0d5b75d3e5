#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cdmradar/params.hpp"

namespace cdmradar {

/// Sylvester-ordered Hadamard matrix with ±1 entries, row-major.
class CodeMatrix {
 public:
  CodeMatrix() = default;

  std::uint32_t order() const { return order_; }
  std::span<const int> row(std::uint32_t i) const {
    return {entries_.data() + static_cast<std::size_t>(i) * order_, order_};
  }
  int at(std::uint32_t i, std::uint32_t j) const { return entries_[static_cast<std::size_t>(i) * order_ + j]; }

  friend CodeMatrix hadamard(std::uint32_t order);

 private:
  std::uint32_t order_ = 0;
  std::vector<int> entries_;
};

/// Row indices into a CodeMatrix, one per transmitter.
struct TxCodeAssignment {
  std::vector<std::uint32_t> rows;
};

/// Sylvester construction: H_1 = [+1], H_2k = [[H_k, H_k], [H_k, -H_k]].
/// Throws std::invalid_argument unless `order` is a power of two.
CodeMatrix hadamard(std::uint32_t order);

/// Rows [4, 2, 1] for M = 3 with N_c = 8; otherwise ascending powers of two
/// followed by the remaining non-zero rows. Row 0 is never assigned.
TxCodeAssignment default_assignment(const RadarConfig& cfg);

/// Throws unless the rows are distinct and lie in [1, order - 1].
void check_assignment(const TxCodeAssignment& a, std::uint32_t order, std::uint32_t transmitters);

/// +1 -> 0, -1 -> pi.
double phase_of(int code_entry);

long long dot(std::span<const int> a, std::span<const int> b);

}  // namespace cdmradar
