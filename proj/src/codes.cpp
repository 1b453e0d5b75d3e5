#include "cdmradar/codes.hpp"

#include <algorithm>
#include <bit>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cdmradar {

CodeMatrix hadamard(std::uint32_t order) {
  if (order == 0 || !std::has_single_bit(order))
    throw std::invalid_argument("hadamard: order " + std::to_string(order) + " is not a power of two");
  CodeMatrix h;
  h.order_ = order;
  h.entries_.assign(static_cast<std::size_t>(order) * order, 1);
  // Grow the upper-left k x k block into 2k x 2k in place.
  for (std::uint32_t k = 1; k < order; k *= 2) {
    for (std::uint32_t i = 0; i < k; ++i) {
      for (std::uint32_t j = 0; j < k; ++j) {
        const int v = h.entries_[static_cast<std::size_t>(i) * order + j];
        h.entries_[static_cast<std::size_t>(i) * order + j + k] = v;
        h.entries_[static_cast<std::size_t>(i + k) * order + j] = v;
        h.entries_[static_cast<std::size_t>(i + k) * order + j + k] = -v;
      }
    }
  }
  return h;
}

TxCodeAssignment default_assignment(const RadarConfig& cfg) {
  const std::uint32_t order = cfg.N_c;
  if (order == 0 || !std::has_single_bit(order))
    throw std::invalid_argument("default_assignment: N_c must be a power of two");
  if (cfg.M == 0 || cfg.M > order - 1)
    throw std::invalid_argument("default_assignment: M = " + std::to_string(cfg.M) +
                                " transmitters do not fit in " + std::to_string(order - 1) +
                                " non-constant code rows");
  TxCodeAssignment a;
  if (cfg.M == 3 && order == 8) {
    a.rows = {4, 2, 1};
    return a;
  }
  for (std::uint32_t p = 1; p < order && a.rows.size() < cfg.M; p *= 2) a.rows.push_back(p);
  for (std::uint32_t r = 1; r < order && a.rows.size() < cfg.M; ++r)
    if (!std::has_single_bit(r)) a.rows.push_back(r);
  return a;
}

void check_assignment(const TxCodeAssignment& a, std::uint32_t order, std::uint32_t transmitters) {
  if (a.rows.size() != transmitters)
    throw std::invalid_argument("code assignment has " + std::to_string(a.rows.size()) + " rows for " +
                                std::to_string(transmitters) + " transmitters");
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i] == 0 || a.rows[i] >= order)
      throw std::invalid_argument("code row " + std::to_string(a.rows[i]) + " outside [1, " +
                                  std::to_string(order - 1) + "]");
    if (std::find(a.rows.begin(), a.rows.begin() + static_cast<std::ptrdiff_t>(i), a.rows[i]) !=
        a.rows.begin() + static_cast<std::ptrdiff_t>(i))
      throw std::invalid_argument("code row " + std::to_string(a.rows[i]) + " assigned twice");
  }
}

double phase_of(int code_entry) {
  if (code_entry == 1) return 0.0;
  if (code_entry == -1) return std::numbers::pi;
  throw std::invalid_argument("phase_of: code entry must be +1 or -1, got " + std::to_string(code_entry));
}

long long dot(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long long>(a[i]) * b[i];
  return s;
}

}  // namespace cdmradar
