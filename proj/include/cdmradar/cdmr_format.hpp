#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "cdmradar/synth.hpp"

namespace cdmradar {

// Layout (little-endian, no padding):
//   "CDMR" | u32 version=1 | u32 M, N, N_c, S, K | u32 D | u8 kind |
//   f64 f_c, b, T, f_s, d_r, d_t, r_max | float32 samples (k, i, n, s) row-major
inline constexpr std::uint32_t kCdmrVersion = 1;
inline constexpr std::size_t kCdmrHeaderBytes = 4 + 4 + 5 * 4 + 4 + 1 + 7 * 8;

class FormatError : public std::runtime_error {
 public:
  enum class Kind { BadMagic, VersionMismatch, TruncatedHeader, BadHeader, TruncatedPayload, TrailingData, Io };

  FormatError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Writes header + payload; returns the number of bytes written.
std::size_t write_cdmr(const RawCapture& capture, std::ostream& out);
std::size_t write_cdmr(const RawCapture& capture, const std::filesystem::path& path);

RawCapture read_cdmr(std::istream& in);
RawCapture read_cdmr(const std::filesystem::path& path);

}  // namespace cdmradar
