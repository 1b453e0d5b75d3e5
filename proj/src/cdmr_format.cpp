#include "cdmradar/cdmr_format.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace cdmradar {

namespace {

constexpr std::array<char, 4> kMagic{'C', 'D', 'M', 'R'};

class ByteWriter {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void raw(const char* p, std::size_t n) { bytes_.insert(bytes_.end(), p, p + n); }
  const std::vector<char>& bytes() const { return bytes_; }

 private:
  std::vector<char> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(const std::vector<char>& b) : bytes_(b) {}
  std::uint8_t u8() { return static_cast<std::uint8_t>(bytes_[pos_++]); }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::size_t position() const { return pos_; }

 private:
  const std::vector<char>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::size_t write_cdmr(const RawCapture& capture, std::ostream& out) {
  const RadarConfig& cfg = capture.cfg;
  if (capture.samples.size() != capture.expected_size())
    throw std::invalid_argument("write_cdmr: sample count " + std::to_string(capture.samples.size()) +
                                " does not match K*N_c*N*S = " + std::to_string(capture.expected_size()));
  ByteWriter w;
  w.raw(kMagic.data(), kMagic.size());
  w.u32(kCdmrVersion);
  w.u32(cfg.M);
  w.u32(cfg.N);
  w.u32(cfg.N_c);
  w.u32(cfg.samples_per_chirp());
  w.u32(capture.K);
  w.u32(cfg.D);
  w.u8(static_cast<std::uint8_t>(capture.kind));
  for (double v : {cfg.f_c, cfg.b, cfg.T, cfg.f_s, cfg.d_r, cfg.d_t, cfg.r_max}) w.f64(v);
  for (const auto& z : capture.samples) {
    w.f32(static_cast<float>(z.real()));
    if (capture.kind == SampleKind::Complex) w.f32(static_cast<float>(z.imag()));
  }
  const auto& bytes = w.bytes();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError(FormatError::Kind::Io, "write_cdmr: stream write failed");
  return bytes.size();
}

std::size_t write_cdmr(const RawCapture& capture, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(FormatError::Kind::Io, "cannot open " + path.string() + " for writing");
  return write_cdmr(capture, out);
}

RawCapture read_cdmr(std::istream& in) {
  const std::vector<char> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (bytes.size() < kMagic.size() || std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0)
    throw FormatError(FormatError::Kind::BadMagic, "bad magic: not a CDMR capture");
  if (bytes.size() < kCdmrHeaderBytes)
    throw FormatError(FormatError::Kind::TruncatedHeader, "truncated header: " + std::to_string(bytes.size()) +
                                                              " bytes, need " + std::to_string(kCdmrHeaderBytes));
  ByteReader r(bytes);
  for (std::size_t i = 0; i < kMagic.size(); ++i) r.u8();
  if (const auto version = r.u32(); version != kCdmrVersion)
    throw FormatError(FormatError::Kind::VersionMismatch,
                      "version mismatch: file has " + std::to_string(version) + ", reader supports " +
                          std::to_string(kCdmrVersion));

  RawCapture cap;
  RadarConfig& cfg = cap.cfg;
  cfg.M = r.u32();
  cfg.N = r.u32();
  cfg.N_c = r.u32();
  const std::uint32_t S = r.u32();
  cap.K = r.u32();
  cfg.D = r.u32();
  const std::uint8_t kind = r.u8();
  cfg.f_c = r.f64();
  cfg.b = r.f64();
  cfg.T = r.f64();
  cfg.f_s = r.f64();
  cfg.d_r = r.f64();
  cfg.d_t = r.f64();
  cfg.r_max = r.f64();

  if (kind > 1) throw FormatError(FormatError::Kind::BadHeader, "bad header: unknown sample kind " + std::to_string(kind));
  cap.kind = static_cast<SampleKind>(kind);
  if (S != cfg.samples_per_chirp())
    throw FormatError(FormatError::Kind::BadHeader, "bad header: S = " + std::to_string(S) +
                                                        " disagrees with round(T*f_s) = " +
                                                        std::to_string(cfg.samples_per_chirp()));

  const std::uint64_t count = static_cast<std::uint64_t>(cap.K) * cfg.N_c * cfg.N * S;
  const std::uint64_t width = cap.kind == SampleKind::Complex ? 8 : 4;
  const std::uint64_t expected = count * width;
  const std::uint64_t actual = bytes.size() - kCdmrHeaderBytes;
  if (actual < expected)
    throw FormatError(FormatError::Kind::TruncatedPayload, "truncated payload: expected " + std::to_string(expected) +
                                                               " bytes, got " + std::to_string(actual));
  if (actual > expected)
    throw FormatError(FormatError::Kind::TrailingData, "trailing data: expected " + std::to_string(expected) +
                                                           " payload bytes, got " + std::to_string(actual));

  cap.samples.resize(count);
  for (auto& z : cap.samples) {
    const double re = r.f32();
    const double im = cap.kind == SampleKind::Complex ? static_cast<double>(r.f32()) : 0.0;
    z = {re, im};
  }
  return cap;
}

RawCapture read_cdmr(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatError::Kind::Io, "cannot open " + path.string());
  return read_cdmr(in);
}

}  // namespace cdmradar
