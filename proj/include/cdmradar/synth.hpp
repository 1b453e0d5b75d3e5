#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "cdmradar/codes.hpp"
#include "cdmradar/params.hpp"

namespace cdmradar {

using cdouble = std::complex<double>;

enum class SampleKind : std::uint8_t { Real = 0, Complex = 1 };

/// ADC sample cube indexed (snapshot, chirp-in-code, receiver, fast-time).
///
/// Samples are held in double precision; real-kind captures keep a zero
/// imaginary part. The on-disk format is float32, see quantize_to_file_precision().
struct RawCapture {
  RadarConfig cfg;
  std::uint32_t K = 0;
  SampleKind kind = SampleKind::Complex;
  std::vector<cdouble> samples;

  std::uint32_t S() const { return cfg.samples_per_chirp(); }
  std::size_t index(std::uint32_t k, std::uint32_t i, std::uint32_t n, std::uint32_t s) const {
    return ((static_cast<std::size_t>(k) * cfg.N_c + i) * cfg.N + n) * S() + s;
  }
  std::span<const cdouble> trace(std::uint32_t k, std::uint32_t i, std::uint32_t n) const {
    return {samples.data() + index(k, i, n, 0), S()};
  }
  std::span<cdouble> trace(std::uint32_t k, std::uint32_t i, std::uint32_t n) {
    return {samples.data() + index(k, i, n, 0), S()};
  }
  std::size_t expected_size() const {
    return static_cast<std::size_t>(K) * cfg.N_c * cfg.N * S();
  }

  bool operator==(const RawCapture&) const = default;
};

struct SynthOptions {
  SampleKind kind = SampleKind::Real;
  /// Keep the +j*pi*beta*tau^2 residual video phase dropped by the simplified model.
  bool residual_phase = false;
  /// Per-transmitter on/off switch; empty means all transmitters fire.
  std::vector<bool> tx_enabled;
};

/// Round-trip delay (2/c)(r + 0.5 * position * sin(theta)).
double time_delay(double r, double theta, double position);

/// One noiseless beat-signal sample of `target` on virtual channel (m, n)
/// during chirp `i` at fast time `t`:
///   sigma * exp(-j2pi f_c tau - j2pi beta t tau + j phi_i(m)).
cdouble beat_sample(const RadarConfig& cfg, const CodeMatrix& codes, const TxCodeAssignment& assignment,
                    const Target& target, std::uint32_t m, std::uint32_t n, std::uint32_t i, double t,
                    bool residual_phase = false);

/// Coded multi-target capture of `scene`, K snapshots. Channel phase errors
/// are applied before noise; each snapshot draws noise from its own stream
/// seeded by (scene.seed, k). Throws std::invalid_argument on invalid input.
RawCapture synthesize(const RadarConfig& cfg, const Scene& scene, const TxCodeAssignment& assignment,
                      std::uint32_t K, const SynthOptions& options = {});

/// Round every sample to float32 as write_cdmr would store it.
void quantize_to_file_precision(RawCapture& capture);

}  // namespace cdmradar
