#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cdmradar {

/// Speed of light in vacuum, m/s (exact SI value).
inline constexpr double kSpeedOfLight = 299792458.0;

/// Waveform, sampling and array constants for one radar.
///
/// All quantities are SI. `samples_per_chirp()` is the raw ADC count S per
/// chirp and `decimated_samples()` the post-decimation count.
struct RadarConfig {
  double f_c = 0.0;     ///< carrier frequency, Hz
  double b = 0.0;       ///< sweep bandwidth, Hz
  double T = 0.0;       ///< chirp duration, s
  double f_s = 0.0;     ///< ADC sampling rate, Hz
  std::uint32_t D = 1;  ///< decimation factor
  std::uint32_t M = 1;  ///< transmitters
  std::uint32_t N = 1;  ///< receivers
  std::uint32_t N_c = 2;  ///< code length
  double d_r = 0.0;     ///< receive element spacing, m
  double d_t = 0.0;     ///< transmit element spacing, m
  double r_max = 0.0;   ///< maximum processed range, m

  double slope() const { return b / T; }
  double wavelength() const { return kSpeedOfLight / f_c; }
  std::uint32_t samples_per_chirp() const;
  std::uint32_t decimated_samples() const { return samples_per_chirp() / D; }
  std::uint32_t virtual_channels() const { return M * N; }
  /// Frequency step between decimated fast-time samples, b / Ñ.
  double frequency_step() const { return b / decimated_samples(); }

  bool operator==(const RadarConfig&) const = default;
};

/// The 79 GHz, 3 TX / 4 RX configuration with λ/2 receive and 2λ transmit
/// spacing and a 3 m processing range.
RadarConfig reference_config();

struct Target {
  double r = 0.0;      ///< range, m
  double theta = 0.0;  ///< azimuth, rad
  double sigma = 1.0;  ///< linear amplitude
};

struct Scene {
  std::vector<Target> targets;
  std::optional<double> snr_db;  ///< absent means noiseless
  std::optional<std::vector<double>> channel_phase_errors;  ///< M·N entries, rad
  std::uint64_t seed = 0;
};

/// Virtual element positions d_mn, transmitter index outermost.
struct VirtualAperture {
  std::vector<double> positions;

  std::size_t size() const { return positions.size(); }
  double operator[](std::size_t v) const { return positions[v]; }
};

/// Every violated RadarConfig invariant, one human-readable line each.
std::vector<std::string> validate_config(const RadarConfig& cfg);

/// Throws std::invalid_argument listing all violations when `cfg` is invalid.
void require_valid_config(const RadarConfig& cfg);

/// Scene-level checks against `cfg` (target bounds, phase-error count).
std::vector<std::string> validate_scene(const Scene& scene, const RadarConfig& cfg);

/// Beat frequency (b/T)(2r/c) of a target at range `r`. Negative r throws.
double beat_frequency(const RadarConfig& cfg, double r);

/// Positions (m)·d_t + (n)·d_r for m in [0, M), n in [0, N), m outer.
VirtualAperture virtual_positions(const RadarConfig& cfg);

inline std::size_t virtual_index(const RadarConfig& cfg, std::uint32_t m, std::uint32_t n) {
  return static_cast<std::size_t>(m) * cfg.N + n;
}

double deg_to_rad(double deg);
double rad_to_deg(double rad);

}  // namespace cdmradar
