#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cdmradar/codes.hpp"
#include "cdmradar/dsp.hpp"
#include "cdmradar/params.hpp"

namespace cdmradar {

/// Decoded virtual-channel data indexed (snapshot, virtual channel, sample).
///
/// Channel v = m*N + n. `aperture` holds the element position of every
/// channel so transmitter subsets keep their true geometry.
struct ChannelSnapshots {
  RadarConfig cfg;
  VirtualAperture aperture;
  std::uint32_t K = 0;
  std::uint32_t samples = 0;
  std::vector<cdouble> data;
  bool calibrated = false;
  double sin_theta_ref = 0.0;  ///< angles are measured relative to this after calibration

  std::size_t channels() const { return aperture.size(); }
  std::size_t index(std::uint32_t k, std::size_t v, std::uint32_t s) const {
    return (static_cast<std::size_t>(k) * channels() + v) * samples + s;
  }
  std::span<const cdouble> trace(std::uint32_t k, std::size_t v) const {
    return {data.data() + index(k, v, 0), samples};
  }
  std::span<cdouble> trace(std::uint32_t k, std::size_t v) { return {data.data() + index(k, v, 0), samples}; }
};

/// Known point target used for baseband calibration.
struct ReferenceSpec {
  double r_ref = 1.0;
  double theta_ref = 0.0;
  /// Decoded capture of the physical reference; absent means the reference
  /// is simulated from the signal model.
  std::optional<ChannelSnapshots> measured;
};

/// Single-snapshot decoded reference response plus its location.
struct CalibrationReference {
  ChannelSnapshots signal;
  double r_ref = 0.0;
  double theta_ref = 0.0;
};

/// Correlate each receiver's chirps with every transmitter's code:
/// channel (m, n) = sum_i c_i(m) * chirp_i(n).
ChannelSnapshots decode(const BasebandCube& cube, const CodeMatrix& codes, const TxCodeAssignment& assignment);

/// Decoded, noiseless, unit-amplitude response of a target at the reference
/// location, or the snapshot average of a measured reference.
CalibrationReference reference_signal(const RadarConfig& cfg, const ReferenceSpec& ref,
                                      const TxCodeAssignment& assignment);

/// Range-restoration ramp exp(-j 4pi (f_c + (b/Ñ) k) r_ref / c), k = 0..Ñ-1.
std::vector<cdouble> restoration_vector(const RadarConfig& cfg, double r_ref);

/// y = x * conj(ref) * restoration, per channel and sample.
ChannelSnapshots calibrate(const ChannelSnapshots& x, const CalibrationReference& ref);

/// Keep only the channels of the listed transmitters (in the given order).
ChannelSnapshots select_transmitters(const ChannelSnapshots& x, std::span<const std::uint32_t> transmitters);

}  // namespace cdmradar
