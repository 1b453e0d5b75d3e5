#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cdmradar/synth.hpp"

namespace cdmradar {

/// Frequency-domain analytic-signal converter for a fixed length.
///
/// Keeps bin 0 (and bin P/2 for even P), doubles bins 1..ceil(P/2)-1 and
/// zeroes the negative-frequency half. Holds its FFTW plans; not copyable.
class AnalyticSignal {
 public:
  explicit AnalyticSignal(std::size_t length);
  ~AnalyticSignal();
  AnalyticSignal(const AnalyticSignal&) = delete;
  AnalyticSignal& operator=(const AnalyticSignal&) = delete;

  std::size_t length() const { return length_; }
  void transform(std::span<const double> x, std::span<cdouble> out);

 private:
  struct Plans;
  std::size_t length_;
  std::unique_ptr<Plans> plans_;
};

/// One-shot analytic signal of a real sequence (length >= 2).
std::vector<cdouble> analytic_signal(std::span<const double> x);

/// Every D-th sample starting at index 0; output length floor(len / D).
std::vector<cdouble> decimate(std::span<const cdouble> x, std::uint32_t D);

/// Complex, decimated cube indexed (snapshot, chirp, receiver, decimated sample).
struct BasebandCube {
  RadarConfig cfg;
  std::uint32_t K = 0;
  std::uint32_t samples = 0;  ///< decimated samples per chirp
  std::vector<cdouble> data;

  std::size_t index(std::uint32_t k, std::uint32_t i, std::uint32_t n, std::uint32_t s) const {
    return ((static_cast<std::size_t>(k) * cfg.N_c + i) * cfg.N + n) * samples + s;
  }
  std::span<const cdouble> trace(std::uint32_t k, std::uint32_t i, std::uint32_t n) const {
    return {data.data() + index(k, i, n, 0), samples};
  }
};

/// Front-end conditioning: analytic signal (real captures only), then decimation.
///
/// The simplified beat model puts targets at negative beat frequency, so the
/// positive-frequency analytic signal of a real capture is the conjugate of
/// that model; real traces are conjugated after the Hilbert stage to restore it.
BasebandCube front_end(const RawCapture& capture);

}  // namespace cdmradar
