#include "cdmradar/chain.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cdmradar/synth.hpp"

namespace cdmradar {

ChannelSnapshots decode(const BasebandCube& cube, const CodeMatrix& codes, const TxCodeAssignment& assignment) {
  const RadarConfig& cfg = cube.cfg;
  if (codes.order() != cfg.N_c)
    throw std::invalid_argument("decode: code order " + std::to_string(codes.order()) +
                                " does not match N_c = " + std::to_string(cfg.N_c));
  check_assignment(assignment, codes.order(), cfg.M);
  if (cube.data.size() != static_cast<std::size_t>(cube.K) * cfg.N_c * cfg.N * cube.samples)
    throw std::invalid_argument("decode: cube size does not match its dimensions");

  ChannelSnapshots out;
  out.cfg = cfg;
  out.aperture = virtual_positions(cfg);
  out.K = cube.K;
  out.samples = cube.samples;
  out.data.assign(static_cast<std::size_t>(out.K) * out.channels() * out.samples, cdouble{});

  for (std::uint32_t k = 0; k < cube.K; ++k)
    for (std::uint32_t m = 0; m < cfg.M; ++m)
      for (std::uint32_t n = 0; n < cfg.N; ++n) {
        auto dst = out.trace(k, virtual_index(cfg, m, n));
        for (std::uint32_t i = 0; i < cfg.N_c; ++i) {
          const double c = codes.at(assignment.rows[m], i);
          const auto src = cube.trace(k, i, n);
          for (std::uint32_t s = 0; s < out.samples; ++s) dst[s] += c * src[s];
        }
      }
  return out;
}

namespace {

void check_reference_location(const RadarConfig& cfg, double r_ref, double theta_ref) {
  if (!(std::isfinite(r_ref) && r_ref > 0.0 && r_ref <= cfg.r_max))
    throw std::invalid_argument("reference range must lie in (0, r_max]");
  if (!(std::isfinite(theta_ref) && std::abs(theta_ref) < std::numbers::pi / 2))
    throw std::invalid_argument("reference angle must satisfy |theta| < pi/2");
}

}  // namespace

CalibrationReference reference_signal(const RadarConfig& cfg, const ReferenceSpec& ref,
                                      const TxCodeAssignment& assignment) {
  check_reference_location(cfg, ref.r_ref, ref.theta_ref);
  CalibrationReference out;
  out.r_ref = ref.r_ref;
  out.theta_ref = ref.theta_ref;

  if (!ref.measured) {
    Scene scene;
    scene.targets.push_back({ref.r_ref, ref.theta_ref, 1.0});
    SynthOptions opts;
    opts.kind = SampleKind::Complex;
    const auto capture = synthesize(cfg, scene, assignment, 1, opts);
    out.signal = decode(front_end(capture), hadamard(cfg.N_c), assignment);
    return out;
  }

  const ChannelSnapshots& meas = *ref.measured;
  if (!(meas.cfg == cfg)) throw std::invalid_argument("measured reference was captured with a different radar config");
  if (meas.K == 0) throw std::invalid_argument("measured reference holds no snapshots");
  out.signal = meas;
  out.signal.K = 1;
  out.signal.data.assign(meas.channels() * meas.samples, cdouble{});
  for (std::uint32_t k = 0; k < meas.K; ++k)
    for (std::size_t j = 0; j < out.signal.data.size(); ++j) out.signal.data[j] += meas.data[k * out.signal.data.size() + j];
  for (auto& z : out.signal.data) z /= static_cast<double>(meas.K);
  return out;
}

std::vector<cdouble> restoration_vector(const RadarConfig& cfg, double r_ref) {
  const std::uint32_t n = cfg.decimated_samples();
  std::vector<cdouble> out(n);
  for (std::uint32_t k = 0; k < n; ++k) {
    const double g = cfg.f_c + cfg.frequency_step() * k;
    out[k] = std::polar(1.0, -4.0 * std::numbers::pi * g * r_ref / kSpeedOfLight);
  }
  return out;
}

ChannelSnapshots calibrate(const ChannelSnapshots& x, const CalibrationReference& ref) {
  const ChannelSnapshots& r = ref.signal;
  if (r.channels() != x.channels() || r.samples != x.samples || r.K != 1)
    throw std::invalid_argument("calibrate: reference dimensions do not match the data");
  check_reference_location(x.cfg, ref.r_ref, ref.theta_ref);
  for (const auto& z : r.data)
    if (std::abs(z) == 0.0) throw std::invalid_argument("calibrate: reference has zero-magnitude samples");

  const auto restore = restoration_vector(x.cfg, ref.r_ref);
  ChannelSnapshots out = x;
  for (std::uint32_t k = 0; k < x.K; ++k)
    for (std::size_t v = 0; v < x.channels(); ++v) {
      auto dst = out.trace(k, v);
      const auto rv = r.trace(0, v);
      for (std::uint32_t s = 0; s < x.samples; ++s) dst[s] = dst[s] * std::conj(rv[s]) * restore[s];
    }
  out.calibrated = true;
  out.sin_theta_ref = std::sin(ref.theta_ref);
  return out;
}

ChannelSnapshots select_transmitters(const ChannelSnapshots& x, std::span<const std::uint32_t> transmitters) {
  const std::uint32_t N = x.cfg.N;
  if (x.channels() != static_cast<std::size_t>(x.cfg.M) * N)
    throw std::invalid_argument("select_transmitters: channel count does not match M*N");
  if (transmitters.empty()) throw std::invalid_argument("select_transmitters: no transmitters given");
  for (auto m : transmitters)
    if (m >= x.cfg.M) throw std::invalid_argument("select_transmitters: transmitter index out of range");

  ChannelSnapshots out;
  out.cfg = x.cfg;
  out.cfg.M = static_cast<std::uint32_t>(transmitters.size());
  out.K = x.K;
  out.samples = x.samples;
  out.calibrated = x.calibrated;
  out.sin_theta_ref = x.sin_theta_ref;
  for (auto m : transmitters)
    for (std::uint32_t n = 0; n < N; ++n) out.aperture.positions.push_back(x.aperture[virtual_index(x.cfg, m, n)]);
  out.data.reserve(static_cast<std::size_t>(out.K) * out.channels() * out.samples);
  for (std::uint32_t k = 0; k < x.K; ++k)
    for (auto m : transmitters)
      for (std::uint32_t n = 0; n < N; ++n) {
        const auto t = x.trace(k, virtual_index(x.cfg, m, n));
        out.data.insert(out.data.end(), t.begin(), t.end());
      }
  return out;
}

}  // namespace cdmradar
