#include "cdmradar/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace cdmradar {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Phase of exp(-j2pi f_c tau - j2pi beta t tau [+ j pi beta tau^2]) without the code term.
double beat_phase(const RadarConfig& cfg, double tau, double t, bool residual_phase) {
  double phase = -kTwoPi * cfg.f_c * tau - kTwoPi * cfg.slope() * t * tau;
  if (residual_phase) phase += std::numbers::pi * cfg.slope() * tau * tau;
  return phase;
}

std::mt19937_64 snapshot_stream(std::uint64_t seed, std::uint32_t k) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32), k};
  return std::mt19937_64(seq);
}

}  // namespace

double time_delay(double r, double theta, double position) {
  return (2.0 / kSpeedOfLight) * (r + 0.5 * position * std::sin(theta));
}

cdouble beat_sample(const RadarConfig& cfg, const CodeMatrix& codes, const TxCodeAssignment& assignment,
                    const Target& target, std::uint32_t m, std::uint32_t n, std::uint32_t i, double t,
                    bool residual_phase) {
  const double position = m * cfg.d_t + n * cfg.d_r;
  const double tau = time_delay(target.r, target.theta, position);
  const double phase = beat_phase(cfg, tau, t, residual_phase) + phase_of(codes.at(assignment.rows.at(m), i));
  return std::polar(target.sigma, phase);
}

RawCapture synthesize(const RadarConfig& cfg, const Scene& scene, const TxCodeAssignment& assignment,
                      std::uint32_t K, const SynthOptions& options) {
  require_valid_config(cfg);
  if (K == 0) throw std::invalid_argument("synthesize: snapshot count must be positive");
  check_assignment(assignment, cfg.N_c, cfg.M);
  if (const auto bad = validate_scene(scene, cfg); !bad.empty()) {
    std::string msg = "invalid scene:";
    for (const auto& v : bad) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }
  if (!options.tx_enabled.empty() && options.tx_enabled.size() != cfg.M)
    throw std::invalid_argument("synthesize: tx_enabled must have M entries");

  const CodeMatrix codes = hadamard(cfg.N_c);
  const VirtualAperture aperture = virtual_positions(cfg);
  const std::uint32_t S = cfg.samples_per_chirp();
  const std::size_t V = cfg.virtual_channels();

  // Noiseless per-channel signal z[v][s]; static targets make it chirp- and snapshot-invariant.
  std::vector<cdouble> channel(V * S, cdouble{});
  for (std::uint32_t m = 0; m < cfg.M; ++m) {
    if (!options.tx_enabled.empty() && !options.tx_enabled[m]) continue;
    for (std::uint32_t n = 0; n < cfg.N; ++n) {
      const std::size_t v = virtual_index(cfg, m, n);
      const cdouble hw = scene.channel_phase_errors ? std::polar(1.0, (*scene.channel_phase_errors)[v]) : 1.0;
      for (const auto& target : scene.targets) {
        const double tau = time_delay(target.r, target.theta, aperture[v]);
        for (std::uint32_t s = 0; s < S; ++s) {
          const double t = s / cfg.f_s;
          channel[v * S + s] += std::polar(target.sigma, beat_phase(cfg, tau, t, options.residual_phase)) * hw;
        }
      }
    }
  }

  // Coherent sum over transmitters at each receiver, signed by the chirp's code entry.
  std::vector<cdouble> coded(static_cast<std::size_t>(cfg.N_c) * cfg.N * S, cdouble{});
  for (std::uint32_t i = 0; i < cfg.N_c; ++i)
    for (std::uint32_t n = 0; n < cfg.N; ++n) {
      cdouble* out = coded.data() + (static_cast<std::size_t>(i) * cfg.N + n) * S;
      for (std::uint32_t m = 0; m < cfg.M; ++m) {
        const double c = codes.at(assignment.rows[m], i);
        const cdouble* z = channel.data() + virtual_index(cfg, m, n) * S;
        for (std::uint32_t s = 0; s < S; ++s) out[s] += c * z[s];
      }
    }

  RawCapture cap;
  cap.cfg = cfg;
  cap.K = K;
  cap.kind = options.kind;
  cap.samples.resize(cap.expected_size());

  const bool noisy = scene.snr_db.has_value();
  const double variance = noisy ? std::pow(10.0, -*scene.snr_db / 10.0) : 0.0;
  // Complex noise splits its variance over I and Q; real captures get half the variance.
  const double sd = std::sqrt(variance / 2.0);

  const std::size_t per_snapshot = coded.size();
  for (std::uint32_t k = 0; k < K; ++k) {
    cdouble* out = cap.samples.data() + k * per_snapshot;
    auto rng = snapshot_stream(scene.seed, k);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t j = 0; j < per_snapshot; ++j) {
      cdouble x = coded[j];
      if (options.kind == SampleKind::Real) {
        double re = x.real();
        if (noisy) re += sd * gauss(rng);
        out[j] = {re, 0.0};
      } else {
        if (noisy) {
          const double nr = gauss(rng);
          const double ni = gauss(rng);
          x += cdouble{sd * nr, sd * ni};
        }
        out[j] = x;
      }
    }
  }
  return cap;
}

void quantize_to_file_precision(RawCapture& capture) {
  for (auto& x : capture.samples)
    x = {static_cast<double>(static_cast<float>(x.real())), static_cast<double>(static_cast<float>(x.imag()))};
}

}  // namespace cdmradar
