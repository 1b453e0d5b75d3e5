#include "cdmradar/params.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cdmradar {

std::uint32_t RadarConfig::samples_per_chirp() const {
  const double s = std::round(T * f_s);
  if (!std::isfinite(s) || s < 0.0 || s > 4294967295.0) return 0;
  return static_cast<std::uint32_t>(s);
}

RadarConfig reference_config() {
  RadarConfig cfg;
  cfg.f_c = 79e9;
  cfg.b = 1.5e9;
  cfg.T = 25.6e-6;
  cfg.f_s = 20e6;
  cfg.D = 8;
  cfg.M = 3;
  cfg.N = 4;
  cfg.N_c = 8;
  const double lambda = kSpeedOfLight / cfg.f_c;
  cfg.d_r = lambda / 2.0;
  cfg.d_t = 2.0 * lambda;
  cfg.r_max = 3.0;
  return cfg;
}

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

std::vector<std::string> validate_config(const RadarConfig& cfg) {
  std::vector<std::string> out;
  if (!positive_finite(cfg.f_c)) out.push_back("f_c must be positive and finite");
  if (!positive_finite(cfg.b)) out.push_back("b must be positive and finite");
  if (!positive_finite(cfg.T)) out.push_back("T must be positive and finite");
  if (!positive_finite(cfg.f_s)) out.push_back("f_s must be positive and finite");
  if (positive_finite(cfg.b) && positive_finite(cfg.T) && !positive_finite(cfg.slope()))
    out.push_back("sweep slope b/T must be positive and finite");
  if (cfg.D == 0) out.push_back("D must be a positive integer");
  if (cfg.M == 0) out.push_back("M must be a positive integer");
  if (cfg.N == 0) out.push_back("N must be a positive integer");
  if (cfg.N_c == 0 || !std::has_single_bit(cfg.N_c)) {
    out.push_back("N_c = " + std::to_string(cfg.N_c) + " is not a power of two");
  } else if (cfg.N_c <= cfg.M) {
    out.push_back("N_c = " + std::to_string(cfg.N_c) + " must exceed M = " +
                  std::to_string(cfg.M) + " (row 0 is never assigned)");
  }
  if (!positive_finite(cfg.d_r)) out.push_back("d_r must be positive and finite");
  if (!std::isfinite(cfg.d_t) || cfg.d_t < 0.0) out.push_back("d_t must be finite and non-negative");
  if (!positive_finite(cfg.r_max)) out.push_back("r_max must be positive and finite");

  if (positive_finite(cfg.T) && positive_finite(cfg.f_s) && cfg.D > 0) {
    const auto S = cfg.samples_per_chirp();
    if (S < cfg.D) {
      out.push_back("samples per chirp S = " + std::to_string(S) + " is smaller than D = " +
                    std::to_string(cfg.D));
    } else if (S / cfg.D < 2) {
      out.push_back("decimated samples per chirp floor(S/D) = " + std::to_string(S / cfg.D) +
                    " must be at least 2");
    }
  }

  if (positive_finite(cfg.b) && positive_finite(cfg.T) && positive_finite(cfg.f_s) && cfg.D > 0 &&
      positive_finite(cfg.r_max)) {
    const double f_b = cfg.slope() * 2.0 * cfg.r_max / kSpeedOfLight;
    const double nyquist = cfg.f_s / (2.0 * cfg.D);
    if (!(f_b < nyquist)) {
      out.push_back("anti-alias guard: beat frequency at r_max is " + fmt(f_b / 1e6) +
                    " MHz, not below the decimated Nyquist rate " + fmt(nyquist / 1e6) + " MHz");
    }
  }
  return out;
}

void require_valid_config(const RadarConfig& cfg) {
  const auto violations = validate_config(cfg);
  if (violations.empty()) return;
  std::string msg = "invalid radar config:";
  for (const auto& v : violations) msg += "\n  " + v;
  throw std::invalid_argument(msg);
}

std::vector<std::string> validate_scene(const Scene& scene, const RadarConfig& cfg) {
  std::vector<std::string> out;
  for (std::size_t l = 0; l < scene.targets.size(); ++l) {
    const auto& t = scene.targets[l];
    const std::string tag = "target " + std::to_string(l) + ": ";
    if (!(std::isfinite(t.r) && t.r > 0.0)) out.push_back(tag + "range must be positive");
    else if (t.r > cfg.r_max)
      out.push_back(tag + "range " + fmt(t.r) + " m exceeds r_max " + fmt(cfg.r_max) +
                    " m (beat tone would alias)");
    if (!(std::isfinite(t.theta) && std::abs(t.theta) < std::numbers::pi / 2))
      out.push_back(tag + "azimuth must satisfy |theta| < pi/2");
    if (!(std::isfinite(t.sigma) && t.sigma >= 0.0)) out.push_back(tag + "sigma must be finite and >= 0");
  }
  if (scene.snr_db && !std::isfinite(*scene.snr_db)) out.push_back("snr_db must be finite");
  if (scene.channel_phase_errors) {
    const auto& e = *scene.channel_phase_errors;
    if (e.size() != cfg.virtual_channels())
      out.push_back("channel_phase_errors has " + std::to_string(e.size()) + " entries, expected M*N = " +
                    std::to_string(cfg.virtual_channels()));
    for (double x : e)
      if (!std::isfinite(x)) {
        out.push_back("channel_phase_errors entries must be finite");
        break;
      }
  }
  return out;
}

double beat_frequency(const RadarConfig& cfg, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("beat_frequency: range must be non-negative");
  return cfg.slope() * (2.0 * r / kSpeedOfLight);
}

VirtualAperture virtual_positions(const RadarConfig& cfg) {
  VirtualAperture ap;
  ap.positions.reserve(cfg.virtual_channels());
  for (std::uint32_t m = 0; m < cfg.M; ++m)
    for (std::uint32_t n = 0; n < cfg.N; ++n) ap.positions.push_back(m * cfg.d_t + n * cfg.d_r);
  return ap;
}

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace cdmradar
