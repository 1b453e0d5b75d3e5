#include "cdmradar/imaging.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace cdmradar {

namespace {

constexpr double kDenominatorFloor = 1e-30;

double range_phase_rate() { return 4.0 * std::numbers::pi / kSpeedOfLight; }

std::vector<double> frequency_grid(const RadarConfig& cfg, std::uint32_t samples) {
  std::vector<double> g(samples);
  const double step = cfg.b / samples;
  for (std::uint32_t k = 0; k < samples; ++k) g[k] = cfg.f_c + step * k;
  return g;
}

void check_axis(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
  for (std::size_t i = 1; i < axis.size(); ++i)
    if (!(axis[i] > axis[i - 1])) throw std::invalid_argument(std::string(name) + " grid is not strictly increasing");
}

void check_target_location(const RadarConfig& cfg, double r, double theta) {
  if (!(std::isfinite(r) && r >= 0.0 && r <= cfg.r_max * (1.0 + 1e-12)))
    throw std::invalid_argument("steering range " + std::to_string(r) + " m outside [0, r_max]");
  if (!(std::isfinite(theta) && std::abs(theta) < std::numbers::pi / 2))
    throw std::invalid_argument("steering angle must satisfy |theta| < pi/2");
}

}  // namespace

SnapshotMatrix stack(const ChannelSnapshots& x) {
  const Eigen::Index dim = static_cast<Eigen::Index>(x.channels() * x.samples);
  SnapshotMatrix s;
  s.vectors.resize(dim, x.K);
  for (std::uint32_t k = 0; k < x.K; ++k)
    for (std::size_t v = 0; v < x.channels(); ++v) {
      const auto t = x.trace(k, v);
      for (std::uint32_t j = 0; j < x.samples; ++j) s.vectors(static_cast<Eigen::Index>(v * x.samples + j), k) = t[j];
    }
  return s;
}

CovarianceEstimate sample_covariance(const SnapshotMatrix& s) {
  if (s.count() < 1) throw std::invalid_argument("sample_covariance: need at least one snapshot");
  const Eigen::Index dim = s.dimension();
  Eigen::MatrixXcd lower = Eigen::MatrixXcd::Zero(dim, dim);
  lower.selfadjointView<Eigen::Lower>().rankUpdate(s.vectors, 1.0 / static_cast<double>(s.count()));
  CovarianceEstimate out;
  out.matrix = lower.selfadjointView<Eigen::Lower>();
  out.K = static_cast<std::uint32_t>(s.count());
  return out;
}

EigenDecomposition eig_hermitian(const Eigen::MatrixXcd& R, double tolerance) {
  if (R.rows() == 0 || R.rows() != R.cols()) throw std::invalid_argument("eig_hermitian: matrix must be square and non-empty");
  const double norm = R.norm();
  if (!std::isfinite(norm)) throw NumericalError("eig_hermitian: matrix has non-finite entries");
  const double skew = (R - R.adjoint()).norm();
  if (skew > tolerance * norm)
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian (relative skew " +
                                std::to_string(norm > 0 ? skew / norm : skew) + ")");

  const Eigen::Index n = R.rows();
  Eigen::MatrixXcd a = R;
  Eigen::VectorXd w(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
                                         reinterpret_cast<lapack_complex_double*>(a.data()),
                                         static_cast<lapack_int>(n), w.data());
  if (info != 0) throw NumericalError("eig_hermitian: zheevd failed with info = " + std::to_string(info));

  EigenDecomposition out;
  out.values = w.reverse();
  out.vectors = a.rowwise().reverse();
  return out;
}

SubspaceSplit split_subspace(EigenDecomposition eigen, Eigen::Index signal_dim) {
  const Eigen::Index dim = eigen.vectors.rows();
  if (signal_dim <= 0 || signal_dim >= dim)
    throw std::invalid_argument("split_subspace: signal dimension " + std::to_string(signal_dim) +
                                " outside (0, " + std::to_string(dim) + ")");
  SubspaceSplit split;
  split.eigen = std::move(eigen);
  split.signal_dim = signal_dim;
  return split;
}

Eigen::VectorXcd steering_vector(const RadarConfig& cfg, const VirtualAperture& aperture, double r, double theta,
                                 double sin_theta_ref) {
  check_target_location(cfg, r, theta);
  const std::uint32_t samples = cfg.decimated_samples();
  const auto g = frequency_grid(cfg, samples);
  const double ds = std::sin(theta) - sin_theta_ref;
  Eigen::VectorXcd a(static_cast<Eigen::Index>(aperture.size() * samples));
  for (std::size_t v = 0; v < aperture.size(); ++v) {
    const double path = r + 0.5 * aperture[v] * ds;
    for (std::uint32_t k = 0; k < samples; ++k)
      a(static_cast<Eigen::Index>(v * samples + k)) = std::polar(1.0, -range_phase_rate() * g[k] * path);
  }
  return a;
}

Eigen::VectorXcd steering_vector(const RadarConfig& cfg, double r, double theta, double sin_theta_ref) {
  return steering_vector(cfg, virtual_positions(cfg), r, theta, sin_theta_ref);
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && std::isfinite(step)) || step <= 0.0 || hi < lo)
    throw std::invalid_argument("grid needs finite lo <= hi and step > 0");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) g[i] = lo + step * static_cast<double>(i);
  return g;
}

RangeAngleImage music_image(const SubspaceSplit& split, const RadarConfig& cfg, const VirtualAperture& aperture,
                            const std::vector<double>& range_grid, const std::vector<double>& angle_grid,
                            double sin_theta_ref, const MusicOptions& options) {
  check_axis(range_grid, "range");
  check_axis(angle_grid, "angle");
  check_target_location(cfg, range_grid.front(), 0.0);
  check_target_location(cfg, range_grid.back(), 0.0);
  check_target_location(cfg, 0.0, angle_grid.front());
  check_target_location(cfg, 0.0, angle_grid.back());

  const std::uint32_t samples = cfg.decimated_samples();
  const Eigen::Index dim = split.dimension();
  if (dim != static_cast<Eigen::Index>(aperture.size() * samples))
    throw std::invalid_argument("music_image: subspace dimension does not match aperture x samples");

  const Eigen::Index L = split.signal_dim;
  const bool use_noise = options.projector == Projector::NoiseBasis ||
                         (options.projector == Projector::Auto && dim - L < L);
  const Eigen::MatrixXcd basis = use_noise ? Eigen::MatrixXcd(split.noise_basis()) : Eigen::MatrixXcd(split.signal_basis());
  const Eigen::Index cols = basis.cols();

  const auto g = frequency_grid(cfg, samples);
  const double kappa = range_phase_rate();
  const auto nr = static_cast<Eigen::Index>(range_grid.size());
  const auto S = static_cast<Eigen::Index>(samples);

  // The steering vector factors into a range ramp and an angle term:
  // a[v,k] = exp(-j kappa g_k r) * exp(-j kappa g_k 0.5 d_v ds).
  Eigen::MatrixXcd range_factor(nr, S);
  for (Eigen::Index ir = 0; ir < nr; ++ir)
    for (Eigen::Index k = 0; k < S; ++k) range_factor(ir, k) = std::polar(1.0, -kappa * g[k] * range_grid[ir]);

  RangeAngleImage img;
  img.range_axis = range_grid;
  img.angle_axis = angle_grid;
  img.values.assign(range_grid.size() * angle_grid.size(), 0.0);

  Eigen::MatrixXcd weights(S, cols);
  Eigen::VectorXcd angle_term(S);
  Eigen::MatrixXcd projections(nr, cols);
  for (std::size_t ia = 0; ia < angle_grid.size(); ++ia) {
    const double ds = std::sin(angle_grid[ia]) - sin_theta_ref;
    weights.setZero();
    for (std::size_t v = 0; v < aperture.size(); ++v) {
      const double offset = 0.5 * aperture[v] * ds;
      for (Eigen::Index k = 0; k < S; ++k) angle_term(k) = std::polar(1.0, -kappa * g[k] * offset);
      weights.noalias() += angle_term.asDiagonal() * basis.middleRows(static_cast<Eigen::Index>(v) * S, S).conjugate();
    }
    projections.noalias() = range_factor * weights;
    for (Eigen::Index ir = 0; ir < nr; ++ir) {
      const double captured = projections.row(ir).squaredNorm();
      double denom = use_noise ? captured : static_cast<double>(dim) - captured;
      denom = std::max(denom, kDenominatorFloor);
      img.values[static_cast<std::size_t>(ir) * angle_grid.size() + ia] = static_cast<double>(dim) / denom;
    }
  }

  const std::size_t max_peaks = options.max_peaks == 0 ? static_cast<std::size_t>(L) : options.max_peaks;
  img.peaks = find_peaks(img.values, img.range_axis, img.angle_axis, max_peaks);
  return img;
}

std::vector<ImagePeak> find_peaks(const std::vector<double>& values, const std::vector<double>& range_axis,
                                  const std::vector<double>& angle_axis, std::size_t max_peaks) {
  const std::size_t nr = range_axis.size();
  const std::size_t na = angle_axis.size();
  if (values.size() != nr * na) throw std::invalid_argument("find_peaks: value grid does not match axes");

  std::vector<ImagePeak> peaks;
  for (std::size_t ir = 0; ir < nr; ++ir)
    for (std::size_t ia = 0; ia < na; ++ia) {
      const double v = values[ir * na + ia];
      bool strict_max = true;
      for (int dr = -1; dr <= 1 && strict_max; ++dr)
        for (int da = -1; da <= 1; ++da) {
          if (dr == 0 && da == 0) continue;
          const auto jr = static_cast<std::ptrdiff_t>(ir) + dr;
          const auto ja = static_cast<std::ptrdiff_t>(ia) + da;
          if (jr < 0 || ja < 0 || jr >= static_cast<std::ptrdiff_t>(nr) || ja >= static_cast<std::ptrdiff_t>(na)) continue;
          if (!(v > values[static_cast<std::size_t>(jr) * na + static_cast<std::size_t>(ja)])) {
            strict_max = false;
            break;
          }
        }
      // A single-cell grid has no neighbours to exceed.
      if (strict_max && nr * na > 1) peaks.push_back({range_axis[ir], angle_axis[ia], v, ir, ia});
    }
  std::sort(peaks.begin(), peaks.end(), [](const ImagePeak& a, const ImagePeak& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.range_index != b.range_index) return a.range_index < b.range_index;
    return a.angle_index < b.angle_index;
  });
  if (max_peaks != 0 && peaks.size() > max_peaks) peaks.resize(max_peaks);
  return peaks;
}

}  // namespace cdmradar
