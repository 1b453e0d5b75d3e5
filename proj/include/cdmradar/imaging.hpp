#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cdmradar/chain.hpp"
#include "cdmradar/params.hpp"

namespace cdmradar {

/// Raised when a numerical kernel cannot deliver its contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One column per snapshot; rows stacked channel-major, fast-time minor.
struct SnapshotMatrix {
  Eigen::MatrixXcd vectors;

  Eigen::Index dimension() const { return vectors.rows(); }
  Eigen::Index count() const { return vectors.cols(); }
};

struct CovarianceEstimate {
  Eigen::MatrixXcd matrix;
  std::uint32_t K = 0;
};

/// Eigenvalues in descending order with matching orthonormal columns.
struct EigenDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

struct SubspaceSplit {
  EigenDecomposition eigen;
  Eigen::Index signal_dim = 0;

  Eigen::Index dimension() const { return eigen.vectors.rows(); }
  auto signal_basis() const { return eigen.vectors.leftCols(signal_dim); }
  auto noise_basis() const { return eigen.vectors.rightCols(dimension() - signal_dim); }
};

/// Element at index v*Ñ + k is channel v, sample k.
SnapshotMatrix stack(const ChannelSnapshots& x);

/// (1/K) sum_k x_k x_k^H.
CovarianceEstimate sample_covariance(const SnapshotMatrix& s);

/// Hermitian eigendecomposition (LAPACK zheevd). Rejects inputs whose
/// anti-Hermitian part exceeds `tolerance` relative to the Frobenius norm.
EigenDecomposition eig_hermitian(const Eigen::MatrixXcd& R, double tolerance = 1e-10);

/// Noise subspace = eigenvectors of the dim - L smallest eigenvalues.
SubspaceSplit split_subspace(EigenDecomposition eigen, Eigen::Index signal_dim);

/// Model response of the stacked measurement to a point target:
///   a[v*Ñ + k] = exp(-j (4pi/c) g_k (r + 0.5 d_v (sin(theta) - sin_theta_ref))),
///   g_k = f_c + (b/Ñ) k.
Eigen::VectorXcd steering_vector(const RadarConfig& cfg, const VirtualAperture& aperture, double r, double theta,
                                 double sin_theta_ref = 0.0);
Eigen::VectorXcd steering_vector(const RadarConfig& cfg, double r, double theta, double sin_theta_ref = 0.0);

/// Inclusive uniform grid lo, lo+step, ..., <= hi (within half a step).
std::vector<double> make_grid(double lo, double hi, double step);

struct ImagePeak {
  double r = 0.0;
  double theta = 0.0;
  double value = 0.0;
  std::size_t range_index = 0;
  std::size_t angle_index = 0;
};

/// Pseudospectrum on a range x angle grid, stored range-major.
struct RangeAngleImage {
  std::vector<double> range_axis;  ///< m
  std::vector<double> angle_axis;  ///< rad
  std::vector<double> values;
  std::vector<ImagePeak> peaks;

  double at(std::size_t ir, std::size_t ia) const { return values[ir * angle_axis.size() + ia]; }
};

enum class Projector {
  Auto,              ///< whichever basis has fewer columns
  NoiseBasis,        ///< ||E^H a||^2 directly
  SignalComplement,  ///< ||a||^2 - ||U_s^H a||^2
};

struct MusicOptions {
  Projector projector = Projector::Auto;
  /// Peaks to report; 0 means the signal dimension L.
  std::size_t max_peaks = 0;
};

/// MUSIC image (a^H a) / (a^H E E^H a) over the grid, plus its strongest peaks.
/// Denominators below 1e-30 are clamped to 1e-30.
RangeAngleImage music_image(const SubspaceSplit& split, const RadarConfig& cfg, const VirtualAperture& aperture,
                            const std::vector<double>& range_grid, const std::vector<double>& angle_grid,
                            double sin_theta_ref = 0.0, const MusicOptions& options = {});

/// Strict 8-neighbourhood local maxima of a range-major value grid, sorted
/// by value descending; ties go to lower range index, then lower angle index.
/// `max_peaks` = 0 keeps them all.
std::vector<ImagePeak> find_peaks(const std::vector<double>& values, const std::vector<double>& range_axis,
                                  const std::vector<double>& angle_axis, std::size_t max_peaks);

}  // namespace cdmradar
