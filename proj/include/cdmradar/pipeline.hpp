#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdmradar/chain.hpp"
#include "cdmradar/codes.hpp"
#include "cdmradar/imaging.hpp"
#include "cdmradar/synth.hpp"

namespace cdmradar {

/// A failure inside one processing stage; `what()` is prefixed with the stage.
class StageError : public std::runtime_error {
 public:
  enum class Category { Data, Numerical };

  StageError(std::string stage, Category category, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)), category_(category) {}
  const std::string& stage() const { return stage_; }
  Category category() const { return category_; }

 private:
  std::string stage_;
  Category category_;
};

struct ProcessingOptions {
  double ref_range = 1.0;  ///< m
  double ref_angle = 0.0;  ///< rad
  /// Raw capture of the physical reference; absent means a simulated reference.
  std::optional<RawCapture> reference_capture;
  bool calibrate = true;
  std::uint32_t signal_dim = 2;
  std::vector<double> range_grid;  ///< empty means 0..r_max in 1 cm steps
  std::vector<double> angle_grid;  ///< empty means -60..60 deg in 0.5 deg steps
  std::optional<TxCodeAssignment> assignment;
  /// Restrict imaging to these transmitters; empty keeps the full virtual array.
  std::vector<std::uint32_t> transmitters;
  MusicOptions music;
};

struct PipelineResult {
  ChannelSnapshots snapshots;  ///< decoded and (optionally) calibrated
  std::vector<double> eigenvalues;
  RangeAngleImage image;
};

std::vector<double> default_range_grid(const RadarConfig& cfg);
std::vector<double> default_angle_grid();

/// Hilbert (real captures) -> decimate -> decode -> calibrate -> covariance -> MUSIC.
PipelineResult run_pipeline(const RawCapture& capture, const ProcessingOptions& options);

}  // namespace cdmradar
