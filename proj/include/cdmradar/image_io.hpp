#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cdmradar/imaging.hpp"

namespace cdmradar {

/// CSV matrix: header row of angles (deg), first column ranges (m),
/// entries 10*log10(value) unless `linear`.
std::string render_csv(const RangeAngleImage& img, bool linear = false);

/// JSON array of {range_m, angle_deg, value_db}.
std::string render_peaks_json(const std::vector<ImagePeak>& peaks);

/// Binary PGM (P5), min-max normalised to 0..255 over the dB (or linear)
/// values; rows are ranges increasing downward, columns angles.
std::string render_pgm(const RangeAngleImage& img, bool linear = false);

struct ImageOutputs {
  std::optional<std::filesystem::path> csv;
  std::optional<std::filesystem::path> peaks;
  std::optional<std::filesystem::path> heatmap;
  bool linear = false;
};

void write_image(const RangeAngleImage& img, const ImageOutputs& outputs);

/// Writes <basename>.csv, <basename>.peaks.json and <basename>.pgm.
void write_image(const RangeAngleImage& img, const std::filesystem::path& basename, bool linear = false);

}  // namespace cdmradar
