#include "cdmradar/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "cdmradar/cdmr_format.hpp"

namespace cdmradar {

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double to_db(double v) { return 10.0 * std::log10(v); }

std::vector<double> display_values(const RangeAngleImage& img, bool linear) {
  std::vector<double> out(img.values);
  if (!linear) std::transform(out.begin(), out.end(), out.begin(), to_db);
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(FormatError::Kind::Io, "cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw FormatError(FormatError::Kind::Io, "write failed: " + path.string());
}

}  // namespace

std::string render_csv(const RangeAngleImage& img, bool linear) {
  const auto vals = display_values(img, linear);
  std::string s = "range_m";
  for (double a : img.angle_axis) s += "," + number(rad_to_deg(a));
  s += "\n";
  for (std::size_t ir = 0; ir < img.range_axis.size(); ++ir) {
    s += number(img.range_axis[ir]);
    for (std::size_t ia = 0; ia < img.angle_axis.size(); ++ia) s += "," + number(vals[ir * img.angle_axis.size() + ia]);
    s += "\n";
  }
  return s;
}

std::string render_peaks_json(const std::vector<ImagePeak>& peaks) {
  auto arr = nlohmann::json::array();
  for (const auto& p : peaks)
    arr.push_back({{"range_m", p.r}, {"angle_deg", rad_to_deg(p.theta)}, {"value_db", to_db(p.value)}});
  return arr.dump(2) + "\n";
}

std::string render_pgm(const RangeAngleImage& img, bool linear) {
  const auto vals = display_values(img, linear);
  const auto [lo_it, hi_it] = std::minmax_element(vals.begin(), vals.end());
  const double lo = vals.empty() ? 0.0 : *lo_it;
  const double span = vals.empty() ? 0.0 : *hi_it - lo;
  std::string s = "P5\n" + std::to_string(img.angle_axis.size()) + " " + std::to_string(img.range_axis.size()) + "\n255\n";
  for (double v : vals) {
    const double unit = span > 0.0 ? (v - lo) / span : 0.0;
    s.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * unit))));
  }
  return s;
}

void write_image(const RangeAngleImage& img, const ImageOutputs& outputs) {
  if (outputs.csv) write_file(*outputs.csv, render_csv(img, outputs.linear));
  if (outputs.peaks) write_file(*outputs.peaks, render_peaks_json(img.peaks));
  if (outputs.heatmap) write_file(*outputs.heatmap, render_pgm(img, outputs.linear));
}

void write_image(const RangeAngleImage& img, const std::filesystem::path& basename, bool linear) {
  ImageOutputs o;
  o.csv = std::filesystem::path(basename.string() + ".csv");
  o.peaks = std::filesystem::path(basename.string() + ".peaks.json");
  o.heatmap = std::filesystem::path(basename.string() + ".pgm");
  o.linear = linear;
  write_image(img, o);
}

}  // namespace cdmradar
