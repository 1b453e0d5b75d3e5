// cdmradar: simulate coded captures, process them into range-angle images,
// and print code tables.
//
// Exit codes: 0 success, 1 usage error, 2 data/format error, 3 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "cdmradar/cdmr_format.hpp"
#include "cdmradar/codes.hpp"
#include "cdmradar/image_io.hpp"
#include "cdmradar/pipeline.hpp"
#include "cdmradar/scene_io.hpp"
#include "cdmradar/synth.hpp"

namespace {

using namespace cdmradar;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimulateArgs {
  std::string scene;
  std::string out;
  std::uint32_t snapshots = 42;
  std::string kind = "real";
  std::optional<std::uint64_t> seed;
  bool residual_phase = false;
};

struct ProcessArgs {
  std::string in;
  double ref_range = 0.0;
  double ref_angle_deg = 0.0;
  std::string ref_capture;
  bool no_calibrate = false;
  std::uint32_t subspace = 0;
  std::string range;
  std::string angle;
  std::string out;
  std::string peaks;
  std::string heatmap;
  bool linear = false;
  std::size_t max_peaks = 0;
};

std::vector<double> parse_grid(const std::string& spec, double unit, const char* name) {
  std::istringstream ss(spec);
  double lo = 0, hi = 0, step = 0;
  char c1 = 0, c2 = 0;
  if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(ss >> std::ws).eof())
    throw UsageError(std::string("--") + name + " expects lo:hi:step, got '" + spec + "'");
  try {
    return make_grid(lo * unit, hi * unit, step * unit);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--") + name + ": " + e.what());
  }
}

void add_simulate_flags(CLI::App* cmd, SimulateArgs& a, bool with_out) {
  cmd->add_option("--scene", a.scene, "Scene JSON document")->required();
  if (with_out) cmd->add_option("--out", a.out, "Output .cdmr capture")->required();
  cmd->add_option("--snapshots", a.snapshots, "Snapshot count K")->capture_default_str();
  cmd->add_option("--kind", a.kind, "Sample kind")->check(CLI::IsMember({"real", "complex"}))->capture_default_str();
  cmd->add_option("--seed", a.seed, "Noise seed (overrides the scene's seed)");
  cmd->add_flag("--residual-phase", a.residual_phase, "Keep the residual video phase term");
}

void add_process_flags(CLI::App* cmd, ProcessArgs& a) {
  cmd->add_option("--ref-range", a.ref_range, "Calibration reference range, m");
  cmd->add_option("--ref-angle", a.ref_angle_deg, "Calibration reference angle, deg")->capture_default_str();
  cmd->add_option("--ref-capture", a.ref_capture, "Measured reference .cdmr capture");
  cmd->add_flag("--no-calibrate", a.no_calibrate, "Skip baseband calibration");
  cmd->add_option("--subspace", a.subspace, "Signal subspace dimension L")->required();
  cmd->add_option("--range", a.range, "Range grid lo:hi:step in m (default 0:r_max:0.01)");
  cmd->add_option("--angle", a.angle, "Angle grid lo:hi:step in deg (default -60:60:0.5)");
  cmd->add_option("--out", a.out, "Image CSV");
  cmd->add_option("--peaks", a.peaks, "Peaks JSON");
  cmd->add_option("--heatmap", a.heatmap, "PGM heatmap");
  cmd->add_flag("--linear", a.linear, "Write linear values instead of dB");
  cmd->add_option("--max-peaks", a.max_peaks, "Peaks to report (default L)");
}

RawCapture simulate(const SimulateArgs& a) {
  auto doc = load_scene(a.scene);
  if (a.seed) doc.scene.seed = *a.seed;
  SynthOptions opts;
  opts.kind = a.kind == "complex" ? SampleKind::Complex : SampleKind::Real;
  opts.residual_phase = a.residual_phase;
  auto capture = synthesize(doc.config, doc.scene, default_assignment(doc.config), a.snapshots, opts);
  quantize_to_file_precision(capture);
  return capture;
}

int process(const RawCapture& capture, const ProcessArgs& a) {
  ProcessingOptions opts;
  opts.calibrate = !a.no_calibrate;
  if (opts.calibrate && !(a.ref_range > 0.0)) throw UsageError("--ref-range is required unless --no-calibrate is given");
  opts.ref_range = a.ref_range;
  opts.ref_angle = deg_to_rad(a.ref_angle_deg);
  if (!a.ref_capture.empty()) opts.reference_capture = read_cdmr(a.ref_capture);
  opts.signal_dim = a.subspace;
  if (!a.range.empty()) opts.range_grid = parse_grid(a.range, 1.0, "range");
  if (!a.angle.empty()) opts.angle_grid = parse_grid(a.angle, deg_to_rad(1.0), "angle");
  opts.music.max_peaks = a.max_peaks;

  const auto result = run_pipeline(capture, opts);

  ImageOutputs out;
  out.linear = a.linear;
  if (!a.out.empty()) out.csv = a.out;
  if (!a.peaks.empty()) out.peaks = a.peaks;
  if (!a.heatmap.empty()) out.heatmap = a.heatmap;
  write_image(result.image, out);

  for (const auto& p : result.image.peaks)
    std::printf("peak  range %.3f m  angle %+.2f deg  %.2f dB\n", p.r, rad_to_deg(p.theta), 10.0 * std::log10(p.value));
  return kOk;
}

int print_codes(std::uint32_t order, std::optional<std::uint32_t> tx) {
  const CodeMatrix h = hadamard(order);
  std::vector<std::uint32_t> rows;
  if (tx) {
    RadarConfig cfg;
    cfg.N_c = order;
    cfg.M = *tx;
    rows = default_assignment(cfg).rows;
  } else {
    for (std::uint32_t i = 0; i < order; ++i) rows.push_back(i);
  }
  for (auto i : rows) {
    std::string line;
    for (int v : h.row(i)) line += (line.empty() ? "" : " ") + std::string(v > 0 ? "+1" : "-1");
    std::printf("%s\n", line.c_str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CDM virtual MIMO FMCW radar simulator and MUSIC imager"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Synthesize a coded capture from a scene");
  add_simulate_flags(simulate_cmd, sim, true);

  ProcessArgs proc;
  auto* process_cmd = app.add_subcommand("process", "Decode, calibrate and image a capture");
  process_cmd->add_option("--in", proc.in, "Input .cdmr capture")->required();
  add_process_flags(process_cmd, proc);

  std::uint32_t order = 0;
  std::optional<std::uint32_t> tx;
  auto* codes_cmd = app.add_subcommand("codes", "Print Sylvester-Hadamard code rows");
  codes_cmd->add_option("--order", order, "Code length (power of two)")->required();
  codes_cmd->add_option("--tx", tx, "Print only the rows assigned to this many transmitters");

  SimulateArgs pipe_sim;
  ProcessArgs pipe_proc;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "simulate + process in one run");
  add_simulate_flags(pipeline_cmd, pipe_sim, false);
  add_process_flags(pipeline_cmd, pipe_proc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate_cmd) {
      const auto capture = simulate(sim);
      const auto bytes = write_cdmr(capture, sim.out);
      std::printf("wrote %zu bytes to %s\n", bytes, sim.out.c_str());
      return kOk;
    }
    if (*process_cmd) return process(read_cdmr(proc.in), proc);
    if (*codes_cmd) return print_codes(order, tx);
    if (*pipeline_cmd) return process(simulate(pipe_sim), pipe_proc);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const StageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.category() == StageError::Category::Numerical ? kNumerical : kData;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kData;
  }
  return kUsage;
}
