#include "cdmradar/pipeline.hpp"

#include <utility>

#include "cdmradar/dsp.hpp"

namespace cdmradar {

namespace {

template <typename F>
auto stage(const char* name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const NumericalError& e) {
    throw StageError(name, StageError::Category::Numerical, e.what());
  } catch (const std::exception& e) {
    throw StageError(name, StageError::Category::Data, e.what());
  }
}

}  // namespace

std::vector<double> default_range_grid(const RadarConfig& cfg) { return make_grid(0.0, cfg.r_max, 0.01); }

std::vector<double> default_angle_grid() { return make_grid(deg_to_rad(-60.0), deg_to_rad(60.0), deg_to_rad(0.5)); }

PipelineResult run_pipeline(const RawCapture& capture, const ProcessingOptions& options) {
  const RadarConfig& cfg = capture.cfg;
  const auto assignment = stage("config", [&] {
    require_valid_config(cfg);
    auto a = options.assignment ? *options.assignment : default_assignment(cfg);
    check_assignment(a, cfg.N_c, cfg.M);
    return a;
  });
  const CodeMatrix codes = hadamard(cfg.N_c);

  const BasebandCube cube = stage("front-end", [&] { return front_end(capture); });
  ChannelSnapshots channels = stage("decode", [&] { return decode(cube, codes, assignment); });

  if (options.calibrate) {
    channels = stage("calibrate", [&] {
      ReferenceSpec spec;
      spec.r_ref = options.ref_range;
      spec.theta_ref = options.ref_angle;
      if (options.reference_capture) {
        if (!(options.reference_capture->cfg == cfg))
          throw std::invalid_argument("reference capture was recorded with a different radar config");
        spec.measured = decode(front_end(*options.reference_capture), codes, assignment);
      }
      return calibrate(channels, reference_signal(cfg, spec, assignment));
    });
  }
  if (!options.transmitters.empty())
    channels = stage("select", [&] { return select_transmitters(channels, options.transmitters); });

  PipelineResult result;
  const SubspaceSplit split = stage("covariance", [&] {
    const auto cov = sample_covariance(stack(channels));
    return split_subspace(eig_hermitian(cov.matrix), options.signal_dim);
  });
  result.eigenvalues.assign(split.eigen.values.begin(), split.eigen.values.end());

  result.image = stage("music", [&] {
    const auto ranges = options.range_grid.empty() ? default_range_grid(cfg) : options.range_grid;
    const auto angles = options.angle_grid.empty() ? default_angle_grid() : options.angle_grid;
    return music_image(split, cfg, channels.aperture, ranges, angles, channels.sin_theta_ref, options.music);
  });
  result.snapshots = std::move(channels);
  return result;
}

}  // namespace cdmradar
