#include "cdmradar/dsp.hpp"

#include <fftw3.h>

#include <algorithm>
#include <stdexcept>

namespace cdmradar {

struct AnalyticSignal::Plans {
  fftw_complex* buffer = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  explicit Plans(std::size_t n) {
    buffer = fftw_alloc_complex(n);
    if (buffer == nullptr) throw std::bad_alloc();
    const int len = static_cast<int>(n);
    forward = fftw_plan_dft_1d(len, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
    inverse = fftw_plan_dft_1d(len, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (forward == nullptr || inverse == nullptr) {
      release();
      throw std::runtime_error("analytic_signal: FFTW planning failed");
    }
  }
  ~Plans() { release(); }

  void release() {
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
    if (buffer) fftw_free(buffer);
    forward = inverse = nullptr;
    buffer = nullptr;
  }
};

AnalyticSignal::AnalyticSignal(std::size_t length) : length_(length) {
  if (length < 2) throw std::invalid_argument("analytic_signal: need at least 2 samples");
  plans_ = std::make_unique<Plans>(length);
}

AnalyticSignal::~AnalyticSignal() = default;

void AnalyticSignal::transform(std::span<const double> x, std::span<cdouble> out) {
  if (x.size() != length_ || out.size() != length_)
    throw std::invalid_argument("analytic_signal: length mismatch");
  fftw_complex* buf = plans_->buffer;
  for (std::size_t p = 0; p < length_; ++p) {
    buf[p][0] = x[p];
    buf[p][1] = 0.0;
  }
  fftw_execute(plans_->forward);

  const std::size_t P = length_;
  const std::size_t positive_end = (P + 1) / 2;  // bins 1..ceil(P/2)-1 are doubled
  for (std::size_t p = 1; p < positive_end; ++p) {
    buf[p][0] *= 2.0;
    buf[p][1] *= 2.0;
  }
  const std::size_t zero_from = (P % 2 == 0) ? P / 2 + 1 : positive_end;
  for (std::size_t p = zero_from; p < P; ++p) buf[p][0] = buf[p][1] = 0.0;

  fftw_execute(plans_->inverse);
  const double scale = 1.0 / static_cast<double>(P);
  for (std::size_t p = 0; p < P; ++p) out[p] = {buf[p][0] * scale, buf[p][1] * scale};
}

std::vector<cdouble> analytic_signal(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("analytic_signal: empty input");
  AnalyticSignal h(x.size());
  std::vector<cdouble> out(x.size());
  h.transform(x, out);
  return out;
}

std::vector<cdouble> decimate(std::span<const cdouble> x, std::uint32_t D) {
  if (D == 0) throw std::invalid_argument("decimate: factor must be positive");
  std::vector<cdouble> out(x.size() / D);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = x[j * D];
  return out;
}

BasebandCube front_end(const RawCapture& capture) {
  require_valid_config(capture.cfg);
  if (capture.samples.size() != capture.expected_size())
    throw std::invalid_argument("front_end: capture holds " + std::to_string(capture.samples.size()) +
                                " samples, expected " + std::to_string(capture.expected_size()));
  const RadarConfig& cfg = capture.cfg;
  const std::uint32_t S = cfg.samples_per_chirp();

  BasebandCube cube;
  cube.cfg = cfg;
  cube.K = capture.K;
  cube.samples = cfg.decimated_samples();
  cube.data.resize(static_cast<std::size_t>(cube.K) * cfg.N_c * cfg.N * cube.samples);

  std::unique_ptr<AnalyticSignal> hilbert;
  if (capture.kind == SampleKind::Real) hilbert = std::make_unique<AnalyticSignal>(S);
  std::vector<double> re(S);
  std::vector<cdouble> full(S);

  for (std::uint32_t k = 0; k < capture.K; ++k)
    for (std::uint32_t i = 0; i < cfg.N_c; ++i)
      for (std::uint32_t n = 0; n < cfg.N; ++n) {
        auto in = capture.trace(k, i, n);
        if (hilbert) {
          std::transform(in.begin(), in.end(), re.begin(), [](const cdouble& z) { return z.real(); });
          hilbert->transform(re, full);
          for (auto& z : full) z = std::conj(z);
        } else {
          std::copy(in.begin(), in.end(), full.begin());
        }
        const auto dec = decimate(full, cfg.D);
        std::copy_n(dec.begin(), cube.samples, cube.data.begin() + static_cast<std::ptrdiff_t>(cube.index(k, i, n, 0)));
      }
  return cube;
}

}  // namespace cdmradar
