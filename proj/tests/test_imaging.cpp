#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cdmradar/imaging.hpp"
#include "oracles.hpp"

using namespace cdmradar;

namespace {

constexpr double kPi = std::numbers::pi;

ChannelSnapshots calibrated(const RadarConfig& cfg, const Scene& s, std::uint32_t K,
                            SampleKind kind = SampleKind::Complex) {
  const auto a = default_assignment(cfg);
  SynthOptions o;
  o.kind = kind;
  const auto x = decode(front_end(synthesize(cfg, s, a, K, o)), hadamard(cfg.N_c), a);
  return calibrate(x, reference_signal(cfg, {1.0, 0.0, std::nullopt}, a));
}

Eigen::MatrixXcd random_hermitian(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) A(i, j) = {g(rng), g(rng)};
  return (A + A.adjoint()) / 2.0;
}

double median(std::vector<double> v) {
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST_CASE("stack orders channel-major, sample-minor") {
  ChannelSnapshots x;
  x.cfg = reference_config();
  x.aperture.positions = {0.0, 1.0, 2.0};
  x.K = 2;
  x.samples = 4;
  x.data.resize(2 * 3 * 4);
  for (std::uint32_t k = 0; k < 2; ++k)
    for (std::size_t v = 0; v < 3; ++v)
      for (std::uint32_t s = 0; s < 4; ++s) x.trace(k, v)[s] = cdouble(double(k), double(v * 10 + s));
  const auto S = stack(x);
  REQUIRE(S.dimension() == 12);
  REQUIRE(S.count() == 2);
  for (std::uint32_t k = 0; k < 2; ++k)
    for (std::size_t v = 0; v < 3; ++v)
      for (std::uint32_t s = 0; s < 4; ++s) CHECK(S.vectors(v * 4 + s, k) == cdouble(double(k), double(v * 10 + s)));
}

TEST_CASE("sample covariance") {
  SECTION("single snapshot is rank one with eigenvalue ||x||^2") {
    SnapshotMatrix s;
    s.vectors.resize(5, 1);
    s.vectors << cdouble(1, 2), cdouble(0, -1), cdouble(3, 0), cdouble(-1, 1), cdouble(0.5, 0.5);
    const auto R = sample_covariance(s);
    CHECK(R.K == 1);
    const auto e = eig_hermitian(R.matrix);
    CHECK(e.values(0) == Catch::Approx(s.vectors.squaredNorm()).epsilon(1e-12));
    for (Eigen::Index i = 1; i < 5; ++i) CHECK(std::abs(e.values(i)) < 1e-12);
  }
  SECTION("identical snapshots give the single-snapshot matrix") {
    SnapshotMatrix one, many;
    one.vectors = Eigen::VectorXcd::LinSpaced(6, 0.0, 5.0) * cdouble(1, -1);
    many.vectors = one.vectors.replicate(1, 7);
    CHECK((sample_covariance(one).matrix - sample_covariance(many).matrix).norm() < 1e-12);
  }
  SECTION("matches the naive double loop, exactly Hermitian, trace is mean energy") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    for (auto [dim, K] : {std::pair{6, 5}, std::pair{31, 3}, std::pair{20, 40}}) {
      SnapshotMatrix s;
      s.vectors.resize(dim, K);
      std::vector<std::vector<cdouble>> cols(K, std::vector<cdouble>(dim));
      for (int k = 0; k < K; ++k)
        for (int i = 0; i < dim; ++i) s.vectors(i, k) = cols[k][i] = {g(rng), g(rng)};
      const auto R = sample_covariance(s).matrix;
      const auto ref = oracle::covariance(cols);
      double scale = 0.0, err = 0.0;
      for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) {
          scale = std::max(scale, std::abs(ref[j * dim + i]));
          err = std::max(err, std::abs(R(i, j) - ref[j * dim + i]));
        }
      CHECK(err <= 1e-12 * scale);
      CHECK((R - R.adjoint()).norm() == 0.0);
      CHECK(std::abs(R.trace().real() - s.vectors.squaredNorm() / K) < 1e-10 * R.trace().real());
    }
  }
  SECTION("empty snapshot matrix is rejected") {
    SnapshotMatrix s;
    s.vectors.resize(4, 0);
    CHECK_THROWS_AS(sample_covariance(s), std::invalid_argument);
  }
}

TEST_CASE("eig_hermitian") {
  SECTION("identity") {
    const auto e = eig_hermitian(Eigen::MatrixXcd::Identity(4, 4));
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(e.values(i) == Catch::Approx(1.0));
    CHECK((e.vectors.adjoint() * e.vectors - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-12);
  }
  SECTION("diag(3, 1)") {
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(2, 2);
    R(0, 0) = 3.0;
    R(1, 1) = 1.0;
    const auto e = eig_hermitian(R);
    CHECK(e.values(0) == Catch::Approx(3.0));
    CHECK(e.values(1) == Catch::Approx(1.0));
    CHECK(std::abs(std::abs(e.vectors(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(e.vectors(1, 1)) - 1.0) < 1e-12);
  }
  SECTION("random Hermitian 64x64") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto R = random_hermitian(64, seed);
      const auto e = eig_hermitian(R);
      const Eigen::MatrixXcd& V = e.vectors;
      CHECK((R * V - V * e.values.cast<cdouble>().asDiagonal()).norm() <= 1e-10 * R.norm());
      CHECK((V.adjoint() * V - Eigen::MatrixXcd::Identity(64, 64)).norm() <= 1e-10);
      for (Eigen::Index i = 1; i < 64; ++i) CHECK(e.values(i) <= e.values(i - 1));
    }
  }
  SECTION("non-Hermitian input is rejected") {
    auto R = random_hermitian(8, 9);
    R(0, 1) += cdouble(0.5, 0.0);
    CHECK_THROWS_AS(eig_hermitian(R), std::invalid_argument);
    CHECK_THROWS_AS(eig_hermitian(Eigen::MatrixXcd(2, 3)), std::invalid_argument);
  }
}

TEST_CASE("split_subspace") {
  SECTION("rank one, L = 1: noise basis is orthogonal to x") {
    Eigen::VectorXcd x(5);
    x << cdouble(1, 2), cdouble(0, -1), cdouble(3, 0), cdouble(-1, 1), cdouble(0.5, 0.5);
    const Eigen::MatrixXcd R = x * x.adjoint();
    const auto sp = split_subspace(eig_hermitian(R), 1);
    CHECK(sp.noise_basis().cols() == 4);
    CHECK((sp.noise_basis().adjoint() * x).norm() < 1e-12 * x.norm());
  }
  SECTION("L = dim - 1 leaves one noise vector") {
    const auto sp = split_subspace(eig_hermitian(random_hermitian(6, 5)), 5);
    CHECK(sp.noise_basis().cols() == 1);
    CHECK(sp.signal_basis().cols() == 5);
  }
  SECTION("L outside (0, dim) is rejected") {
    const auto e = eig_hermitian(random_hermitian(6, 5));
    CHECK_THROWS_AS(split_subspace(e, 0), std::invalid_argument);
    CHECK_THROWS_AS(split_subspace(e, 6), std::invalid_argument);
    CHECK_THROWS_AS(split_subspace(e, 7), std::invalid_argument);
  }
  SECTION("two incoherent targets: steering vectors lie in the signal subspace") {
    const auto cfg = reference_config();
    const auto a1 = steering_vector(cfg, 1.3, deg_to_rad(12.0));
    const auto a2 = steering_vector(cfg, 2.2, deg_to_rad(-25.0));
    const Eigen::MatrixXcd R = a1 * a1.adjoint() + 0.5 * a2 * a2.adjoint();
    const auto sp = split_subspace(eig_hermitian(R), 2);
    CHECK((sp.noise_basis().adjoint() * a1).norm() / a1.norm() <= 1e-6);
    CHECK((sp.noise_basis().adjoint() * a2).norm() / a2.norm() <= 1e-6);
  }
}

TEST_CASE("steering vectors") {
  const auto cfg = reference_config();
  SECTION("r = 0, theta = 0 is all ones") {
    const auto a = steering_vector(cfg, 0.0, 0.0);
    REQUIRE(a.size() == 768);
    CHECK((a - Eigen::VectorXcd::Ones(768)).norm() < 1e-12);
  }
  SECTION("matches a noiseless calibrated target") {
    Scene s;
    s.targets = {{1.75, deg_to_rad(17.0), 1.0}};
    const auto x = stack(calibrated(cfg, s, 1)).vectors.col(0);
    const auto a = steering_vector(cfg, 1.75, deg_to_rad(17.0));
    CHECK(std::abs(a.dot(x)) / (a.norm() * x.norm()) >= 0.999);
  }
  SECTION("points one range cell apart are nearly orthogonal") {
    const double cell = kSpeedOfLight / (2 * cfg.b);
    for (double dr : {cell, 1.5 * cell, 3 * cell}) {
      const auto a = steering_vector(cfg, 1.0, 0.2);
      const auto b = steering_vector(cfg, 1.0 + dr, 0.2);
      CHECK(std::abs(a.dot(b)) / (a.norm() * b.norm()) < 0.5);
    }
  }
  SECTION("out-of-range points are rejected") {
    CHECK_THROWS_AS(steering_vector(cfg, -0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(steering_vector(cfg, 3.5, 0.0), std::invalid_argument);
    CHECK_NOTHROW(steering_vector(cfg, 3.0, 0.0));
  }
}

TEST_CASE("make_grid") {
  const auto g = make_grid(0.0, 1.0, 0.25);
  REQUIRE(g.size() == 5);
  CHECK(g.back() == Catch::Approx(1.0));
  CHECK(make_grid(0.0, 3.0, 0.01).size() == 301);
  CHECK(make_grid(2.0, 2.0, 0.1).size() == 1);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1.0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("find_peaks") {
  SECTION("uniform image has no strict maxima") {
    const std::vector<double> v(12, 1.0);
    CHECK(find_peaks(v, {0, 1, 2}, {0, 1, 2, 3}, 0).empty());
  }
  SECTION("ordering and tie breaking") {
    // 3 x 5, two equal maxima and one smaller one
    const std::vector<double> v{1, 1, 1, 1, 1,  //
                                5, 1, 2, 1, 5,  //
                                1, 1, 1, 1, 1};
    const auto p = find_peaks(v, {0.0, 0.1, 0.2}, {-1.0, -0.5, 0.0, 0.5, 1.0}, 0);
    REQUIRE(p.size() == 3);
    CHECK(p[0].range_index == 1);
    CHECK(p[0].angle_index == 0);
    CHECK(p[1].angle_index == 4);
    CHECK(p[2].value == 2.0);
    CHECK(p[2].r == 0.1);
    CHECK(p[2].theta == 0.0);
    CHECK(find_peaks(v, {0.0, 0.1, 0.2}, {-1.0, -0.5, 0.0, 0.5, 1.0}, 1).size() == 1);
  }
  SECTION("plateau neighbours are not strict maxima") {
    const std::vector<double> v{0, 0, 0, 0, 3, 3, 0, 0, 0};
    CHECK(find_peaks(v, {0, 1, 2}, {0, 1, 2}, 0).empty());
  }
  SECTION("shape mismatch is rejected") {
    CHECK_THROWS_AS(find_peaks(std::vector<double>(5, 0.0), {0, 1}, {0, 1}, 0), std::invalid_argument);
  }
}

TEST_CASE("music_image on a noiseless on-grid target") {
  const auto cfg = reference_config();
  Scene s;
  s.targets = {{1.5, deg_to_rad(10.0), 1.0}};
  const auto x = calibrated(cfg, s, 1);
  const auto sp = split_subspace(eig_hermitian(sample_covariance(stack(x)).matrix), 1);
  const auto ranges = make_grid(1.0, 2.0, 0.01);
  const auto angles = make_grid(deg_to_rad(-30.0), deg_to_rad(30.0), deg_to_rad(1.0));
  const auto img = music_image(sp, cfg, x.aperture, ranges, angles);
  REQUIRE(img.values.size() == ranges.size() * angles.size());
  REQUIRE(img.peaks.size() == 1);
  CHECK(img.peaks[0].r == Catch::Approx(1.5).margin(1e-9));
  CHECK(rad_to_deg(img.peaks[0].theta) == Catch::Approx(10.0).margin(1e-9));
  CHECK(img.peaks[0].value >= 1e4 * median(img.values));
  for (double v : img.values) CHECK(std::isfinite(v));
}

TEST_CASE("music_image on noise only has no dominant peak") {
  const auto cfg = reference_config();
  Scene s;
  s.snr_db = 0.0;
  s.seed = 77;
  // noise power is referenced to unit amplitude when the scene is empty
  const auto x = calibrated(cfg, s, 42);
  const auto sp = split_subspace(eig_hermitian(sample_covariance(stack(x)).matrix), 1);
  const auto img = music_image(sp, cfg, x.aperture, make_grid(0.5, 2.5, 0.02),
                               make_grid(deg_to_rad(-40.0), deg_to_rad(40.0), deg_to_rad(2.0)));
  const double med = median(img.values);
  for (const auto& p : img.peaks) CHECK(p.value < 100 * med);
}

TEST_CASE("music_image: projector routes agree and scaling is irrelevant") {
  const auto cfg = reference_config();
  Scene s;
  s.targets = {{1.2, deg_to_rad(-8.0), 1.0}, {2.1, deg_to_rad(20.0), 0.8}};
  s.snr_db = 10.0;
  s.seed = 3;
  const auto x = calibrated(cfg, s, 42);
  const auto R = sample_covariance(stack(x)).matrix;
  const auto sp = split_subspace(eig_hermitian(R), 2);
  const auto ranges = make_grid(1.0, 2.3, 0.02);
  const auto angles = make_grid(deg_to_rad(-30.0), deg_to_rad(30.0), deg_to_rad(1.5));

  MusicOptions noise{Projector::NoiseBasis, 0}, comp{Projector::SignalComplement, 0};
  const auto a = music_image(sp, cfg, x.aperture, ranges, angles, 0.0, noise);
  const auto b = music_image(sp, cfg, x.aperture, ranges, angles, 0.0, comp);
  const auto c = music_image(split_subspace(eig_hermitian(R * 1e6), 2), cfg, x.aperture, ranges, angles);
  double worst_ab = 0.0, worst_ac = 0.0;
  for (std::size_t j = 0; j < a.values.size(); ++j) {
    worst_ab = std::max(worst_ab, std::abs(a.values[j] - b.values[j]) / a.values[j]);
    worst_ac = std::max(worst_ac, std::abs(a.values[j] - c.values[j]) / a.values[j]);
  }
  CHECK(worst_ab < 1e-6);
  CHECK(worst_ac < 1e-9);
}
