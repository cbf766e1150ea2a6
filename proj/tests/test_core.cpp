#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <random>

#include "oracle_quad.hpp"
#include "pw/builders.hpp"
#include "pw/config.hpp"
#include "pw/fft.hpp"
#include "pw/interp.hpp"
#include "pw/norms.hpp"
#include "pw/pwf_io.hpp"

using namespace pw;

namespace {

Profile1D sampled(const Grid1D& g, double (*fn)(double)) {
  CVec v(g.n_points);
  for (int i = 0; i < g.n_points; ++i) v[i] = fn(g.point(i));
  return Profile1D(g, std::move(v));
}

double gauss(double z) { return std::exp(-z * z); }

Profile1D random_profile(uint64_t seed, const Grid1D& g) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  CVec v(g.n_points);
  for (int i = 0; i < g.n_points; ++i) v[i] = cd(unif(rng), unif(rng));
  return Profile1D(g, std::move(v));
}

}  // namespace

TEST_CASE("grid basics") {
  const Grid1D g = make_grid(8, -2.0, 2.0);
  CHECK(g.n_points == 8);
  CHECK(g.spacing == doctest::Approx(0.5));
  CHECK(g.extent() == doctest::Approx(4.0));
  CHECK(g.point(0) == doctest::Approx(-1.75));
  CHECK_THROWS_AS(Grid1D(1, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D(4, 0.0, -1.0), std::invalid_argument);
  // frequency grid has xi = 0 exactly on node n/2
  const Grid1D fg = freq_grid(g);
  CHECK(fg.point(4) == 0.0);
}

TEST_CASE("lp_norm basics") {
  const Grid1D g = make_grid(64, -1.0, 1.0);  // extent 2
  Profile1D zero = Profile1D::zero(g);
  CHECK(lp_norm(zero, 2.0) == 0.0);

  Profile1D one(g, CVec::Constant(64, cd(1.0, 0.0)));
  CHECK(lp_norm(one, 1.0) == doctest::Approx(2.0).epsilon(1e-14));  // area of support

  CHECK_THROWS_AS(lp_norm(one, 0.5), std::invalid_argument);
  Profile1D badv = one;
  badv.values[3] = cd(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_AS(lp_norm(badv, 2.0), std::invalid_argument);
}

TEST_CASE("gaussian L2 norm matches the analytic value") {
  // analytic: ||e^{-z^2}||_2 = (pi/2)^{1/4}; cross-checked by the independent
  // quadrature oracle
  const double closed_form = std::pow(M_PI / 2.0, 0.25);
  const double quad = std::sqrt(oracle::integrate(
      [](double z) { return std::exp(-2.0 * z * z); }, -10.0, 10.0));
  CHECK(closed_form == doctest::Approx(quad).epsilon(1e-12));

  const Grid1D g = make_grid(1024, -10.0, 10.0);
  CHECK(lp_norm(sampled(g, gauss), 2.0) == doctest::Approx(closed_form).epsilon(1e-12));
}

TEST_CASE("quadrature convergence order on a coarse gaussian") {
  // the extent-4 box keeps the error in a measurable window
  auto err = [](int n) {
    const Grid1D g = make_grid(n, -2.0, 2.0);
    const double exact = std::pow(oracle::integrate(
        [](double z) { return std::exp(-2.0 * z * z); }, -2.0, 2.0), 0.5);
    return std::abs(lp_norm(sampled(g, gauss), 2.0) - exact);
  };
  const double e32 = err(32), e64 = err(64), e128 = err(128);
  CHECK(std::log2(e32 / e64) >= 1.9);
  CHECK(std::log2(e64 / e128) >= 1.9);
}

TEST_CASE("norm homogeneity") {
  const Grid1D g = make_grid(128, -4.0, 4.0);
  Profile1D f = random_profile(7, g);
  for (double p : {1.0, 2.0, 3.5, kInfinity}) {
    const double n1 = lp_norm(f, p);
    Profile1D g2 = f;
    g2.values *= cd(-2.5, 0.0);
    CHECK(lp_norm(g2, p) == doctest::Approx(2.5 * n1).epsilon(1e-13));
  }
}

TEST_CASE("sobolev_norm: zero, Plancherel, gaussian H1") {
  const Grid1D g = make_grid(1024, -10.0, 10.0);
  CHECK(sobolev_norm(Profile1D::zero(g), 1.0) == 0.0);
  CHECK_THROWS_AS(sobolev_norm(Profile1D::zero(g), -1.0), std::invalid_argument);

  // Plancherel for arbitrary (even rough) fields
  for (uint64_t seed : {1u, 2u, 3u}) {
    Profile1D f = random_profile(seed, g);
    const double l2 = lp_norm(f, 2.0);
    CHECK(sobolev_norm(f, 0.0) == doctest::Approx(l2).epsilon(1e-10));
  }

  // gaussian H1: closed form (2 pi)^{1/4}, re-derived by quadrature of
  // (1 + 4 pi^2 xi^2) |F e^{-z^2}|^2 = (1 + 4 pi^2 xi^2) pi e^{-2 pi^2 xi^2}
  const double quad = std::sqrt(oracle::integrate(
      [](double xi) {
        return (1.0 + 4.0 * M_PI * M_PI * xi * xi) * M_PI *
               std::exp(-2.0 * M_PI * M_PI * xi * xi);
      },
      -8.0, 8.0));
  CHECK(std::pow(2.0 * M_PI, 0.25) == doctest::Approx(quad).epsilon(1e-12));
  CHECK(sobolev_norm(sampled(g, gauss), 1.0) == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("2D Plancherel") {
  const Grid1D gx = make_grid(64, -3.0, 3.0), gy = make_grid(32, -2.0, 2.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  CMat v(gy.n_points, gx.n_points);
  for (Eigen::Index r = 0; r < v.rows(); ++r)
    for (Eigen::Index c = 0; c < v.cols(); ++c) v(r, c) = cd(unif(rng), unif(rng));
  const PhysField2D f(gx, gy, std::move(v));
  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-10));
}

TEST_CASE("spectrum matches the closed-form gaussian transform") {
  const Grid1D g = make_grid(512, -12.0, 12.0);
  const Profile1D spec = spectrum(sampled(g, gauss));
  for (int k = 0; k < spec.size(); k += 37) {
    const double xi = spec.grid_z.point(k);
    const double expect = std::sqrt(M_PI) * std::exp(-M_PI * M_PI * xi * xi);
    CHECK(std::abs(spec.values[k] - cd(expect, 0.0)) < 1e-10);
  }
  // round trip
  const Profile1D back = inverse_spectrum(spec, g);
  double err = 0.0;
  for (int i = 0; i < g.n_points; ++i)
    err = std::max(err, std::abs(back.values[i] - gauss(g.point(i))));
  CHECK(err < 1e-12);
}

TEST_CASE("interp reproduces cubics and vanishes outside") {
  const Grid1D g = make_grid(32, 0.0, 4.0);
  CVec v(g.n_points);
  auto cubic = [](double x) { return 0.5 * x * x * x - x * x + 2.0 * x - 3.0; };
  for (int i = 0; i < g.n_points; ++i) v[i] = cubic(g.point(i));
  const Profile1D f(g, std::move(v));
  for (double x : {0.31, 1.77, 2.05, 3.5})
    CHECK(interp_point(f, x).real() == doctest::Approx(cubic(x)).epsilon(1e-12));
  CHECK(interp_point(f, -1.0) == cd(0.0, 0.0));
  CHECK(interp_point(f, 9.0) == cd(0.0, 0.0));
}

TEST_CASE("PWF1 round trip is bit identical") {
  const Grid1D gz = make_grid(16, -1.0, 3.0), gc = make_grid(8, -2.0, 2.0);
  SpeedField f = random_smooth_field(42, gz, gc);
  f.values(3, 5) = cd(-0.0, 1e-308);  // exercise tricky bit patterns
  const std::string path = "roundtrip_test.pwf";
  write_pwf(path, f);
  const SpeedField g = read_pwf_speed(path);
  REQUIRE(g.grid_z == f.grid_z);
  REQUIRE(g.grid_c == f.grid_c);
  bool identical = true;
  for (Eigen::Index i = 0; i < f.values.size(); ++i) {
    const cd a = f.values.data()[i], b = g.values.data()[i];
    if (std::memcmp(&a, &b, sizeof(cd)) != 0) identical = false;
  }
  CHECK(identical);

  const Profile1D p = random_profile(5, gz);
  write_pwf(path, p);
  const Profile1D q = read_pwf_profile(path);
  bool same = q.grid_z == p.grid_z;
  for (int i = 0; i < p.size() && same; ++i) same = q.values[i] == p.values[i];
  CHECK(same);
  write_csv("roundtrip_test.csv", p);
  std::FILE* fp = std::fopen("roundtrip_test.csv", "r");
  REQUIRE(fp != nullptr);
  char header[16] = {0};
  REQUIRE(std::fgets(header, sizeof header, fp) != nullptr);
  CHECK(std::string(header) == "coord,re,im\n");
  std::fclose(fp);
  std::remove(path.c_str());
  std::remove("roundtrip_test.csv");
}

TEST_CASE("config: minimal valid transform run") {
  const std::string text =
      "grid.z.n = 64\ngrid.z.min = -4\ngrid.z.max = 4\n"
      "grid.c.n = 64\ngrid.c.min = -4\ngrid.c.max = 4\n"
      "grid.x.n = 64\ngrid.x.min = -8\ngrid.x.max = 8\n"
      "grid.y.n = 64\ngrid.y.min = -4\ngrid.y.max = 4\n"
      "field.f = gaussian(1,1)\n";
  const RunConfig cfg = parse_config(text, "transform");
  CHECK(cfg.grid("z").n_points == 64);
  CHECK(cfg.str("field.f") == "gaussian(1,1)");
  CHECK(cfg.integer("threads", 1) == 1);  // default filled
}

TEST_CASE("config: violations are collected, not just the first") {
  const std::string text =
      "nls.sigma = 0.5\n"
      "bogus.key = 1\n"
      "grid.z.n = 100\n"
      "profile.0.speed = 1\n"
      "profile.1.speed = 1\n";
  try {
    parse_config(text, "nls-system");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    std::string all;
    for (const auto& v : e.violations) all += v + "\n";
    CHECK(e.violations.size() >= 4);
    CHECK(all.find("sigma must be >= 1") != std::string::npos);
    CHECK(all.find("unknown key 'bogus.key'") != std::string::npos);
    CHECK(all.find("powers of two") != std::string::npos);
    CHECK(all.find("coinciding speeds") != std::string::npos);
    CHECK(all.find("0") != std::string::npos);  // names the offending pair
  }
}

TEST_CASE("builders: gaussian samples and smoothed indicator") {
  const Grid1D gz = make_grid(64, -4.0, 4.0), gc = make_grid(32, -4.0, 4.0);
  const SpeedField f = build_speed_field("gaussian(1,1)", gz, gc);
  for (int ic : {0, 7, 31})
    for (int iz : {0, 11, 63}) {
      const double z = gz.point(iz), c = gc.point(ic);
      CHECK(f.values(ic, iz).real() == doctest::Approx(std::exp(-z * z - c * c)));
    }
  CHECK(smoothed_indicator(0.5, 0.0, 1.0, 0.2) == 1.0);
  CHECK(smoothed_indicator(0.0, 0.0, 1.0, 0.2) == doctest::Approx(0.5));
  CHECK(smoothed_indicator(-0.2, 0.0, 1.0, 0.2) == 0.0);
  CHECK_THROWS_AS(build_speed_field("warp(1)", gz, gc), std::invalid_argument);
}
