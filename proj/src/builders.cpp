#include "pw/builders.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "pw/experiments.hpp"

namespace pw {

namespace {

struct Ctor {
  std::string name;
  std::vector<double> args;
};

Ctor parse_ctor(const std::string& spec) {
  const auto open = spec.find('(');
  Ctor c;
  if (open == std::string::npos) {
    c.name = spec;
    return c;
  }
  const auto close = spec.rfind(')');
  if (close == std::string::npos || close < open)
    throw std::invalid_argument("field spec: unbalanced parentheses in '" + spec + "'");
  c.name = spec.substr(0, open);
  std::string args = spec.substr(open + 1, close - open - 1);
  std::stringstream ss(args);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.find_first_not_of(" \t") == std::string::npos) continue;
    c.args.push_back(std::stod(tok));
  }
  return c;
}

double arg(const Ctor& c, size_t i, double def) {
  return i < c.args.size() ? c.args[i] : def;
}

void need_args(const Ctor& c, size_t n) {
  if (c.args.size() < n)
    throw std::invalid_argument("field spec: '" + c.name + "' needs at least " +
                                std::to_string(n) + " argument(s)");
}

}  // namespace

double smoothed_indicator(double x, double lo, double hi, double w) {
  if (w <= 0.0) return (x >= lo && x <= hi) ? 1.0 : 0.0;
  const double a = std::max(lo, x - 0.5 * w);
  const double b = std::min(hi, x + 0.5 * w);
  return std::max(0.0, b - a) / w;
}

Profile1D build_profile(const std::string& spec, const Grid1D& g) {
  const Ctor c = parse_ctor(spec);
  CVec v(g.n_points);
  if (c.name == "gauss1d") {
    need_args(c, 1);
    const double a = c.args[0], amp = arg(c, 1, 1.0);
    for (int i = 0; i < g.n_points; ++i) {
      const double z = g.point(i);
      v[i] = amp * std::exp(-a * z * z);
    }
  } else if (c.name == "dgauss1d") {
    need_args(c, 1);
    const double a = c.args[0];
    for (int i = 0; i < g.n_points; ++i) {
      const double z = g.point(i);
      v[i] = -2.0 * a * z * std::exp(-a * z * z);
    }
  } else if (c.name == "sech") {
    const double k = arg(c, 0, 1.0);
    for (int i = 0; i < g.n_points; ++i) v[i] = 1.0 / std::cosh(k * g.point(i));
  } else if (c.name == "box") {
    need_args(c, 2);
    const double w = arg(c, 2, g.spacing);
    for (int i = 0; i < g.n_points; ++i)
      v[i] = smoothed_indicator(g.point(i), c.args[0], c.args[1], w);
  } else if (c.name == "bandpass") {
    need_args(c, 2);
    const double a = c.args[0], xi0 = c.args[1];
    for (int i = 0; i < g.n_points; ++i) {
      const double z = g.point(i);
      v[i] = std::exp(-a * z * z) * std::cos(2.0 * M_PI * xi0 * z);
    }
  } else if (c.name == "zero") {
    v.setZero();
  } else {
    throw std::invalid_argument("unknown profile constructor '" + c.name + "'");
  }
  return Profile1D(g, std::move(v));
}

SpeedField build_speed_field(const std::string& spec, const Grid1D& gz, const Grid1D& gc) {
  const Ctor c = parse_ctor(spec);
  CMat v(gc.n_points, gz.n_points);
  if (c.name == "gaussian") {
    need_args(c, 2);
    const double az = c.args[0], ac = c.args[1], amp = arg(c, 2, 1.0);
    for (int ic = 0; ic < gc.n_points; ++ic) {
      const double cc = gc.point(ic);
      for (int iz = 0; iz < gz.n_points; ++iz) {
        const double z = gz.point(iz);
        v(ic, iz) = amp * std::exp(-az * z * z - ac * cc * cc);
      }
    }
  } else if (c.name == "unit_square") {
    const double w = arg(c, 0, 4.0 * gz.spacing);
    for (int ic = 0; ic < gc.n_points; ++ic) {
      const double sc = smoothed_indicator(gc.point(ic), 0.0, 1.0, w);
      for (int iz = 0; iz < gz.n_points; ++iz)
        v(ic, iz) = sc * smoothed_indicator(gz.point(iz), 0.0, 1.0, w);
    }
  } else if (c.name == "highpass_gaussian") {
    need_args(c, 1);
    const double eps = c.args[0], az = arg(c, 1, 1.0), ac = arg(c, 2, 1.0);
    const Profile1D geps =
        highpass_profile(build_profile("gauss1d(" + std::to_string(az) + ")", gz), eps);
    for (int ic = 0; ic < gc.n_points; ++ic) {
      const double cc = gc.point(ic);
      const double fac = std::exp(-ac * cc * cc);
      for (int iz = 0; iz < gz.n_points; ++iz) v(ic, iz) = fac * geps.values[iz];
    }
  } else if (c.name == "random") {
    need_args(c, 1);
    return random_smooth_field(uint64_t(c.args[0]), gz, gc, int(arg(c, 1, 6.0)));
  } else if (c.name == "zero") {
    v.setZero();
  } else {
    throw std::invalid_argument("unknown speed-field constructor '" + c.name + "'");
  }
  return SpeedField(gz, gc, std::move(v));
}

PhysField2D build_phys_field(const std::string& spec, const Grid1D& gx, const Grid1D& gy) {
  const Ctor c = parse_ctor(spec);
  CMat v(gy.n_points, gx.n_points);
  if (c.name == "gaussian2d") {
    need_args(c, 2);
    const double ax = c.args[0], ay = c.args[1], amp = arg(c, 2, 1.0);
    for (int iy = 0; iy < gy.n_points; ++iy) {
      const double y = gy.point(iy);
      for (int ix = 0; ix < gx.n_points; ++ix) {
        const double x = gx.point(ix);
        v(iy, ix) = amp * std::exp(-ax * x * x - ay * y * y);
      }
    }
  } else if (c.name == "zero") {
    v.setZero();
  } else {
    throw std::invalid_argument("unknown phys-field constructor '" + c.name + "'");
  }
  return PhysField2D(gx, gy, std::move(v));
}

SpeedField random_smooth_field(uint64_t seed, const Grid1D& gz, const Grid1D& gc,
                               int n_modes, double env) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  struct Mode {
    double az, ac, ph, amp;
  };
  std::vector<Mode> modes(size_t(n_modes), Mode{});
  for (auto& m : modes) {
    m.az = 0.7 * unif(rng);
    m.ac = 0.7 * unif(rng);
    m.ph = M_PI * unif(rng);
    m.amp = unif(rng);
  }
  CMat v(gc.n_points, gz.n_points);
  for (int ic = 0; ic < gc.n_points; ++ic) {
    const double cc = gc.point(ic);
    for (int iz = 0; iz < gz.n_points; ++iz) {
      const double z = gz.point(iz);
      double s = 0.0;
      for (const auto& m : modes)
        s += m.amp * std::cos(2.0 * M_PI * (m.az * z + m.ac * cc) + m.ph);
      v(ic, iz) = s * std::exp(-env * (z * z + cc * cc));
    }
  }
  return SpeedField(gz, gc, std::move(v));
}

}  // namespace pw
