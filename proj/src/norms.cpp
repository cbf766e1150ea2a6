#include "pw/norms.hpp"

#include <cmath>

#include "pw/fft.hpp"

namespace pw {

namespace {

void check_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1 or infinity");
}

double reduce_lp(const cd* data, Eigen::Index count, double p, double cellw) {
  if (p == kInfinity) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < count; ++i) m = std::max(m, std::abs(data[i]));
    return m;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (Eigen::Index i = 0; i < count; ++i) acc += std::norm(data[i]);
  } else if (p == 1.0) {
    for (Eigen::Index i = 0; i < count; ++i) acc += std::abs(data[i]);
  } else {
    for (Eigen::Index i = 0; i < count; ++i) acc += std::pow(std::abs(data[i]), p);
  }
  return std::pow(acc * cellw, 1.0 / p);
}

double spectral_hs(CVec v, const Grid1D& g, double s) {
  dft_inplace(v, -1);
  const auto xi = fft_freq(g);
  double acc = 0.0;
  for (int k = 0; k < g.n_points; ++k) {
    const double w = 2.0 * M_PI * xi[k];
    const double mult = (s == 0.0) ? 1.0 : std::pow(1.0 + w * w, s);
    acc += mult * std::norm(v[k]);
  }
  return std::sqrt(acc * g.spacing / g.n_points);
}

}  // namespace

double lp_norm(const Profile1D& f, double p) {
  check_p(p);
  if (!all_finite(f.values)) throw std::invalid_argument("lp_norm: non-finite entries");
  return reduce_lp(f.values.data(), f.values.size(), p, f.grid_z.spacing);
}

double lp_norm(const PhysField2D& f, double p) {
  check_p(p);
  if (!all_finite(f.values)) throw std::invalid_argument("lp_norm: non-finite entries");
  return reduce_lp(f.values.data(), f.values.size(), p,
                   f.grid_x.spacing * f.grid_y.spacing);
}

double lp_norm(const SpeedField& f, double p) {
  check_p(p);
  if (!all_finite(f.values)) throw std::invalid_argument("lp_norm: non-finite entries");
  return reduce_lp(f.values.data(), f.values.size(), p,
                   f.grid_z.spacing * f.grid_c.spacing);
}

double sobolev_norm(const Profile1D& f, double s) {
  if (s < 0.0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
  if (!all_finite(f.values)) throw std::invalid_argument("sobolev_norm: non-finite entries");
  return spectral_hs(f.values, f.grid_z, s);
}

double sobolev_norm_row(const SpeedField& f, int ic, double s) {
  CVec row = f.values.row(ic).transpose();
  return spectral_hs(std::move(row), f.grid_z, s);
}

double l2_norm_row(const SpeedField& f, int ic) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < f.values.cols(); ++i) acc += std::norm(f.values(ic, i));
  return std::sqrt(acc * f.grid_z.spacing);
}

double l1_norm_row(const SpeedField& f, int ic) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < f.values.cols(); ++i) acc += std::abs(f.values(ic, i));
  return acc * f.grid_z.spacing;
}

namespace {

double spectral_hs_2d(CMat v, const Grid1D& gx, const Grid1D& gy, double s) {
  dft2_inplace(v, -1);
  const auto xis = fft_freq(gx);
  const auto etas = fft_freq(gy);
  double acc = 0.0;
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    const double wy = 2.0 * M_PI * etas[size_t(r)];
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
      const double wx = 2.0 * M_PI * xis[size_t(c)];
      const double mult = (s == 0.0) ? 1.0 : std::pow(1.0 + wx * wx + wy * wy, s);
      acc += mult * std::norm(v(r, c));
    }
  }
  const double cell = gx.spacing * gy.spacing / double(gx.n_points) / double(gy.n_points);
  return std::sqrt(acc * cell);
}

}  // namespace

double sobolev_norm(const PhysField2D& f, double s) {
  if (s < 0.0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
  if (!all_finite(f.values)) throw std::invalid_argument("sobolev_norm: non-finite entries");
  return spectral_hs_2d(f.values, f.grid_x, f.grid_y, s);
}

double sobolev_norm(const SpeedField& f, double s) {
  if (s < 0.0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
  if (!all_finite(f.values)) throw std::invalid_argument("sobolev_norm: non-finite entries");
  return spectral_hs_2d(f.values, f.grid_z, f.grid_c, s);
}

}  // namespace pw
