#include "pw/evolve.hpp"

#include <cmath>

#include "pw/fft.hpp"
#include "pw/interp.hpp"
#include "pw/norms.hpp"

namespace pw {

void validate(const PropagatorSpec& spec) {
  if (!std::isfinite(spec.time)) throw std::invalid_argument("PropagatorSpec: time not finite");
  if (!(spec.dispersion_coeff > 0.0))
    throw std::invalid_argument("PropagatorSpec: dispersion_coeff must be > 0");
}

Profile1D evolve_free_1d(const Profile1D& f, double a, double t) {
  Profile1D g = f;
  apply_multiplier(g, [a, t](double xi) {
    const double w = 2.0 * M_PI * xi;
    const double ph = -a * w * w * t;
    return cd(std::cos(ph), std::sin(ph));
  });
  return g;
}

Profile1D evolve_heat_1d(const Profile1D& f, double a, double t) {
  Profile1D g = f;
  apply_multiplier(g, [a, t](double xi) {
    const double w = 2.0 * M_PI * xi;
    return cd(std::exp(-a * w * w * t), 0.0);
  });
  return g;
}

PhysField2D evolve_free_2d(const PhysField2D& u, double t) {
  PhysField2D g = u;
  CMat& v = g.values;
  dft2_inplace(v, -1);
  const auto xis = fft_freq(u.grid_x);
  const auto etas = fft_freq(u.grid_y);
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    const double wy = 2.0 * M_PI * etas[size_t(r)];
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
      const double wx = 2.0 * M_PI * xis[size_t(c)];
      const double ph = -(wx * wx + wy * wy) * t;
      v(r, c) *= cd(std::cos(ph), std::sin(ph));
    }
  }
  idft2_inplace(v);
  return g;
}

SpeedField evolve_planewave_part(const SpeedField& f, double t) {
  SpeedField g = f;
  CMat& v = g.values;
  dft_rows_inplace(v, -1);
  const auto xis = fft_freq(f.grid_z);
  for (int ic = 0; ic < f.grid_c.n_points; ++ic) {
    const double c = f.grid_c.point(ic);
    const double a = 1.0 + c * c;
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
      const double w = 2.0 * M_PI * xis[size_t(k)];
      const double ph = -a * w * w * t;
      v(ic, k) *= cd(std::cos(ph), std::sin(ph));
    }
  }
  idft_rows_inplace(v);
  return g;
}

double semigroup_commute_residual(const SpeedField& f, double t, const Grid1D& gx,
                                  const Grid1D& gy, const PwtOptions& opt) {
  const PhysField2D tf = pwt_direct(f, gx, gy, opt);
  const PhysField2D route1 = evolve_free_2d(tf, t);
  const PhysField2D route2 = pwt_direct(evolve_planewave_part(f, t), gx, gy, opt);
  PhysField2D diff = route1;
  diff.values -= route2.values;
  return lp_norm(diff, 2.0) / (1.0 + lp_norm(tf, 2.0));
}

SpeedField wave_slices(const SpeedField& f0, const SpeedField& f1, double t,
                       const PwtOptions& opt) {
  if (!(f0.grid_z == f1.grid_z) || !(f0.grid_c == f1.grid_c))
    throw std::invalid_argument("wave_slices: f0/f1 grids differ");
  SpeedField g = f0;
  for (int ic = 0; ic < f0.grid_c.n_points; ++ic) {
    const double c = f0.grid_c.point(ic);
    const double s = std::sqrt(1.0 + c * c);
    const Profile1D row1(f1.grid_z, f1.values.row(ic).transpose());
    const CVec G = cumtrapz(row1);
    const cd* row0 = f0.values.data() + Eigen::Index(ic) * f0.values.cols();
    for (int iz = 0; iz < f0.grid_z.n_points; ++iz) {
      const double z = f0.grid_z.point(iz);
      const cd left = interp_point(f0.grid_z, row0, 1, z - s * t, opt.interp_order);
      const cd right = interp_point(f0.grid_z, row0, 1, z + s * t, opt.interp_order);
      const cd Gr = eval_antiderivative(f1.grid_z, G, z + s * t, opt.interp_order);
      const cd Gl = eval_antiderivative(f1.grid_z, G, z - s * t, opt.interp_order);
      g.values(ic, iz) = 0.5 * (left + right) + (Gr - Gl) / (2.0 * s);
    }
  }
  return g;
}

PhysField2D wave2d_via_pwt(const SpeedField& f0, const SpeedField& f1, double t,
                           const Grid1D& gx, const Grid1D& gy, const PwtOptions& opt,
                           TransformStats* stats) {
  return pwt_direct(wave_slices(f0, f1, t, opt), gx, gy, opt, stats);
}

Profile1D oscillatory_family_eval(const Profile1D& A, double t, const Grid1D& x_grid,
                                  FamilyKind kind) {
  CVec out(x_grid.n_points);
  const double wc = A.grid_z.spacing;
  for (int ix = 0; ix < x_grid.n_points; ++ix) {
    const double x = x_grid.point(ix);
    cd acc(0.0, 0.0);
    for (int ic = 0; ic < A.size(); ++ic) {
      const double c = A.grid_z.point(ic);
      cd phase;
      if (kind == FamilyKind::heat)
        phase = std::exp(cd(-c * c * t, -c * x));
      else
        phase = std::exp(cd(0.0, -c * x + c * c * t));
      acc += A.values[ic] * phase;
    }
    out[ix] = acc * wc;
  }
  return Profile1D(x_grid, std::move(out));
}

Profile1D angular_coefficients(const Profile1D& u0, const Grid1D& c_grid) {
  const Profile1D spec = spectrum(u0);
  CVec out(c_grid.n_points);
  for (int ic = 0; ic < c_grid.n_points; ++ic) {
    const double xi = -c_grid.point(ic) / (2.0 * M_PI);
    out[ic] = interp_point(spec, xi, 3) / (2.0 * M_PI);
  }
  return Profile1D(c_grid, std::move(out));
}

}  // namespace pw
