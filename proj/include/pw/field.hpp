#pragma once

#include <string>

#include "pw/grid.hpp"

namespace pw {

// 1D complex profile f(z) on a uniform grid.
struct Profile1D {
  Grid1D grid_z;
  CVec values;

  Profile1D() = default;
  Profile1D(Grid1D g, CVec v) : grid_z(g), values(std::move(v)) {
    if (values.size() != grid_z.n_points)
      throw std::invalid_argument("Profile1D: size mismatch");
  }
  static Profile1D zero(const Grid1D& g) { return Profile1D(g, CVec::Zero(g.n_points)); }
  int size() const { return grid_z.n_points; }
};

// Physical-space field u(x,y); values(iy, ix).
struct PhysField2D {
  Grid1D grid_x, grid_y;
  CMat values;

  PhysField2D() = default;
  PhysField2D(Grid1D gx, Grid1D gy, CMat v)
      : grid_x(gx), grid_y(gy), values(std::move(v)) {
    if (values.rows() != grid_y.n_points || values.cols() != grid_x.n_points)
      throw std::invalid_argument("PhysField2D: shape mismatch");
  }
  static PhysField2D zero(const Grid1D& gx, const Grid1D& gy) {
    return PhysField2D(gx, gy, CMat::Zero(gy.n_points, gx.n_points));
  }
};

// Speed-space field f(z,c); values(ic, iz). Spectra of speed fields reuse this
// layout with axes (xi, eta).
struct SpeedField {
  Grid1D grid_z, grid_c;
  CMat values;

  SpeedField() = default;
  SpeedField(Grid1D gz, Grid1D gc, CMat v)
      : grid_z(gz), grid_c(gc), values(std::move(v)) {
    if (values.rows() != grid_c.n_points || values.cols() != grid_z.n_points)
      throw std::invalid_argument("SpeedField: shape mismatch");
  }
  static SpeedField zero(const Grid1D& gz, const Grid1D& gc) {
    return SpeedField(gz, gc, CMat::Zero(gc.n_points, gz.n_points));
  }
};

inline bool all_finite(const CVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  return true;
}
inline bool all_finite(const CMat& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) return false;
  return true;
}

}  // namespace pw
