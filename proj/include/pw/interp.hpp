#pragma once

#include "pw/field.hpp"

namespace pw {

// Local barycentric-weighted Lagrange interpolation on a uniform grid.
// `order` is the polynomial order (3 = cubic, using order+1 nodes); points
// outside the grid evaluate to zero. `stride` allows walking matrix columns.
cd interp_point(const Grid1D& g, const cd* data, Eigen::Index stride, double x, int order);

inline cd interp_point(const Profile1D& f, double x, int order = 3) {
  return interp_point(f.grid_z, f.values.data(), 1, x, order);
}

// Interpolate along row `ic` of a speed field (the z direction).
inline cd interp_row(const SpeedField& f, int ic, double z, int order = 3) {
  return interp_point(f.grid_z, f.values.data() + Eigen::Index(ic) * f.values.cols(), 1, z, order);
}

// Cumulative trapezoid antiderivative G(z_i) = int_{z_0}^{z_i} f, G(z_0) = 0.
CVec cumtrapz(const Profile1D& f);

// Evaluate a cumulative antiderivative with saturating ends: 0 below the grid,
// total integral above it.
cd eval_antiderivative(const Grid1D& g, const CVec& G, double x, int order = 3);

}  // namespace pw
