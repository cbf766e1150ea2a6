#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Core>

namespace pw {

using cd = std::complex<double>;
using CMat = Eigen::Array<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVec = Eigen::Array<cd, Eigen::Dynamic, 1>;

// Uniform cell-centered sampling grid: x_i = origin + i*spacing, i = 0..n_points-1.
// The covered box has total extent n_points*spacing.
struct Grid1D {
  int n_points = 0;
  double origin = 0.0;
  double spacing = 0.0;

  Grid1D() = default;
  Grid1D(int n, double org, double h) : n_points(n), origin(org), spacing(h) {
    if (n < 2) throw std::invalid_argument("Grid1D: n_points must be >= 2");
    if (!(h > 0.0)) throw std::invalid_argument("Grid1D: spacing must be > 0");
  }

  double point(int i) const { return origin + i * spacing; }
  double back() const { return origin + (n_points - 1) * spacing; }
  double extent() const { return n_points * spacing; }
  // fractional index of x on the grid
  double locate(double x) const { return (x - origin) / spacing; }
  bool contains(double x) const { return x >= origin && x <= back(); }
  bool operator==(const Grid1D&) const = default;
};

// Box [lo, hi] sampled at n cell centers.
inline Grid1D make_grid(int n, double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("make_grid: empty box");
  const double h = (hi - lo) / n;
  return Grid1D(n, lo + 0.5 * h, h);
}

// Symmetric box [-L, L].
inline Grid1D make_centered_grid(int n, double half_extent) {
  return make_grid(n, -half_extent, half_extent);
}

// Conjugate frequency grid (cycles per unit), centered with xi = 0 on node n/2.
inline Grid1D freq_grid(const Grid1D& g) {
  const double dxi = 1.0 / (g.n_points * g.spacing);
  return Grid1D(g.n_points, -(g.n_points / 2) * dxi, dxi);
}

}  // namespace pw
