#include "pw/interp.hpp"

#include <algorithm>
#include <cmath>

namespace pw {

cd interp_point(const Grid1D& g, const cd* data, Eigen::Index stride, double x, int order) {
  const int n = g.n_points;
  const double t = g.locate(x);
  if (t < 0.0 || t > double(n - 1)) return cd(0.0, 0.0);
  if (order < 1) order = 1;
  if (order > n - 1) order = n - 1;
  const int npts = order + 1;
  int base = int(std::floor(t)) - (order - 1) / 2;
  base = std::clamp(base, 0, n - npts);
  const double s = t - base;

  cd acc(0.0, 0.0);
  for (int j = 0; j < npts; ++j) {
    double w = 1.0;
    for (int m = 0; m < npts; ++m) {
      if (m == j) continue;
      w *= (s - m) / double(j - m);
    }
    acc += w * data[Eigen::Index(base + j) * stride];
  }
  return acc;
}

CVec cumtrapz(const Profile1D& f) {
  const int n = f.size();
  CVec G(n);
  G[0] = cd(0.0, 0.0);
  const double h = f.grid_z.spacing;
  for (int i = 1; i < n; ++i)
    G[i] = G[i - 1] + 0.5 * h * (f.values[i - 1] + f.values[i]);
  return G;
}

cd eval_antiderivative(const Grid1D& g, const CVec& G, double x, int order) {
  if (x <= g.origin) return cd(0.0, 0.0);
  if (x >= g.back()) return G[G.size() - 1];
  return interp_point(g, G.data(), 1, x, order);
}

}  // namespace pw
