#include "pw/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace pw {

namespace {

// FFTW planner is not thread-safe; executions on distinct arrays are.
std::mutex g_plan_mutex;

fftw_plan plan_1d(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  CVec dummy(n);
  auto* p = reinterpret_cast<fftw_complex*>(dummy.data());
  fftw_plan plan = fftw_plan_dft_1d(n, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, plan);
  return plan;
}

fftw_plan plan_2d(int rows, int cols, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_tuple(rows, cols, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  CMat dummy(rows, cols);
  auto* p = reinterpret_cast<fftw_complex*>(dummy.data());
  fftw_plan plan = fftw_plan_dft_2d(rows, cols, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, plan);
  return plan;
}

inline void run(fftw_plan plan, cd* data) {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, p, p);
}

}  // namespace

void dft_inplace(CVec& v, int sign) {
  run(plan_1d(int(v.size()), sign), v.data());
}

void idft_inplace(CVec& v) {
  dft_inplace(v, +1);
  v /= double(v.size());
}

void dft2_inplace(CMat& m, int sign) {
  run(plan_2d(int(m.rows()), int(m.cols()), sign), m.data());
}

void idft2_inplace(CMat& m) {
  dft2_inplace(m, +1);
  m /= double(m.size());
}

void dft_rows_inplace(CMat& m, int sign) {
  fftw_plan plan = plan_1d(int(m.cols()), sign);
  for (Eigen::Index r = 0; r < m.rows(); ++r) run(plan, m.data() + r * m.cols());
}

void idft_rows_inplace(CMat& m) {
  dft_rows_inplace(m, +1);
  m /= double(m.cols());
}

std::vector<double> fft_freq(const Grid1D& g) {
  const int n = g.n_points;
  const double d = 1.0 / (n * g.spacing);
  std::vector<double> xi(n);
  for (int k = 0; k < n; ++k) xi[k] = (k < (n + 1) / 2 ? k : k - n) * d;
  return xi;
}

Profile1D spectrum(const Profile1D& f) {
  const int n = f.grid_z.n_points;
  const Grid1D gxi = freq_grid(f.grid_z);
  CVec v = f.values;
  dft_inplace(v, -1);
  CVec out(n);
  // shift to centered storage and attach spacing + origin phase
  for (int m = 0; m < n; ++m) {
    const int k = (m + (n + 1) / 2) % n;  // centered index m <-> fft index k
    const double xi = gxi.point(m);
    const double ph = -2.0 * M_PI * f.grid_z.origin * xi;
    out[m] = v[k] * f.grid_z.spacing * cd(std::cos(ph), std::sin(ph));
  }
  return Profile1D(gxi, std::move(out));
}

Profile1D inverse_spectrum(const Profile1D& spec, const Grid1D& target) {
  const int n = spec.grid_z.n_points;
  if (target.n_points != n)
    throw std::invalid_argument("inverse_spectrum: grid size mismatch");
  if (std::abs(target.spacing * spec.grid_z.spacing * n - 1.0) > 1e-9)
    throw std::invalid_argument("inverse_spectrum: target grid is not conjugate");
  CVec v(n);
  for (int m = 0; m < n; ++m) {
    const int k = (m + (n + 1) / 2) % n;
    const double xi = spec.grid_z.point(m);
    const double ph = 2.0 * M_PI * target.origin * xi;
    v[k] = spec.values[m] * cd(std::cos(ph), std::sin(ph));
  }
  dft_inplace(v, +1);
  v *= spec.grid_z.spacing;  // sum -> integral over xi
  return Profile1D(target, std::move(v));
}

SpeedField spectrum2(const SpeedField& f) {
  const int nz = f.grid_z.n_points, nc = f.grid_c.n_points;
  const Grid1D gxi = freq_grid(f.grid_z), geta = freq_grid(f.grid_c);
  CMat v = f.values;
  dft2_inplace(v, -1);
  CMat out(nc, nz);
  const double scale = f.grid_z.spacing * f.grid_c.spacing;
  for (int me = 0; me < nc; ++me) {
    const int ke = (me + (nc + 1) / 2) % nc;
    const double eta = geta.point(me);
    for (int mx = 0; mx < nz; ++mx) {
      const int kx = (mx + (nz + 1) / 2) % nz;
      const double xi = gxi.point(mx);
      const double ph = -2.0 * M_PI * (f.grid_z.origin * xi + f.grid_c.origin * eta);
      out(me, mx) = v(ke, kx) * scale * cd(std::cos(ph), std::sin(ph));
    }
  }
  return SpeedField(gxi, geta, std::move(out));
}

SpeedField inverse_spectrum2(const SpeedField& spec, const Grid1D& gz, const Grid1D& gc) {
  const int nz = spec.grid_z.n_points, nc = spec.grid_c.n_points;
  if (gz.n_points != nz || gc.n_points != nc)
    throw std::invalid_argument("inverse_spectrum2: grid size mismatch");
  CMat v(nc, nz);
  for (int me = 0; me < nc; ++me) {
    const int ke = (me + (nc + 1) / 2) % nc;
    const double eta = spec.grid_c.point(me);
    for (int mx = 0; mx < nz; ++mx) {
      const int kx = (mx + (nz + 1) / 2) % nz;
      const double xi = spec.grid_z.point(mx);
      const double ph = 2.0 * M_PI * (gz.origin * xi + gc.origin * eta);
      v(ke, kx) = spec.values(me, mx) * cd(std::cos(ph), std::sin(ph));
    }
  }
  dft2_inplace(v, +1);
  v *= spec.grid_z.spacing * spec.grid_c.spacing;
  return SpeedField(gz, gc, std::move(v));
}

}  // namespace pw
