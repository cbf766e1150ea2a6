#include "pw/transform.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pw/fft.hpp"
#include "pw/interp.hpp"
#include "pw/norms.hpp"

namespace pw {

namespace {

// Per-slice edge magnitude, used to detect support leaving the z box.
std::vector<double> edge_magnitude(const SpeedField& f) {
  const Eigen::Index last = f.values.cols() - 1;
  std::vector<double> mag(f.grid_c.n_points);
  for (int ic = 0; ic < f.grid_c.n_points; ++ic)
    mag[size_t(ic)] = std::max(std::abs(f.values(ic, 0)), std::abs(f.values(ic, last)));
  return mag;
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Zero-pad a speed field symmetrically to (nz2, nc2) grid points.
SpeedField zero_pad(const SpeedField& f, int nz2, int nc2) {
  const Grid1D& gz = f.grid_z;
  const Grid1D& gc = f.grid_c;
  const int oz = (nz2 - gz.n_points) / 2;
  const int oc = (nc2 - gc.n_points) / 2;
  Grid1D gz2(nz2, gz.origin - oz * gz.spacing, gz.spacing);
  Grid1D gc2(nc2, gc.origin - oc * gc.spacing, gc.spacing);
  CMat v = CMat::Zero(nc2, nz2);
  v.block(oc, oz, gc.n_points, gz.n_points) = f.values;
  return SpeedField(gz2, gc2, std::move(v));
}

}  // namespace

PhysField2D pwt_direct(const SpeedField& f, const Grid1D& gx, const Grid1D& gy,
                       const PwtOptions& opt, TransformStats* stats) {
  const int nx = gx.n_points, ny = gy.n_points, nc = f.grid_c.n_points;
  const double wc = f.grid_c.spacing;
  const auto edge = edge_magnitude(f);
  CMat out(ny, nx);
  bool truncated = false;
  long off_grid = 0;

#pragma omp parallel for schedule(static) reduction(||:truncated) reduction(+:off_grid)
  for (int iy = 0; iy < ny; ++iy) {
    const double y = gy.point(iy);
    for (int ix = 0; ix < nx; ++ix) {
      const double x = gx.point(ix);
      cd acc(0.0, 0.0);
      for (int ic = 0; ic < nc; ++ic) {
        const double z = x - f.grid_c.point(ic) * y;
        if (z < f.grid_z.origin || z > f.grid_z.back()) {
          ++off_grid;
          if (edge[size_t(ic)] > opt.support_tol) truncated = true;
          continue;
        }
        acc += interp_row(f, ic, z, opt.interp_order);
      }
      out(iy, ix) = acc * wc;
    }
  }
  if (stats) {
    stats->truncated = truncated;
    stats->off_grid_hits = off_grid;
  }
  return PhysField2D(gx, gy, std::move(out));
}

Profile1D spectrum_line_sample(const SpeedField& spec, double slope, int order) {
  const int nxi = spec.grid_z.n_points;
  CVec out(nxi);
  if (slope == 0.0) {
    // eta = 0 is stored on node nc/2 of the centered grid: copy it verbatim.
    const int row0 = spec.grid_c.n_points / 2;
    for (int k = 0; k < nxi; ++k) out[k] = spec.values(row0, k);
    return Profile1D(spec.grid_z, std::move(out));
  }
  for (int k = 0; k < nxi; ++k) {
    const double eta = slope * spec.grid_z.point(k);
    out[k] = interp_point(spec.grid_c, spec.values.data() + k, spec.values.cols(), eta,
                          order);
  }
  return Profile1D(spec.grid_z, std::move(out));
}

PhysField2D pwt_spectral(const SpeedField& f, const Grid1D& gx, const Grid1D& gy,
                         const PwtOptions& opt, TransformStats* stats) {
  // Pad so the natural x box of the inverse transform covers the target.
  int nz2 = next_pow2(f.grid_z.n_points * std::max(1, opt.pad_factor));
  const double hz = f.grid_z.spacing;
  const double zmid = f.grid_z.origin + 0.5 * (f.grid_z.n_points - 1) * hz;
  const double need = 2.0 * std::max(std::abs(gx.origin - zmid),
                                     std::abs(gx.back() - zmid)) + 4.0 * hz;
  while (nz2 * hz < need) nz2 <<= 1;
  const int nc2 = next_pow2(f.grid_c.n_points * std::max(1, opt.pad_factor));

  const SpeedField padded = zero_pad(f, nz2, nc2);
  const SpeedField spec = spectrum2(padded);
  if (stats) {
    stats->truncated = false;
    stats->off_grid_hits = 0;
  }

  const Grid1D natural = padded.grid_z;  // conjugate grid of the xi axis
  CMat out(gy.n_points, gx.n_points);
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < gy.n_points; ++iy) {
    const Profile1D slice = spectrum_line_sample(spec, gy.point(iy), opt.interp_order);
    const Profile1D row = inverse_spectrum(slice, natural);
    for (int ix = 0; ix < gx.n_points; ++ix)
      out(iy, ix) = interp_point(row, gx.point(ix), opt.interp_order);
  }
  return PhysField2D(gx, gy, std::move(out));
}

SpeedField pwt_inverse(const PhysField2D& u, double xi_cutoff, const PwtOptions& opt,
                       const Grid1D* gz_ptr, const Grid1D* gc_ptr) {
  if (!(xi_cutoff > 0.0))
    throw std::invalid_argument("pwt_inverse: xi_cutoff must be > 0 (eta/xi is singular at xi = 0)");
  const Grid1D gz = gz_ptr ? *gz_ptr : u.grid_x;
  const Grid1D gc = gc_ptr ? *gc_ptr : u.grid_y;

  // Row-wise spectra G(xi, y) = F_x u(., y).
  const Grid1D gxi = freq_grid(u.grid_x);
  const int nxi = gxi.n_points, ny = u.grid_y.n_points;
  CMat G(ny, nxi);
  for (int iy = 0; iy < ny; ++iy) {
    Profile1D row(u.grid_x, u.values.row(iy).transpose());
    G.row(iy) = spectrum(row).values.transpose();
  }

  // Resample onto the (xi, eta) grid through y = eta / xi.
  const Grid1D geta = freq_grid(u.grid_y);
  CMat spec_vals = CMat::Zero(geta.n_points, nxi);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < nxi; ++k) {
    const double xi = gxi.point(k);
    if (std::abs(xi) < xi_cutoff) continue;
    for (int m = 0; m < geta.n_points; ++m) {
      const double y = geta.point(m) / xi;
      spec_vals(m, k) = interp_point(u.grid_y, G.data() + k, G.cols(), y, opt.interp_order);
    }
  }

  const SpeedField spec(gxi, geta, std::move(spec_vals));
  if (gz.n_points == nxi && gc.n_points == geta.n_points &&
      std::abs(gz.spacing * gxi.spacing * nxi - 1.0) < 1e-9 &&
      std::abs(gc.spacing * geta.spacing * geta.n_points - 1.0) < 1e-9) {
    return inverse_spectrum2(spec, gz, gc);
  }
  // Arbitrary targets: invert on the natural conjugate grids and resample.
  const SpeedField nat = inverse_spectrum2(spec, u.grid_x, u.grid_y);
  CMat out(gc.n_points, gz.n_points);
  for (int ic = 0; ic < gc.n_points; ++ic) {
    const double c = gc.point(ic);
    for (int iz = 0; iz < gz.n_points; ++iz) {
      const double z = gz.point(iz);
      const double t = nat.grid_c.locate(c);
      if (t < 0 || t > nat.grid_c.n_points - 1) {
        out(ic, iz) = cd(0, 0);
        continue;
      }
      // separable 2D interpolation: interpolate rows in z, then across c
      const int p = opt.interp_order;
      const int npts = p + 1;
      int base = std::clamp(int(std::floor(t)) - (p - 1) / 2, 0, nat.grid_c.n_points - npts);
      const double s = t - base;
      cd acc(0, 0);
      for (int j = 0; j < npts; ++j) {
        double w = 1.0;
        for (int m = 0; m < npts; ++m)
          if (m != j) w *= (s - m) / double(j - m);
        acc += w * interp_row(nat, base + j, z, p);
      }
      out(ic, iz) = acc;
    }
  }
  return SpeedField(gz, gc, std::move(out));
}

Profile1D dz(const Profile1D& f) {
  Profile1D g = f;
  apply_multiplier(g, [](double xi) { return cd(0.0, 2.0 * M_PI * xi); });
  return g;
}

SpeedField dz(const SpeedField& f) {
  SpeedField g = f;
  CMat& v = g.values;
  dft_rows_inplace(v, -1);
  const auto xi = fft_freq(f.grid_z);
  for (Eigen::Index r = 0; r < v.rows(); ++r)
    for (Eigen::Index k = 0; k < v.cols(); ++k)
      v(r, k) *= cd(0.0, 2.0 * M_PI * xi[size_t(k)]);
  idft_rows_inplace(v);
  return g;
}

std::pair<PhysField2D, PhysField2D> pwt_gradient(const SpeedField& f, const Grid1D& gx,
                                                 const Grid1D& gy, const PwtOptions& opt) {
  SpeedField fz = dz(f);
  SpeedField cfz = fz;
  for (int ic = 0; ic < f.grid_c.n_points; ++ic)
    cfz.values.row(ic) *= cd(-f.grid_c.point(ic), 0.0);
  return {pwt_direct(fz, gx, gy, opt), pwt_direct(cfz, gx, gy, opt)};
}

std::pair<cd, cd> parseval_pairing(const SpeedField& f, const SpeedField& g,
                                   const PwtOptions& opt) {
  // lhs: Tf against g read as a function of (x, y) on g's own grids.
  const Grid1D& gx = g.grid_z;
  const Grid1D& gy = g.grid_c;
  const PhysField2D tf = pwt_direct(f, gx, gy, opt);
  cd lhs(0.0, 0.0);
  for (Eigen::Index r = 0; r < tf.values.rows(); ++r)
    for (Eigen::Index c = 0; c < tf.values.cols(); ++c)
      lhs += tf.values(r, c) * g.values(r, c);
  lhs *= gx.spacing * gy.spacing;

  // rhs: f(z, c) (Tg)(z, -c); the mirrored speed axis is again uniform.
  const Grid1D& fz = f.grid_z;
  const Grid1D& fc = f.grid_c;
  const Grid1D neg_c(fc.n_points, -fc.back(), fc.spacing);
  const PhysField2D tg = pwt_direct(g, fz, neg_c, opt);
  cd rhs(0.0, 0.0);
  const int nc = fc.n_points;
  for (int ic = 0; ic < nc; ++ic)
    for (int iz = 0; iz < fz.n_points; ++iz)
      rhs += f.values(ic, iz) * tg.values(nc - 1 - ic, iz);
  rhs *= fz.spacing * fc.spacing;
  return {lhs, rhs};
}

L2SpectrumResult l2_norm_via_spectrum(const SpeedField& f, double xi_cutoff,
                                      double growth_factor) {
  const int nz = f.grid_z.n_points, nc = f.grid_c.n_points;
  CMat v = f.values;
  dft_rows_inplace(v, -1);
  const auto xi = fft_freq(f.grid_z);
  const double dxi = 1.0 / (nz * f.grid_z.spacing);
  if (xi_cutoff <= 0.0) xi_cutoff = 0.5 * dxi;  // excise only the xi = 0 cell

  // D(xi) = int |F_z f|^2(xi, c) dc for each discrete frequency.
  std::vector<double> D(size_t(nz), 0.0);
  const double zs = f.grid_z.spacing;
  for (int ic = 0; ic < nc; ++ic)
    for (int k = 0; k < nz; ++k) D[size_t(k)] += std::norm(v(ic, k)) * zs * zs;
  for (auto& d : D) d *= f.grid_c.spacing;

  double value = 0.0;
  for (int k = 0; k < nz; ++k) {
    const double a = std::abs(xi[size_t(k)]);
    if (a < xi_cutoff) continue;
    value += D[size_t(k)] / a * dxi;
  }

  // Growth probe at the two smallest resolved frequencies (+-dxi, +-2 dxi).
  const int k1 = 1, k2 = 2, k1n = nz - 1, k2n = nz - 2;
  const double d1 = (D[k1] + D[size_t(k1n)]) / dxi;
  const double d2 = (D[k2] + D[size_t(k2n)]) / (2.0 * dxi);
  L2SpectrumResult res;
  res.value = value;
  res.divergent = d1 > growth_factor * d2 && d1 * dxi > 1e-12 * (value + 1e-300);
  return res;
}

namespace {

// int_{-1}^{1} (1 - |s|) |s + k|^{-alpha} ds (unit-cell pair overlap weight).
double cell_pair_weight(double alpha, int k) {
  auto prim1 = [alpha](double u) { return std::pow(u, 1.0 - alpha) / (1.0 - alpha); };
  auto prim2 = [alpha](double u) { return std::pow(u, 2.0 - alpha) / (2.0 - alpha); };
  if (k == 0) return 2.0 * (prim1(1.0) - prim2(1.0));
  if (std::abs(k) == 1) {
    // int_0^2 (1 - |u - 1|) u^{-alpha} du
    return prim2(1.0) + 2.0 * (prim1(2.0) - prim1(1.0)) - (prim2(2.0) - prim2(1.0));
  }
  return 0.0;  // handled by the midpoint product away from the diagonal
}

}  // namespace

std::pair<double, double> lp_bound_pair(const SpeedField& f, double p, const Grid1D& gx,
                                        const Grid1D& gy, const PwtOptions& opt) {
  if (!(p > 2.0)) throw std::invalid_argument("lp_bound_pair: requires p > 2");
  const PhysField2D tf = pwt_direct(f, gx, gy, opt);
  const double lhs_norm = lp_norm(tf, p);
  const double lhs = lhs_norm * lhs_norm;

  const int nc = f.grid_c.n_points;
  const double h = f.grid_c.spacing;
  const double alpha = 2.0 / p;
  const double q = p / 2.0;
  std::vector<double> rown(size_t(nc), 0.0);
  for (int ic = 0; ic < nc; ++ic) {
    double acc = 0.0;
    for (Eigen::Index iz = 0; iz < f.values.cols(); ++iz)
      acc += std::pow(std::abs(f.values(ic, iz)), q);
    rown[size_t(ic)] = std::pow(acc * f.grid_z.spacing, 1.0 / q);
  }
  double rhs = 0.0;
  const double hfac = std::pow(h, 2.0 - alpha);
  for (int i = 0; i < nc; ++i) {
    for (int j = 0; j < nc; ++j) {
      const int k = i - j;
      if (std::abs(k) <= 1)
        rhs += rown[size_t(i)] * rown[size_t(j)] * hfac * cell_pair_weight(alpha, k);
      else
        rhs += rown[size_t(i)] * rown[size_t(j)] * h * h *
               std::pow(std::abs(k) * h, -alpha);
    }
  }
  return {lhs, rhs};
}

Profile1D convolve_via_pwt(const Profile1D& f1, const Profile1D& f2, double y,
                           const Grid1D& target_x, const PwtOptions& opt) {
  if (y == 0.0) {
    cd mass(0.0, 0.0);
    for (int i = 0; i < f2.size(); ++i) mass += f2.values[i];
    mass *= f2.grid_z.spacing;
    CVec out(target_x.n_points);
    for (int i = 0; i < target_x.n_points; ++i)
      out[i] = mass * interp_point(f1, target_x.point(i), opt.interp_order);
    return Profile1D(target_x, std::move(out));
  }
  CMat tensor(f2.size(), f1.size());
  for (int ic = 0; ic < f2.size(); ++ic)
    for (int iz = 0; iz < f1.size(); ++iz)
      tensor(ic, iz) = f1.values[iz] * f2.values[ic];
  const SpeedField field(f1.grid_z, f2.grid_z, std::move(tensor));
  const Grid1D row_y(2, y, 1.0);  // single evaluation row padded to a legal grid
  const PhysField2D tf = pwt_direct(field, target_x, row_y, opt);
  return Profile1D(target_x, tf.values.row(0).transpose());
}

PhysField2D product_transform(const SpeedField& f, const SpeedField& g,
                              const Grid1D& k_grid, const Grid1D& gx, const Grid1D& gy,
                              const PwtOptions& opt, TransformStats* stats) {
  CMat acc = CMat::Zero(gy.n_points, gx.n_points);
  SpeedField fm = f, gm = g;
  for (int ik = 0; ik < k_grid.n_points; ++ik) {
    const double k = k_grid.point(ik);
    for (int ic = 0; ic < f.grid_c.n_points; ++ic) {
      const double ph = -2.0 * M_PI * k * f.grid_c.point(ic);
      fm.values.row(ic) = f.values.row(ic) * cd(std::cos(ph), std::sin(ph));
    }
    for (int ic = 0; ic < g.grid_c.n_points; ++ic) {
      const double ph = 2.0 * M_PI * k * g.grid_c.point(ic);
      gm.values.row(ic) = g.values.row(ic) * cd(std::cos(ph), std::sin(ph));
    }
    const PhysField2D tf = pwt_direct(fm, gx, gy, opt);
    const PhysField2D tg = pwt_direct(gm, gx, gy, opt);
    acc += (tf.values * tg.values) * k_grid.spacing;
  }
  PhysField2D result(gx, gy, std::move(acc));
  if (stats) {
    if (f.grid_z == g.grid_z && f.grid_c == g.grid_c) {
      SpeedField prod = f;
      prod.values *= g.values;
      const PhysField2D direct = pwt_direct(prod, gx, gy, opt);
      double r = 0.0, scale = 0.0;
      for (Eigen::Index i = 0; i < direct.values.size(); ++i) {
        r = std::max(r, std::abs(result.values.data()[i] - direct.values.data()[i]));
        scale = std::max(scale, std::abs(direct.values.data()[i]));
      }
      stats->residual = r / (1.0 + scale);
      stats->bandwidth_warning = stats->residual > opt.xval_tol;
    }
  }
  return result;
}

XNormReport x_norm(const SpeedField& f) {
  XNormReport rep;
  for (int ic = 0; ic < f.grid_c.n_points; ++ic) {
    rep.l1c_h1z += sobolev_norm_row(f, ic, 1.0) * f.grid_c.spacing;
    rep.linfc_l2z = std::max(rep.linfc_l2z, l2_norm_row(f, ic));
  }
  rep.x_norm = rep.l1c_h1z + rep.linfc_l2z;
  return rep;
}

StabilityWeights stability_weights(const SpeedField& f) {
  StabilityWeights w;
  const SpeedField fz = dz(f);
  for (int ic = 0; ic < f.grid_c.n_points; ++ic) {
    const double c = f.grid_c.point(ic);
    const double wc = f.grid_c.spacing;
    w.m_decay += l1_norm_row(f, ic) / std::sqrt(1.0 + c * c) * wc;
    w.m_grad += l1_norm_row(fz, ic) * wc;
    const double h2 = sobolev_norm_row(f, ic, 2.0);
    w.m_h2 += h2 * wc;
    w.m_ch2 += std::abs(c) * h2 * wc;
  }
  w.m_total = w.m_decay + w.m_grad + w.m_h2 + w.m_ch2;
  return w;
}

GwpWeight gwp_weight(const SpeedField& f) {
  SpeedField weighted = f;
  for (int ic = 0; ic < f.grid_c.n_points; ++ic) {
    const double c = f.grid_c.point(ic);
    const double cf = 1.0 + c * c * c;
    for (int iz = 0; iz < f.grid_z.n_points; ++iz)
      weighted.values(ic, iz) *= cf * (1.0 + std::abs(f.grid_z.point(iz)));
  }
  GwpWeight g;
  for (int ic = 0; ic < f.grid_c.n_points; ++ic) {
    const double h2 = sobolev_norm_row(weighted, ic, 2.0);
    g.l1c_h2 += h2 * f.grid_c.spacing;
    g.linfc_h2 = std::max(g.linfc_h2, h2);
  }
  return g;
}

}  // namespace pw
