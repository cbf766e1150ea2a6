#include "pw/experiments.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "pw/evolve.hpp"
#include "pw/fft.hpp"
#include "pw/interp.hpp"
#include "pw/norms.hpp"
#include "pw/pwf_io.hpp"

namespace pw {

using json = nlohmann::json;

bool ExperimentReport::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

CheckResult& ExperimentReport::add_check(const std::string& nm, double value, double lo,
                                         double hi) {
  CheckResult c;
  c.name = nm;
  c.value = value;
  c.lo = lo;
  c.hi = hi;
  c.pass = std::isfinite(value) && value >= lo && value <= hi;
  checks.push_back(c);
  return checks.back();
}

void ExperimentReport::add_input(const std::string& key, const std::string& value) {
  inputs.emplace_back(key, value);
}

void ExperimentReport::write_json(const std::string& path) const {
  json j;
  j["experiment"] = name;
  j["pass"] = passed();
  j["runtime_sec"] = runtime_sec;
  json in = json::object();
  for (const auto& [k, v] : inputs) in[k] = v;
  j["inputs"] = in;
  json cs = json::array();
  for (const auto& c : checks) {
    json jc;
    jc["name"] = c.name;
    jc["value"] = c.value;
    if (c.lo != -kInfinity) jc["min"] = c.lo;
    if (c.hi != kInfinity) jc["max"] = c.hi;
    jc["pass"] = c.pass;
    cs.push_back(jc);
  }
  j["checks"] = cs;
  std::ofstream os(path);
  if (!os) throw IoError("cannot write report: " + path);
  os << j.dump(2) << "\n";
}

void ExperimentReport::write_csv(const std::string& path) const {
  if (series.empty()) return;
  std::ofstream os(path);
  if (!os) throw IoError("cannot write report: " + path);
  for (size_t i = 0; i < series.size(); ++i)
    os << series[i].name << (i + 1 < series.size() ? "," : "\n");
  const size_t rows = series.front().values.size();
  os.precision(17);
  for (size_t r = 0; r < rows; ++r)
    for (size_t i = 0; i < series.size(); ++i) {
      const auto& col = series[i].values;
      os << (r < col.size() ? col[r] : 0.0) << (i + 1 < series.size() ? "," : "\n");
    }
}

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// least-squares slope of y against x
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// quadratic fit y = a + b x + c x^2, returns (b, c)
std::pair<double, double> fit_quadratic(const std::vector<double>& x,
                                        const std::vector<double>& y) {
  const size_t n = x.size();
  double s0 = double(n), s1 = 0, s2 = 0, s3 = 0, s4 = 0, t0 = 0, t1 = 0, t2 = 0;
  for (size_t i = 0; i < n; ++i) {
    const double xi = x[i], xi2 = xi * xi;
    s1 += xi;
    s2 += xi2;
    s3 += xi2 * xi;
    s4 += xi2 * xi2;
    t0 += y[i];
    t1 += xi * y[i];
    t2 += xi2 * y[i];
  }
  // solve the 3x3 normal equations by elimination
  double m[3][4] = {{s0, s1, s2, t0}, {s1, s2, s3, t1}, {s2, s3, s4, t2}};
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    std::swap(m[col], m[piv]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int cc = col; cc < 4; ++cc) m[r][cc] -= f * m[col][cc];
    }
  }
  return {m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

double sup_abs(const CMat& v) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s = std::max(s, std::abs(v.data()[i]));
  return s;
}

}  // namespace

ExperimentReport decay_experiment(const SpeedField& f0, const std::vector<double>& times,
                                  const Grid1D& gx, const Grid1D& gy,
                                  const PwtOptions& opt) {
  Stopwatch sw;
  ExperimentReport rep;
  rep.name = "decay";
  rep.add_input("n_times", std::to_string(times.size()));

  std::vector<double> logt, log_sup, log_grad, sups, grads;
  for (double t : times) {
    const SpeedField ft = evolve_planewave_part(f0, t);
    const PhysField2D phi = pwt_direct(ft, gx, gy, opt);
    auto [dx, dy] = pwt_gradient(ft, gx, gy, opt);
    const double sup = sup_abs(phi.values);
    double gsup = 0.0;
    for (Eigen::Index i = 0; i < dx.values.size(); ++i)
      gsup = std::max(gsup, std::hypot(std::abs(dx.values.data()[i]),
                                       std::abs(dy.values.data()[i])));
    sups.push_back(sup);
    grads.push_back(gsup);
    if (t >= 1.0) {
      logt.push_back(std::log(t));
      log_sup.push_back(std::log(sup));
      log_grad.push_back(std::log(gsup));
    }
  }
  const double slope = fit_slope(logt, log_sup);
  const double gslope = fit_slope(logt, log_grad);
  rep.add_check("sup_decay_slope", slope, -0.55, -0.45);
  rep.add_check("grad_decay_slope", gslope, -0.60, -0.40);
  rep.series.push_back({"t", times});
  rep.series.push_back({"phi_inf", sups});
  rep.series.push_back({"grad_phi_inf", grads});
  rep.runtime_sec = sw.seconds();
  return rep;
}

ExperimentReport stability_experiment(const Background& bg0, const PhysField2D& v0,
                                      const StabilityConfig& cfg) {
  Stopwatch sw;
  ExperimentReport rep;
  rep.name = "stability";
  rep.add_input("lambda", std::to_string(cfg.params.lambda));
  rep.add_input("sigma", std::to_string(cfg.params.sigma));
  rep.add_input("t_end", std::to_string(cfg.params.t_end));

  // normalization of the unscaled data
  double x0 = 0.0;
  if (std::holds_alternative<SpeedField>(bg0)) {
    x0 = x_norm(std::get<SpeedField>(bg0)).x_norm;
    const auto w = stability_weights(std::get<SpeedField>(bg0));
    rep.add_input("stability_weight_M", std::to_string(w.m_total));
  } else if (std::holds_alternative<ProfileSet>(bg0)) {
    const auto& ps = std::get<ProfileSet>(bg0);
    x0 = xc_norm(ps);
    rep.add_input("stability_weight_M", std::to_string(numerable_stability_weight(ps)));
  }
  const double v0n = sobolev_norm(v0, 1.0);

  std::vector<double> deltas, boxtimes;
  for (double eps : cfg.eps_ladder) {
    const double bg_scale = x0 > 0.0 ? 0.9 * eps / x0 : 0.0;
    const double v_scale = v0n > 0.0 ? 0.9 * eps / v0n : 0.0;
    Background bg = bg0;
    if (auto* sf = std::get_if<SpeedField>(&bg)) sf->values *= bg_scale;
    if (auto* ps = std::get_if<ProfileSet>(&bg))
      for (auto& e : ps->entries) e.profile.values *= bg_scale;
    PhysField2D v = v0;
    v.values *= v_scale;

    double delta = 0.0, valid_until = 0.0;
    bool blowup = false;
    try {
      const ForcedTrajectory traj = forced_nls2d_solve(v, bg, cfg.params, cfg.forced);
      for (double dh1 : traj.diag.dev_h1) delta = std::max(delta, dh1);
      // boundary-exit monitoring: largest t with the outer frame still quiet
      valid_until = traj.times.back();
      const int nx = v.grid_x.n_points, ny = v.grid_y.n_points;
      const int fx = std::max(1, nx / 16), fy = std::max(1, ny / 16);
      for (size_t i = 0; i < traj.v.size(); ++i) {
        const CMat& w = traj.v[i].values;
        double frame = 0.0;
        for (int r = 0; r < ny; ++r)
          for (int c = 0; c < nx; ++c)
            if (r < fy || r >= ny - fy || c < fx || c >= nx - fx)
              frame = std::max(frame, std::abs(w(r, c)));
        if (frame > 1e-6 * (1.0 + sup_abs(w))) {
          valid_until = traj.times[i];
          break;
        }
      }
    } catch (const BlowupError&) {
      blowup = true;
    }
    rep.add_check("no_blowup_eps_" + std::to_string(eps), blowup ? 1.0 : 0.0, 0.0, 0.0);
    deltas.push_back(delta);
    boxtimes.push_back(valid_until);
  }
  for (size_t i = 1; i < deltas.size(); ++i)
    rep.add_check("delta_monotone_step_" + std::to_string(i),
                  deltas[i] - deltas[i - 1] <= 1e-12 ? 0.0 : deltas[i] - deltas[i - 1],
                  -kInfinity, 0.0);
  rep.series.push_back({"eps", cfg.eps_ladder});
  rep.series.push_back({"delta_meas", deltas});
  rep.series.push_back({"box_valid_until", boxtimes});
  rep.runtime_sec = sw.seconds();
  return rep;
}

double bump_psi(double x) {
  const double a = std::abs(x);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  auto edge = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
  const double u = 2.0 - a;  // in (0,1)
  return edge(u) / (edge(u) + edge(1.0 - u));
}

Profile1D highpass_profile(const Profile1D& g, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("highpass_profile: eps must be > 0");
  Profile1D out = g;
  apply_multiplier(out, [eps](double xi) { return cd(1.0 - bump_psi(xi / eps), 0.0); });
  return out;
}

SpeedField build_highpass_tensor(const Profile1D& speed_factor, const Profile1D& g,
                                 double eps, double min_dc) {
  // |Fg(0)| = |int g|
  cd dc(0.0, 0.0);
  for (int i = 0; i < g.size(); ++i) dc += g.values[i];
  dc *= g.grid_z.spacing;
  if (std::abs(dc) < min_dc)
    throw std::invalid_argument("build_highpass_tensor: |Fg(0)| is below threshold");
  const Profile1D geps = highpass_profile(g, eps);
  CMat vals(speed_factor.size(), geps.size());
  for (int ic = 0; ic < speed_factor.size(); ++ic)
    for (int iz = 0; iz < geps.size(); ++iz)
      vals(ic, iz) = speed_factor.values[ic] * geps.values[iz];
  return SpeedField(g.grid_z, speed_factor.grid_z, std::move(vals));
}

ExperimentReport large_data_experiment(const Profile1D& speed_factor, const Profile1D& g,
                                       const LargeDataConfig& cfg) {
  Stopwatch sw;
  ExperimentReport rep;
  rep.name = "large_data";

  // eps-free reference
  CMat ref_vals(speed_factor.size(), g.size());
  for (int ic = 0; ic < speed_factor.size(); ++ic)
    for (int iz = 0; iz < g.size(); ++iz)
      ref_vals(ic, iz) = speed_factor.values[ic] * g.values[iz];
  const SpeedField ref(g.grid_z, speed_factor.grid_z, std::move(ref_vals));
  const double xnorm_ref = x_norm(ref).x_norm;

  // gradient lower bound: 2 pi ||c f||_2 || |xi|^{1/2} F g ||_{L2(|xi|>1)}
  double cf2 = 0.0;
  for (int ic = 0; ic < speed_factor.size(); ++ic) {
    const double c = speed_factor.grid_z.point(ic);
    cf2 += c * c * std::norm(speed_factor.values[ic]);
  }
  cf2 = std::sqrt(cf2 * speed_factor.grid_z.spacing);
  const Profile1D gspec = spectrum(g);
  double hi_band = 0.0;
  for (int k = 0; k < gspec.size(); ++k) {
    const double xi = gspec.grid_z.point(k);
    if (std::abs(xi) > 1.0)
      hi_band += std::abs(xi) * std::norm(gspec.values[k]) * gspec.grid_z.spacing;
  }
  const double grad_lower = 2.0 * M_PI * cf2 * std::sqrt(hi_band);

  std::vector<double> l2s, grad_l2s, xnorms;
  for (double eps : cfg.eps_ladder) {
    const SpeedField phi_eps = build_highpass_tensor(speed_factor, g, eps, cfg.min_dc);
    const auto l2 = l2_norm_via_spectrum(phi_eps);
    // ||grad phi||_2^2 = ||T(dz f)||^2 + ||T(c dz f)||^2 by the spectral identity
    const SpeedField fz = dz(phi_eps);
    SpeedField cfz = fz;
    for (int ic = 0; ic < cfz.grid_c.n_points; ++ic)
      cfz.values.row(ic) *= cd(cfz.grid_c.point(ic), 0.0);
    const double gx2 = l2_norm_via_spectrum(fz).value;
    const double gy2 = l2_norm_via_spectrum(cfz).value;
    const auto w = stability_weights(phi_eps);
    rep.add_input("m_total_eps_" + std::to_string(eps), std::to_string(w.m_total));
    l2s.push_back(std::sqrt(l2.value));
    grad_l2s.push_back(std::sqrt(gx2 + gy2));
    xnorms.push_back(x_norm(phi_eps).x_norm);
  }
  for (size_t i = 1; i < l2s.size(); ++i)
    rep.add_check("l2_strictly_increasing_step_" + std::to_string(i),
                  l2s[i] - l2s[i - 1], 1e-12, kInfinity);
  for (size_t i = 0; i < grad_l2s.size(); ++i)
    rep.add_check("grad_lower_bound_eps_" + std::to_string(cfg.eps_ladder[i]),
                  grad_l2s[i] / grad_lower, 0.95, kInfinity);
  for (size_t i = 0; i < xnorms.size(); ++i)
    rep.add_check("xnorm_ratio_eps_" + std::to_string(cfg.eps_ladder[i]),
                  xnorms[i] / xnorm_ref, 0.0, 2.0);
  rep.series.push_back({"eps", cfg.eps_ladder});
  rep.series.push_back({"phi_l2", l2s});
  rep.series.push_back({"grad_phi_l2", grad_l2s});
  rep.series.push_back({"x_norm", xnorms});
  rep.runtime_sec = sw.seconds();
  return rep;
}

ExperimentReport gwp_experiment(const PhysField2D& v0, const SpeedField& f0,
                                const GwpConfig& cfg) {
  Stopwatch sw;
  ExperimentReport rep;
  rep.name = "gwp";
  const auto w = gwp_weight(f0);
  rep.add_input("gwp_weight_l1c_h2", std::to_string(w.l1c_h2));
  rep.add_input("gwp_weight_linfc_h2", std::to_string(w.linfc_h2));
  rep.add_input("lambda", std::to_string(cfg.params.lambda));

  bool blowup = false;
  std::vector<double> ts, vmass, phi4, phiinf;
  try {
    const ForcedTrajectory traj = forced_nls2d_solve(v0, Background{f0}, cfg.params, cfg.forced);
    ts = traj.diag.t;
    vmass = traj.diag.mass;
    phiinf = traj.diag.phi_inf;
    for (size_t i = 0; i < traj.times.size(); ++i) {
      const SpeedField ft = evolve_planewave_part(f0, traj.times[i]);
      const PhysField2D phi = pwt_direct(ft, v0.grid_x, v0.grid_y);
      phi4.push_back(lp_norm(phi, 4.0));
    }
  } catch (const BlowupError&) {
    blowup = true;
  }
  rep.add_check("no_blowup", blowup ? 1.0 : 0.0, 0.0, 0.0);
  if (!blowup && ts.size() > 3) {
    std::vector<double> lt, lv;
    for (size_t i = 0; i < ts.size(); ++i)
      if (vmass[i] > 0.0) {
        lt.push_back(ts[i]);
        lv.push_back(std::log(vmass[i]));
      }
    if (lv.size() > 3) {
      const auto [b, c] = fit_quadratic(lt, lv);
      rep.add_check("log_mass_slope_finite", std::abs(b), 0.0, 10.0);
      // super-linear curvature flag: quadratic term must not dominate the trend
      const double span = lt.back() - lt.front();
      rep.add_check("log_mass_curvature", std::abs(c) * span,
                    0.0, std::max(0.2, 0.5 * std::abs(b)));
    }
    double phi4_early = 0.0, phi4_late = 0.0, inf_early = 0.0, inf_late = 0.0;
    for (size_t i = 0; i < ts.size(); ++i) {
      if (ts[i] <= 5.0) {
        phi4_early = std::max(phi4_early, phi4[i]);
        inf_early = std::max(inf_early, phiinf[i]);
      } else {
        phi4_late = std::max(phi4_late, phi4[i]);
        inf_late = std::max(inf_late, phiinf[i]);
      }
    }
    rep.add_check("phi_l4_late_over_early", phi4_late / (phi4_early + 1e-300), 0.0, 1.1);
    rep.add_check("phi_inf_late_over_early", inf_late / (inf_early + 1e-300), 0.0, 1.1);
    rep.series.push_back({"t", ts});
    rep.series.push_back({"v_l2", vmass});
    rep.series.push_back({"phi_l4", phi4});
    rep.series.push_back({"phi_inf", phiinf});
  }
  rep.runtime_sec = sw.seconds();
  return rep;
}

cd strip_integral(const SpeedField& f, double x0, double x1, double slope) {
  if (!(x1 > x0)) throw std::invalid_argument("strip_integral: needs x1 > x0");
  cd acc(0.0, 0.0);
  for (int ic = 0; ic < f.grid_c.n_points; ++ic) {
    const double c = f.grid_c.point(ic);
    const Profile1D row(f.grid_z, f.values.row(ic).transpose());
    const CVec G = cumtrapz(row);
    const cd hiv = eval_antiderivative(f.grid_z, G, x1 - c * slope);
    const cd lov = eval_antiderivative(f.grid_z, G, x0 - c * slope);
    acc += (hiv - lov) * f.grid_c.spacing;
  }
  return acc;
}

std::vector<double> radial_average(const SpeedField& f, const std::vector<double>& radii,
                                   int n_theta) {
  std::vector<double> out(radii.size(), 0.0);
  for (size_t ir = 0; ir < radii.size(); ++ir) {
    const double r = radii[ir];
    double acc = 0.0;
    for (int it = 0; it < n_theta; ++it) {
      const double th = 2.0 * M_PI * it / n_theta;
      // circle point in (z, c) coordinates
      const double z = -r * std::sin(th);
      const double c = r * std::cos(th);
      const double tz = f.grid_z.locate(z);
      const double tc = f.grid_c.locate(c);
      if (tz < 0 || tz > f.grid_z.n_points - 1 || tc < 0 || tc > f.grid_c.n_points - 1)
        continue;
      // separable cubic interpolation across c-rows
      const int p = 3, npts = 4;
      int base = std::clamp(int(std::floor(tc)) - 1, 0, f.grid_c.n_points - npts);
      const double s = tc - base;
      cd val(0.0, 0.0);
      for (int j = 0; j < npts; ++j) {
        double wgt = 1.0;
        for (int m = 0; m < npts; ++m)
          if (m != j) wgt *= (s - m) / double(j - m);
        val += wgt * interp_row(f, base + j, z, p);
      }
      acc += val.real();
    }
    out[ir] = acc / n_theta;
  }
  return out;
}

double abel_integral(const std::vector<double>& radii, const std::vector<double>& ftilde,
                     double eps) {
  if (radii.size() != ftilde.size() || radii.size() < 2)
    throw std::invalid_argument("abel_integral: bad sampling");
  auto P1 = [eps](double r) { return std::sqrt(std::max(0.0, r * r - eps * eps)); };
  auto P2 = [eps, &P1](double r) {
    // antiderivative of r^2 / sqrt(r^2 - eps^2)
    return 0.5 * (r * P1(r) + eps * eps * std::log(std::max(r + P1(r), 1e-300)));
  };
  double acc = 0.0;
  for (size_t i = 0; i + 1 < radii.size(); ++i) {
    const double r0 = radii[i], r1 = radii[i + 1];
    if (r1 <= eps) continue;
    const double a = std::max(r0, eps);
    // linear model ftilde(r) = alpha + beta r on the cell
    const double beta = (ftilde[i + 1] - ftilde[i]) / (r1 - r0);
    const double alpha = ftilde[i] - beta * r0;
    acc += alpha * (P1(r1) - P1(a)) + beta * (P2(r1) - P2(a));
  }
  return acc;
}

ExperimentReport radial_abel_check(const SpeedField& f, const std::vector<double>& eps_list,
                                   int n_radii, int n_theta, bool expect_zero) {
  Stopwatch sw;
  ExperimentReport rep;
  rep.name = "radial_abel";
  const double rmax = std::min({std::abs(f.grid_z.origin), std::abs(f.grid_z.back()),
                                std::abs(f.grid_c.origin), std::abs(f.grid_c.back())});
  std::vector<double> radii(size_t(n_radii), 0.0);
  for (int i = 0; i < n_radii; ++i) radii[size_t(i)] = rmax * (i + 0.5) / n_radii;
  const auto ftilde = radial_average(f, radii, n_theta);

  double scale = 0.0;
  for (double v : ftilde) scale = std::max(scale, std::abs(v));
  rep.add_input("ftilde_sup", std::to_string(scale));
  std::vector<double> integrals;
  for (double eps : eps_list) {
    const double val = abel_integral(radii, ftilde, eps);
    integrals.push_back(val);
    if (expect_zero)
      rep.add_check("abel_integral_eps_" + std::to_string(eps), std::abs(val), 0.0,
                    std::max(1e-12, 1e-3 * scale * rmax));
  }
  rep.series.push_back({"eps", eps_list});
  rep.series.push_back({"abel_integral", integrals});
  rep.runtime_sec = sw.seconds();
  return rep;
}

}  // namespace pw
