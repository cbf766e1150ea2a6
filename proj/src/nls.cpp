#include "pw/nls.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "pw/evolve.hpp"
#include "pw/fft.hpp"
#include "pw/interp.hpp"
#include "pw/norms.hpp"

namespace pw {

void validate(const NlsParams& p) {
  std::vector<std::string> bad;
  if (!(p.sigma >= 1.0)) bad.push_back("sigma must be >= 1");
  if (!(p.dt > 0.0)) bad.push_back("dt must be > 0");
  if (p.dt > p.dt_max) bad.push_back("dt exceeds the declared ceiling dt_max");
  if (!(p.t_end >= 0.0) || !std::isfinite(p.t_end)) bad.push_back("t_end must be finite and >= 0");
  if (p.record_every < 1) bad.push_back("record_every must be a positive integer");
  if (!(p.blowup_factor > 1.0)) bad.push_back("blowup_factor must be > 1");
  if (!bad.empty()) {
    std::ostringstream os;
    os << "NlsParams:";
    for (const auto& b : bad) os << " " << b << ";";
    throw std::invalid_argument(os.str());
  }
}

void validate(const ProfileSet& ps, double min_gap) {
  for (size_t i = 0; i < ps.size(); ++i)
    for (size_t j = i + 1; j < ps.size(); ++j)
      if (std::abs(ps.entries[i].speed - ps.entries[j].speed) < min_gap) {
        std::ostringstream os;
        os << "ProfileSet: speeds " << i << " and " << j << " coincide (c_" << i
           << " = " << ps.entries[i].speed << ", c_" << j << " = "
           << ps.entries[j].speed << ")";
        throw std::invalid_argument(os.str());
      }
}

double interaction_norm(const ProfileSet& ps) {
  validate(ps);
  std::vector<double> mass(ps.size());
  for (size_t n = 0; n < ps.size(); ++n)
    mass[n] = lp_norm(ps.entries[n].profile, 2.0);
  double acc = 0.0;
  for (size_t j = 0; j < ps.size(); ++j)
    for (size_t k = 0; k < ps.size(); ++k) {
      if (j == k) continue;
      acc += mass[j] * mass[k] /
             std::sqrt(std::abs(ps.entries[j].speed - ps.entries[k].speed));
    }
  return acc;
}

double xc_norm(const ProfileSet& ps) {
  double acc = 0.0;
  for (const auto& e : ps.entries)
    acc += (1.0 + e.speed * e.speed) * sobolev_norm(e.profile, 2.0);
  return acc;
}

double numerable_stability_weight(const ProfileSet& ps) {
  validate(ps);
  const size_t n = ps.size();
  std::vector<double> mass(n), dz2(n);
  double acc = 0.0;
  for (size_t k = 0; k < n; ++k) {
    const Profile1D& f = ps.entries[k].profile;
    mass[k] = lp_norm(f, 2.0);
    const Profile1D fz = dz(f);
    dz2[k] = lp_norm(fz, 2.0);
    CVec zf(f.size());
    for (int i = 0; i < f.size(); ++i) zf[i] = f.grid_z.point(i) * f.values[i];
    acc += lp_norm(Profile1D(f.grid_z, std::move(zf)), 2.0);
    acc += lp_norm(fz, 1.0);
  }
  for (size_t j = 0; j < n; ++j)
    for (size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      const double cj = ps.entries[j].speed;
      const double gap = std::sqrt(std::abs(cj - ps.entries[k].speed));
      acc += (std::sqrt(1.0 + cj * cj) * dz2[j] + mass[j]) * mass[k] / gap;
    }
  return acc;
}

namespace {

double pow_sigma(double m2, double sigma) {
  if (sigma == 4.0) return m2 * m2;
  if (sigma == 2.0) return m2;
  if (sigma == 1.0) return std::sqrt(m2);
  return std::pow(m2, 0.5 * sigma);
}

void phase_rotate_raw(cd* v, Eigen::Index n, double lambda, double sigma, double s) {
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ph = lambda * pow_sigma(std::norm(v[i]), sigma) * s;
    v[i] *= cd(std::cos(ph), std::sin(ph));
  }
}

void phase_rotate(CVec& v, double lambda, double sigma, double s) {
  phase_rotate_raw(v.data(), v.size(), lambda, sigma, s);
}

struct StepPlan {
  int n_steps;
  double dt_last;
};

StepPlan plan_steps(double t_end, double dt) {
  if (t_end <= 0.0) return {0, 0.0};
  int n = int(std::ceil(t_end / dt - 1e-9));
  if (n < 1) n = 1;
  return {n, t_end - (n - 1) * dt};
}

}  // namespace

void nls1d_step(Profile1D& f, double a, double lambda, double sigma, double dt) {
  phase_rotate(f.values, lambda, sigma, 0.5 * dt);
  CVec& v = f.values;
  dft_inplace(v, -1);
  const auto xis = fft_freq(f.grid_z);
  for (int k = 0; k < f.grid_z.n_points; ++k) {
    const double w = 2.0 * M_PI * xis[size_t(k)];
    const double ph = -a * w * w * dt;
    v[k] *= cd(std::cos(ph), std::sin(ph));
  }
  idft_inplace(v);
  phase_rotate(f.values, lambda, sigma, 0.5 * dt);
}

Trajectory1D nls1d_solve(const Profile1D& f0, double a, const NlsParams& p) {
  validate(p);
  if (!(a > 0.0)) throw std::invalid_argument("nls1d_solve: dispersion coefficient must be > 0");
  double sup0 = 0.0;
  for (int i = 0; i < f0.size(); ++i) sup0 = std::max(sup0, std::abs(f0.values[i]));
  const double guard = p.blowup_factor * sup0;

  Trajectory1D traj;
  Profile1D f = f0;
  traj.times.push_back(0.0);
  traj.states.push_back(f);
  const auto plan = plan_steps(p.t_end, p.dt);
  double t = 0.0;
  for (int k = 0; k < plan.n_steps; ++k) {
    const double dt = (k == plan.n_steps - 1) ? plan.dt_last : p.dt;
    nls1d_step(f, a, p.lambda, p.sigma, dt);
    t += dt;
    double sup = 0.0;
    for (int i = 0; i < f.size(); ++i) sup = std::max(sup, std::abs(f.values[i]));
    if (sup > guard)
      throw BlowupError(t, -1, "finite-time blowup suspected: sup norm exceeded guard");
    if ((k + 1) % p.record_every == 0 || k + 1 == plan.n_steps) {
      traj.times.push_back(t);
      traj.states.push_back(f);
    }
  }
  return traj;
}

ProfileSetTrajectory countable_system_solve(const ProfileSet& ps0, const NlsParams& p) {
  validate(p);
  validate(ps0);
  std::vector<double> guard(ps0.size());
  for (size_t n = 0; n < ps0.size(); ++n) {
    double sup = 0.0;
    const auto& v = ps0.entries[n].profile.values;
    for (Eigen::Index i = 0; i < v.size(); ++i) sup = std::max(sup, std::abs(v[i]));
    guard[n] = p.blowup_factor * sup;
  }

  ProfileSetTrajectory traj;
  ProfileSet ps = ps0;
  traj.times.push_back(0.0);
  traj.states.push_back(ps);
  const auto plan = plan_steps(p.t_end, p.dt);
  double t = 0.0;
  for (int k = 0; k < plan.n_steps; ++k) {
    const double dt = (k == plan.n_steps - 1) ? plan.dt_last : p.dt;
    t += dt;
    for (size_t n = 0; n < ps.size(); ++n) {
      auto& e = ps.entries[n];
      nls1d_step(e.profile, 1.0 + e.speed * e.speed, p.lambda, p.sigma, dt);
      double sup = 0.0;
      for (Eigen::Index i = 0; i < e.profile.values.size(); ++i)
        sup = std::max(sup, std::abs(e.profile.values[i]));
      if (sup > guard[n]) {
        std::ostringstream os;
        os << "finite-time blowup suspected in profile " << n;
        throw BlowupError(t, int(n), os.str());
      }
    }
    if ((k + 1) % p.record_every == 0 || k + 1 == plan.n_steps) {
      traj.times.push_back(t);
      traj.states.push_back(ps);
    }
  }
  return traj;
}

namespace {

double positive_fmod(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  return r;
}

// phi (and optionally g = sum |phi_n|^sigma phi_n) accumulated on the grid.
void synth_profiles(const ProfileSet& ps, const Grid1D& gx, const Grid1D& gy,
                    const SynthOptions& opt, double sigma, CMat& phi, CMat* g,
                    TransformStats* stats) {
  phi.setZero(gy.n_points, gx.n_points);
  if (g) g->setZero(gy.n_points, gx.n_points);
  bool truncated = false;
  for (const auto& e : ps.entries) {
    const Grid1D& gz = e.profile.grid_z;
    const double base = gz.origin - 0.5 * gz.spacing;
    const double period = gz.extent();
    const double edge = std::max(std::abs(e.profile.values[0]),
                                 std::abs(e.profile.values[e.profile.size() - 1]));
#pragma omp parallel for schedule(static) reduction(||:truncated)
    for (int iy = 0; iy < gy.n_points; ++iy) {
      const double y = gy.point(iy);
      for (int ix = 0; ix < gx.n_points; ++ix) {
        double z = gx.point(ix) - e.speed * y;
        if (opt.wrap) z = base + positive_fmod(z - base, period);
        if ((z < gz.origin || z > gz.back()) && edge > opt.support_tol) truncated = true;
        const cd val = interp_point(gz, e.profile.values.data(), 1, z, opt.interp_order);
        phi(iy, ix) += val;
        if (g) (*g)(iy, ix) += pow_sigma(std::norm(val), sigma) * val;
      }
    }
  }
  if (stats) stats->truncated = truncated;
}

}  // namespace

PhysField2D synthesize_phi(const ProfileSet& ps, const Grid1D& gx, const Grid1D& gy,
                           const SynthOptions& opt, TransformStats* stats) {
  CMat phi;
  synth_profiles(ps, gx, gy, opt, 1.0, phi, nullptr, stats);
  return PhysField2D(gx, gy, std::move(phi));
}

namespace {

// Internal background drivers for the forced solver.
class BackgroundDriver {
 public:
  virtual ~BackgroundDriver() = default;
  virtual void advance_to(double t) = 0;
  // background (and the numerable-case subtraction g) at time t on the grid
  virtual void synth(double t, CMat& phi, CMat* g) = 0;
  virtual double initial_sup(const Grid1D& gx, const Grid1D& gy) = 0;
  virtual void record(Diagnostics& d) = 0;       // interaction / xc / masses
  virtual void snapshot(ForcedTrajectory& traj) = 0;
};

class NumerableDriver : public BackgroundDriver {
 public:
  NumerableDriver(ProfileSet ps, const NlsParams& p, const ForcedOptions& opt)
      : ps_(std::move(ps)), params_(p), opt_(opt) {
    guards_.resize(ps_.size());
    for (size_t n = 0; n < ps_.size(); ++n) {
      double sup = 0.0;
      const auto& v = ps_.entries[n].profile.values;
      for (Eigen::Index i = 0; i < v.size(); ++i) sup = std::max(sup, std::abs(v[i]));
      guards_[n] = p.blowup_factor * sup;
    }
  }

  void advance_to(double t) override {
    const double dt = t - time_;
    if (dt <= 0.0) return;
    for (size_t n = 0; n < ps_.size(); ++n) {
      auto& e = ps_.entries[n];
      nls1d_step(e.profile, 1.0 + e.speed * e.speed, params_.lambda, params_.sigma, dt);
      double sup = 0.0;
      for (Eigen::Index i = 0; i < e.profile.values.size(); ++i)
        sup = std::max(sup, std::abs(e.profile.values[i]));
      if (sup > guards_[n])
        throw BlowupError(t, int(n), "finite-time blowup suspected in background profile");
    }
    time_ = t;
  }

  void synth(double, CMat& phi, CMat* g) override {
    synth_profiles(ps_, *gx_, *gy_, opt_.synth, params_.sigma, phi, g, nullptr);
  }

  double initial_sup(const Grid1D& gx, const Grid1D& gy) override {
    gx_ = &gx;
    gy_ = &gy;
    CMat phi;
    synth_profiles(ps_, gx, gy, opt_.synth, params_.sigma, phi, nullptr, nullptr);
    double sup = 0.0;
    for (Eigen::Index i = 0; i < phi.size(); ++i)
      sup = std::max(sup, std::abs(phi.data()[i]));
    return sup;
  }

  void record(Diagnostics& d) override {
    d.interaction.push_back(interaction_norm(ps_));
    d.xc.push_back(xc_norm(ps_));
    std::vector<double> masses(ps_.size());
    for (size_t n = 0; n < ps_.size(); ++n)
      masses[n] = lp_norm(ps_.entries[n].profile, 2.0);
    d.profile_mass.push_back(std::move(masses));
  }

  void snapshot(ForcedTrajectory& traj) override { traj.backgrounds.push_back(ps_); }

 private:
  ProfileSet ps_;
  NlsParams params_;
  ForcedOptions opt_;
  std::vector<double> guards_;
  double time_ = 0.0;
  const Grid1D* gx_ = nullptr;
  const Grid1D* gy_ = nullptr;
};

class ContinuousDriver : public BackgroundDriver {
 public:
  ContinuousDriver(const SpeedField& f0, const ForcedOptions& opt)
      : f0_(f0), opt_(opt), spec_(f0.values), snap_(f0) {
    dft_rows_inplace(spec_, -1);
    xis_ = fft_freq(f0.grid_z);
  }

  void advance_to(double) override {}  // linear flow, evaluated from t = 0 spectra

  void materialize(double t) {
    if (have_time_ && t == snap_time_) return;
    const int nc = f0_.grid_c.n_points, nz = f0_.grid_z.n_points;
    CMat rows(nc, nz);
    for (int ic = 0; ic < nc; ++ic) {
      const double c = f0_.grid_c.point(ic);
      const double a = 1.0 + c * c;
      for (int k = 0; k < nz; ++k) {
        const double w = 2.0 * M_PI * xis_[size_t(k)];
        const double ph = -a * w * w * t;
        rows(ic, k) = spec_(ic, k) * cd(std::cos(ph), std::sin(ph));
      }
    }
    idft_rows_inplace(rows);
    snap_.values = std::move(rows);
    snap_time_ = t;
    have_time_ = true;
  }

  void synth(double t, CMat& phi, CMat* g) override {
    materialize(t);
    PwtOptions popt;
    popt.interp_order = opt_.synth.interp_order;
    popt.support_tol = opt_.synth.support_tol;
    phi = pwt_direct(snap_, *gx_, *gy_, popt).values;
    if (g) g->setZero(gy_->n_points, gx_->n_points);  // continuous case subtracts nothing
  }

  double initial_sup(const Grid1D& gx, const Grid1D& gy) override {
    gx_ = &gx;
    gy_ = &gy;
    CMat phi;
    synth(0.0, phi, nullptr);
    double sup = 0.0;
    for (Eigen::Index i = 0; i < phi.size(); ++i)
      sup = std::max(sup, std::abs(phi.data()[i]));
    return sup;
  }

  void record(Diagnostics& d) override {
    d.interaction.push_back(0.0);
    d.xc.push_back(x_norm(snap_).x_norm);
    d.profile_mass.emplace_back();
  }

  void snapshot(ForcedTrajectory&) override {}

 private:
  SpeedField f0_;
  ForcedOptions opt_;
  CMat spec_;
  SpeedField snap_;
  std::vector<double> xis_;
  double snap_time_ = 0.0;
  bool have_time_ = false;
  const Grid1D* gx_ = nullptr;
  const Grid1D* gy_ = nullptr;
};

void linear_half_step(CMat& v, const Grid1D& gx, const Grid1D& gy, double half_dt) {
  dft2_inplace(v, -1);
  const auto xis = fft_freq(gx);
  const auto etas = fft_freq(gy);
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    const double wy = 2.0 * M_PI * etas[size_t(r)];
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
      const double wx = 2.0 * M_PI * xis[size_t(c)];
      const double ph = -(wx * wx + wy * wy) * half_dt;
      v(r, c) *= cd(std::cos(ph), std::sin(ph));
    }
  }
  idft2_inplace(v);
}

void rk4_forced(CMat& v, const CMat& phi, const CMat& g, double lambda, double sigma,
                double dt) {
  const Eigen::Index n = v.size();
  cd* vp = v.data();
  const cd* pp = phi.data();
  const cd* gp = g.data();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    const cd ph = pp[i];
    const cd gg = gp[i];
    auto F = [&](cd w) {
      const cd s = w + ph;
      return cd(0.0, lambda) * (pow_sigma(std::norm(s), sigma) * s - gg);
    };
    const cd w0 = vp[i];
    const cd k1 = F(w0);
    const cd k2 = F(w0 + 0.5 * dt * k1);
    const cd k3 = F(w0 + 0.5 * dt * k2);
    const cd k4 = F(w0 + dt * k3);
    vp[i] = w0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

}  // namespace

double w1p_norm(const PhysField2D& v, double p) {
  CMat spec = v.values;
  dft2_inplace(spec, -1);
  const auto xis = fft_freq(v.grid_x);
  const auto etas = fft_freq(v.grid_y);
  CMat sx = spec, sy = spec;
  for (Eigen::Index r = 0; r < spec.rows(); ++r) {
    const double wy = 2.0 * M_PI * etas[size_t(r)];
    for (Eigen::Index c = 0; c < spec.cols(); ++c) {
      const double wx = 2.0 * M_PI * xis[size_t(c)];
      sx(r, c) *= cd(0.0, wx);
      sy(r, c) *= cd(0.0, wy);
    }
  }
  idft2_inplace(sx);
  idft2_inplace(sy);
  const double cell = v.grid_x.spacing * v.grid_y.spacing;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.values.size(); ++i)
    acc += std::pow(std::abs(v.values.data()[i]), p) +
           std::pow(std::abs(sx.data()[i]), p) + std::pow(std::abs(sy.data()[i]), p);
  return std::pow(acc * cell, 1.0 / p);
}

namespace {

constexpr double kGamma[3] = {4.0, 10.0 / 3.0, 3.0};  // admissible exponents for rho = 4,5,6
constexpr double kRho[3] = {4.0, 5.0, 6.0};

struct HAccumulator {
  double sup_h1 = 0.0;
  double integrals[3] = {0.0, 0.0, 0.0};
  double prev_t = 0.0;
  double prev_integrand[3] = {0.0, 0.0, 0.0};
  bool primed = false;

  double update(const PhysField2D& v, double t, double v_h1) {
    sup_h1 = std::max(sup_h1, v_h1);
    double integrand[3];
    for (int i = 0; i < 3; ++i)
      integrand[i] = std::pow(w1p_norm(v, kRho[i]), kGamma[i]);
    if (primed) {
      const double dt = t - prev_t;
      for (int i = 0; i < 3; ++i)
        integrals[i] += 0.5 * dt * (prev_integrand[i] + integrand[i]);
    }
    for (int i = 0; i < 3; ++i) prev_integrand[i] = integrand[i];
    prev_t = t;
    primed = true;
    double h = sup_h1;
    for (int i = 0; i < 3; ++i) h += std::pow(integrals[i], 1.0 / kGamma[i]);
    return h;
  }
};

}  // namespace

ForcedTrajectory forced_nls2d_solve(const PhysField2D& v0, const Background& bg,
                                    const NlsParams& p, const ForcedOptions& opt) {
  validate(p);
  ForcedTrajectory traj;
  std::unique_ptr<BackgroundDriver> driver;
  if (std::holds_alternative<ProfileSet>(bg)) {
    const auto& ps = std::get<ProfileSet>(bg);
    validate(ps, opt.min_speed_gap);
    if (!ps.entries.empty()) {
      traj.type = BackgroundType::numerable;
      driver = std::make_unique<NumerableDriver>(ps, p, opt);
    }
  } else if (std::holds_alternative<SpeedField>(bg)) {
    traj.type = BackgroundType::continuous;
    traj.continuous_f0 = std::get<SpeedField>(bg);
    driver = std::make_unique<ContinuousDriver>(traj.continuous_f0, opt);
  }

  double sup0 = 0.0;
  for (Eigen::Index i = 0; i < v0.values.size(); ++i)
    sup0 = std::max(sup0, std::abs(v0.values.data()[i]));
  const double bg_sup = driver ? driver->initial_sup(v0.grid_x, v0.grid_y) : 0.0;
  const double guard = p.blowup_factor * std::max(sup0, bg_sup);

  PhysField2D v = v0;
  CMat phi, g;
  HAccumulator hacc;
  Diagnostics& d = traj.diag;

  auto record = [&](double t) {
    d.t.push_back(t);
    d.mass.push_back(lp_norm(v, 2.0));
    const double vh1 = sobolev_norm(v, 1.0);
    d.v_h1.push_back(vh1);
    d.dev_h1.push_back(vh1);  // u - comparator == v for both background laws
    d.h.push_back(hacc.update(v, t, vh1));
    if (driver) {
      driver->synth(t, phi, nullptr);
      double sup = 0.0;
      for (Eigen::Index i = 0; i < phi.size(); ++i)
        sup = std::max(sup, std::abs(phi.data()[i]));
      d.phi_inf.push_back(sup);
      driver->record(d);
      driver->snapshot(traj);
    } else {
      d.phi_inf.push_back(0.0);
      d.interaction.push_back(0.0);
      d.xc.push_back(0.0);
      d.profile_mass.emplace_back();
    }
    traj.times.push_back(t);
    traj.v.push_back(v);
  };

  record(0.0);
  const auto plan = plan_steps(p.t_end, p.dt);
  double t = 0.0;
  for (int k = 0; k < plan.n_steps; ++k) {
    const double dt = (k == plan.n_steps - 1) ? plan.dt_last : p.dt;
    linear_half_step(v.values, v.grid_x, v.grid_y, 0.5 * dt);
    if (driver) {
      driver->advance_to(t + 0.5 * dt);
      driver->synth(t + 0.5 * dt, phi, &g);
      rk4_forced(v.values, phi, g, p.lambda, p.sigma, dt);
    } else {
      phase_rotate_raw(v.values.data(), v.values.size(), p.lambda, p.sigma, dt);
    }
    linear_half_step(v.values, v.grid_x, v.grid_y, 0.5 * dt);
    if (driver) driver->advance_to(t + dt);
    t += dt;

    double sup = 0.0;
    for (Eigen::Index i = 0; i < v.values.size(); ++i)
      sup = std::max(sup, std::abs(v.values.data()[i]));
    if (sup > guard)
      throw BlowupError(t, -1, "finite-time blowup suspected: sup norm exceeded guard");
    if ((k + 1) % p.record_every == 0 || k + 1 == plan.n_steps) record(t);
  }
  return traj;
}

ForcedTrajectory monolithic_nls2d_solve(const PhysField2D& u0, const NlsParams& p) {
  return forced_nls2d_solve(u0, Background{}, p);
}

DecomposedState state_at(const ForcedTrajectory& traj, size_t i) {
  DecomposedState s;
  s.time = traj.times.at(i);
  s.v = traj.v.at(i);
  switch (traj.type) {
    case BackgroundType::none:
      break;
    case BackgroundType::numerable:
      s.background = traj.backgrounds.at(i);
      break;
    case BackgroundType::continuous:
      s.background = evolve_planewave_part(traj.continuous_f0, s.time);
      break;
  }
  return s;
}

PhysField2D assemble(const DecomposedState& s, const SynthOptions& opt) {
  PhysField2D out = s.v;
  if (std::holds_alternative<ProfileSet>(s.background)) {
    const PhysField2D phi =
        synthesize_phi(std::get<ProfileSet>(s.background), s.v.grid_x, s.v.grid_y, opt);
    out.values += phi.values;
  } else if (std::holds_alternative<SpeedField>(s.background)) {
    PwtOptions popt;
    popt.interp_order = opt.interp_order;
    popt.support_tol = opt.support_tol;
    const PhysField2D phi =
        pwt_direct(std::get<SpeedField>(s.background), s.v.grid_x, s.v.grid_y, popt);
    out.values += phi.values;
  }
  return out;
}

double h_diagnostic(const Diagnostics& diag) {
  return diag.h.empty() ? 0.0 : diag.h.back();
}

}  // namespace pw
