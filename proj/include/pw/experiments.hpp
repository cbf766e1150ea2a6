#pragma once

#include <string>
#include <vector>

#include "pw/nls.hpp"
#include "pw/norms.hpp"
#include "pw/transform.hpp"

namespace pw {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double lo = -kInfinity;  // inclusive bounds the value must satisfy
  double hi = kInfinity;
  bool pass = false;
};

struct SeriesColumn {
  std::string name;
  std::vector<double> values;
};

struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> inputs;  // key, value summary
  std::vector<CheckResult> checks;
  std::vector<SeriesColumn> series;  // aligned columns for CSV export
  double runtime_sec = 0.0;

  bool passed() const;
  CheckResult& add_check(const std::string& name, double value, double lo, double hi);
  void add_input(const std::string& key, const std::string& value);
  // key/value report document (JSON) and the series CSV
  void write_json(const std::string& path) const;
  void write_csv(const std::string& path) const;
};

// Linear background decay: evolves Tf0 through the slice flow, records sup
// norms of phi and grad phi, fits the log-log slope over the given times.
ExperimentReport decay_experiment(const SpeedField& f0, const std::vector<double>& times,
                                  const Grid1D& gx, const Grid1D& gy,
                                  const PwtOptions& opt = {});

struct StabilityConfig {
  std::vector<double> eps_ladder = {0.2, 0.1, 0.05};
  NlsParams params;          // sigma = 4 runs by default
  ForcedOptions forced;
};

// Scales (background, v0) onto the epsilon ladder, runs the forced solver and
// checks delta(eps) = sup_t ||u - comparator||_{H1} is nonincreasing with no
// blowup trip.
ExperimentReport stability_experiment(const Background& bg0, const PhysField2D& v0,
                                      const StabilityConfig& cfg);

// Smooth cutoff psi: identically 1 on [-1,1], 0 outside [-2,2].
double bump_psi(double x);

// g_eps = g - (F^{-1} psi_eps) * g, realized spectrally as (1 - psi(xi/eps)) F g.
Profile1D highpass_profile(const Profile1D& g, double eps);

// Tensor background f(c) (x) g_eps(z). Rejects g with |Fg(0)| below min_dc.
SpeedField build_highpass_tensor(const Profile1D& speed_factor, const Profile1D& g,
                                 double eps, double min_dc = 1e-8);

struct LargeDataConfig {
  std::vector<double> eps_ladder = {0.5, 0.25, 0.125};
  double min_dc = 1e-8;
};

// Runs the eps ladder of the large-data construction and checks the L2 ladder
// grows while the X norm stays within 2x of the eps-free value, plus the
// gradient lower bound.
ExperimentReport large_data_experiment(const Profile1D& speed_factor, const Profile1D& g,
                                       const LargeDataConfig& cfg = {});

struct GwpConfig {
  NlsParams params;  // sigma = 1, t_end = 50 by default
  ForcedOptions forced;
};

// sigma = 1 global run: completes without the guard tripping, log ||v||_2
// grows at most linearly, phi stays bounded in L4 and Linf.
ExperimentReport gwp_experiment(const PhysField2D& v0, const SpeedField& f0,
                                const GwpConfig& cfg);

// Integral of f over the strip {x0 <= z + c*slope <= x1}.
cd strip_integral(const SpeedField& f, double x0, double x1, double slope);

// Angular average over the circle of radius r (values interpolated on f).
std::vector<double> radial_average(const SpeedField& f, const std::vector<double>& radii,
                                   int n_theta = 256);

// int_eps^inf ftilde(r) r / sqrt(r^2 - eps^2) dr with the endpoint cell
// integrated in closed form (ftilde piecewise linear on the radii).
double abel_integral(const std::vector<double>& radii, const std::vector<double>& ftilde,
                     double eps);

// Reports the Abel integrals; when expect_zero is set (the caller asserts
// Tf == 0, e.g. the zero field) each integral is checked against zero.
ExperimentReport radial_abel_check(const SpeedField& f, const std::vector<double>& eps_list,
                                   int n_radii = 256, int n_theta = 256,
                                   bool expect_zero = false);

}  // namespace pw
