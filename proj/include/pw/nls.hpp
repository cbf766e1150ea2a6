#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pw/field.hpp"
#include "pw/transform.hpp"

namespace pw {

struct NlsParams {
  double lambda = 1.0;
  double sigma = 4.0;      // sigma >= 1
  double dt = 1e-2;        // > 0, <= dt_max
  double t_end = 1.0;
  int record_every = 10;   // diagnostics cadence in steps
  double blowup_factor = 1e6;
  double dt_max = 0.1;     // declared step-size ceiling
};
void validate(const NlsParams& p);

struct BlowupError : std::runtime_error {
  BlowupError(double t, int index, const std::string& what)
      : std::runtime_error(what), time(t), profile_index(index) {}
  double time;
  int profile_index;  // -1 when the 2D field tripped the guard
};

// Finite family of distinct-speed profiles.
struct ProfileSet {
  struct Entry {
    double speed;
    Profile1D profile;
  };
  std::vector<Entry> entries;
  size_t size() const { return entries.size(); }
};
// Throws naming the offending pair when two speeds are closer than min_gap.
void validate(const ProfileSet& ps, double min_gap = 1e-9);

double interaction_norm(const ProfileSet& ps);
double xc_norm(const ProfileSet& ps);
// Initial-data weight of the numerable stability theorem:
// sum_n ||z f_n||_2 + ||dz f_n||_1
//   + sum_{j != k} [(1+c_j^2)^{1/2} ||dz f_j||_2 + ||f_j||_2] ||f_k||_2 / |c_j-c_k|^{1/2}.
double numerable_stability_weight(const ProfileSet& ps);

struct Trajectory1D {
  std::vector<double> times;
  std::vector<Profile1D> states;
};

// Strang split-step for i f_t + a f_zz + lambda |f|^sigma f = 0:
// exact nonlinear phase rotation (half), spectral free flow (full), half.
Trajectory1D nls1d_solve(const Profile1D& f0, double a, const NlsParams& p);

// One Strang step (any finite dt, used by the system and 2D engines).
void nls1d_step(Profile1D& f, double a, double lambda, double sigma, double dt);

struct ProfileSetTrajectory {
  std::vector<double> times;
  std::vector<ProfileSet> states;
};

// Truncated countable system: each profile evolves independently with
// a = 1 + c_n^2. Per-profile blowup aborts carry the offending index.
ProfileSetTrajectory countable_system_solve(const ProfileSet& ps0, const NlsParams& p);

struct SynthOptions {
  int interp_order = 3;
  double support_tol = 1e-10;
  bool wrap = false;  // wrap x - c y into the profile box (torus-consistent synthesis)
};

// phi(x,y) = sum_n f_n(x - c_n y) interpolated onto the grid.
PhysField2D synthesize_phi(const ProfileSet& ps, const Grid1D& gx, const Grid1D& gy,
                           const SynthOptions& opt = {}, TransformStats* stats = nullptr);

using Background = std::variant<std::monostate, ProfileSet, SpeedField>;

struct DecomposedState {
  PhysField2D v;
  Background background;
  double time = 0.0;
};

struct Diagnostics {
  std::vector<double> t;
  std::vector<double> mass;      // ||v||_2 (||u||_2 for the monolithic solver)
  std::vector<double> interaction, xc;  // numerable background; 0 otherwise
  std::vector<double> h;         // running h(t)
  std::vector<double> v_h1;      // ||v(t)||_{H^1}
  std::vector<double> dev_h1;    // ||u - comparator||_{H^1} (= ||v||_{H^1} by construction)
  std::vector<double> phi_inf;   // sup |phi(t)| on the grid
  std::vector<std::vector<double>> profile_mass;  // per-profile ||f_n||_2
};

enum class BackgroundType { none, numerable, continuous };

struct ForcedTrajectory {
  BackgroundType type = BackgroundType::none;
  std::vector<double> times;
  std::vector<PhysField2D> v;            // snapshots at record times
  std::vector<ProfileSet> backgrounds;   // numerable snapshots (else empty)
  SpeedField continuous_f0;              // continuous initial data (else empty)
  Diagnostics diag;
};

struct ForcedOptions {
  SynthOptions synth;
  double min_speed_gap = 1e-9;
};

// Strang solver for the decomposed v-equation: spectral half step, pointwise
// nonlinear step with the background frozen at the step midpoint, spectral
// half step. The numerable background advances by its own split steps and the
// forcing subtracts g = sum |phi_n|^sigma phi_n; the continuous background
// advances linearly in speed space and subtracts nothing. An empty background
// takes the exact phase-rotation path, which is the monolithic solver.
ForcedTrajectory forced_nls2d_solve(const PhysField2D& v0, const Background& bg,
                                    const NlsParams& p, const ForcedOptions& opt = {});

// Standard 2D split-step for the full equation (decomposition oracle).
ForcedTrajectory monolithic_nls2d_solve(const PhysField2D& u0, const NlsParams& p);

DecomposedState state_at(const ForcedTrajectory& traj, size_t i);
PhysField2D assemble(const DecomposedState& s, const SynthOptions& opt = {});

// h(t) = ||v||_{Linft H1} + sum_{i=3,4,5} ||v||_{L^{gamma_i} W^{1,rho_i}} with
// rho_i = i+1 and 2/gamma_i = 1 - 2/rho_i; time integrals by trapezoid over
// the recorded samples. Returns the final value; the running series is in
// Diagnostics::h.
double h_diagnostic(const Diagnostics& diag);

// W^{1,p} spatial norm (spectral gradient + quadrature), used by h.
double w1p_norm(const PhysField2D& v, double p);

}  // namespace pw
