#pragma once

#include "pw/field.hpp"
#include "pw/transform.hpp"

namespace pw {

enum class PropagatorKind { schrodinger, heat, wave };

struct PropagatorSpec {
  PropagatorKind kind = PropagatorKind::schrodinger;
  double dispersion_coeff = 1.0;  // a = 1 + c^2 for speed slices, 1 ambient
  double time = 0.0;
};
void validate(const PropagatorSpec& spec);

// Free 1D Schrodinger flow of i f_t + a f_zz = 0: spectral multiplier
// e^{-i a (2 pi xi)^2 t}. Unitary up to rounding.
Profile1D evolve_free_1d(const Profile1D& f, double a, double t);

// Heat flow f_t = a f_zz (used by the oscillatory-family cross-checks).
Profile1D evolve_heat_1d(const Profile1D& f, double a, double t);

// Free 2D Schrodinger flow with multiplier e^{-i (2 pi)^2 (xi^2 + eta^2) t}.
PhysField2D evolve_free_2d(const PhysField2D& u, double t);

// Per-slice free flow with a = 1 + c^2: the speed-space realization of the
// 2D group acting on plane-wave superpositions.
SpeedField evolve_planewave_part(const SpeedField& f, double t);

// || T(evolved f) - evolved(Tf) ||_2 / (1 + ||Tf||_2) on the target box.
double semigroup_commute_residual(const SpeedField& f, double t, const Grid1D& gx,
                                  const Grid1D& gy, const PwtOptions& opt = {});

// d'Alembert solution per slice (speed sqrt(1+c^2)) followed by the transform.
PhysField2D wave2d_via_pwt(const SpeedField& f0, const SpeedField& f1, double t,
                           const Grid1D& gx, const Grid1D& gy,
                           const PwtOptions& opt = {}, TransformStats* stats = nullptr);

// Evolve only the slice data of the wave equation (exposed for residual tests).
SpeedField wave_slices(const SpeedField& f0, const SpeedField& f1, double t,
                       const PwtOptions& opt = {});

enum class FamilyKind { heat, schrodinger };

// Oscillatory families in the angular e^{-icx} convention:
//   heat:        u(t,x) = int A(c) e^{-icx - c^2 t} dc
//   schrodinger: u(t,x) = int A(c) e^{-icx + i c^2 t} dc
Profile1D oscillatory_family_eval(const Profile1D& A, double t, const Grid1D& x_grid,
                                  FamilyKind kind);

// Angular-convention coefficients of an initial datum: A(c) with
// u0(x) = int A(c) e^{-icx} dc, i.e. A(c) = F[u0](-c / (2 pi)) / (2 pi).
Profile1D angular_coefficients(const Profile1D& u0, const Grid1D& c_grid);

}  // namespace pw
