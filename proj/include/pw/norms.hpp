#pragma once

#include <limits>

#include "pw/field.hpp"

namespace pw {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Discrete L^p norm with uniform cell weights (the trapezoid rule of the
// periodic extension): each node carries weight = spacing, so a constant-1
// field integrates to the grid extent and the discrete Plancherel identity is
// exact. Reductions run in fixed row-major order. p = kInfinity gives the max
// modulus. Rejects p < 1 and non-finite entries.
double lp_norm(const Profile1D& f, double p);
double lp_norm(const PhysField2D& f, double p);
double lp_norm(const SpeedField& f, double p);

// Discrete H^s norm via the spectral multiplier (1 + |2 pi xi|^2)^{s/2};
// s = 0 agrees with lp_norm(., 2) to rounding. Rejects s < 0.
double sobolev_norm(const Profile1D& f, double s);
double sobolev_norm(const PhysField2D& f, double s);
double sobolev_norm(const SpeedField& f, double s);

// H^s of one c-row of a speed field (used by the sliced norms).
double sobolev_norm_row(const SpeedField& f, int ic, double s);
double l2_norm_row(const SpeedField& f, int ic);
double l1_norm_row(const SpeedField& f, int ic);

}  // namespace pw
