#pragma once

#include <cstdint>
#include <string>

#include "pw/field.hpp"

namespace pw {

// Field constructors, addressed by "name(arg, ...)" spec strings:
//   profiles:    gauss1d(a[,amp]), dgauss1d(a), sech([k]), box(lo,hi[,w]),
//                bandpass(a,xi0)
//   speed fields: gaussian(az,ac[,amp]), unit_square([w]),
//                highpass_gaussian(eps[,az,ac]), random(seed[,modes])
//   phys fields:  gaussian2d(ax,ay[,amp]), zero()
// Box-type indicators are sampled by cell-average smoothing of width w
// (default: one grid cell).
Profile1D build_profile(const std::string& spec, const Grid1D& g);
SpeedField build_speed_field(const std::string& spec, const Grid1D& gz, const Grid1D& gc);
PhysField2D build_phys_field(const std::string& spec, const Grid1D& gx, const Grid1D& gy);

// Deterministic smooth compactly supported field: a Gaussian envelope times a
// fixed-seed random band-limited trigonometric sum.
SpeedField random_smooth_field(uint64_t seed, const Grid1D& gz, const Grid1D& gc,
                               int n_modes = 6, double env = 1.0);

// Cell-average sample of the indicator of [lo, hi] smoothed over width w.
double smoothed_indicator(double x, double lo, double hi, double w);

}  // namespace pw
