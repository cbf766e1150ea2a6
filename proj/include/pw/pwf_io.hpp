#pragma once

#include <string>
#include <variant>

#include "pw/field.hpp"

// "PWF1" binary grid files: magic "PWF1", little-endian u32 rank (1 or 2),
// per axis (u32 n_points, f64 origin, f64 spacing), then the row-major
// complex128 payload as (real, imag) pairs. For rank 2 the axis order is
// (fast axis, slow axis) = (x, y) or (z, c); rows of the payload run along
// the fast axis.

namespace pw {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_pwf(const std::string& path, const Profile1D& f);
void write_pwf(const std::string& path, const PhysField2D& f);
void write_pwf(const std::string& path, const SpeedField& f);

using AnyField = std::variant<Profile1D, PhysField2D, SpeedField>;

// Reads rank 1 as Profile1D, rank 2 as PhysField2D (reinterpret with
// as_speed_field when the file holds a speed-space field).
AnyField read_pwf(const std::string& path);
Profile1D read_pwf_profile(const std::string& path);
PhysField2D read_pwf_phys(const std::string& path);
SpeedField read_pwf_speed(const std::string& path);

inline SpeedField as_speed_field(const PhysField2D& f) {
  return SpeedField(f.grid_x, f.grid_y, f.values);
}
inline PhysField2D as_phys_field(const SpeedField& f) {
  return PhysField2D(f.grid_z, f.grid_c, f.values);
}

// CSV export of a 1D section: header "coord,re,im".
void write_csv(const std::string& path, const Profile1D& f);

}  // namespace pw
