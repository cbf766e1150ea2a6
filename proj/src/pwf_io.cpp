#include "pw/pwf_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace pw {

namespace {

constexpr char kMagic[4] = {'P', 'W', 'F', '1'};

void put_u32(std::ostream& os, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return uint32_t(b[0]) | (uint32_t(b[1]) << 8) | (uint32_t(b[2]) << 16) |
         (uint32_t(b[3]) << 24);
}

void put_f64(std::ostream& os, double v) {
  uint64_t u;
  std::memcpy(&u, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= uint64_t(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}

void put_axis(std::ostream& os, const Grid1D& g) {
  put_u32(os, uint32_t(g.n_points));
  put_f64(os, g.origin);
  put_f64(os, g.spacing);
}

Grid1D get_axis(std::istream& is) {
  const uint32_t n = get_u32(is);
  const double origin = get_f64(is);
  const double spacing = get_f64(is);
  return Grid1D(int(n), origin, spacing);
}

void put_payload(std::ostream& os, const cd* data, Eigen::Index count) {
  for (Eigen::Index i = 0; i < count; ++i) {
    put_f64(os, data[i].real());
    put_f64(os, data[i].imag());
  }
}

void get_payload(std::istream& is, cd* data, Eigen::Index count) {
  for (Eigen::Index i = 0; i < count; ++i) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    data[i] = cd(re, im);
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  return os;
}

}  // namespace

void write_pwf(const std::string& path, const Profile1D& f) {
  auto os = open_out(path);
  os.write(kMagic, 4);
  put_u32(os, 1);
  put_axis(os, f.grid_z);
  put_payload(os, f.values.data(), f.values.size());
  if (!os) throw IoError("write failed: " + path);
}

namespace {
void write_rank2(const std::string& path, const Grid1D& fast, const Grid1D& slow,
                 const CMat& values) {
  auto os = open_out(path);
  os.write(kMagic, 4);
  put_u32(os, 2);
  put_axis(os, fast);
  put_axis(os, slow);
  put_payload(os, values.data(), values.size());
  if (!os) throw IoError("write failed: " + path);
}
}  // namespace

void write_pwf(const std::string& path, const PhysField2D& f) {
  write_rank2(path, f.grid_x, f.grid_y, f.values);
}

void write_pwf(const std::string& path, const SpeedField& f) {
  write_rank2(path, f.grid_z, f.grid_c, f.values);
}

AnyField read_pwf(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw IoError("not a PWF1 file: " + path);
  const uint32_t rank = get_u32(is);
  if (rank == 1) {
    Grid1D g = get_axis(is);
    CVec v(g.n_points);
    get_payload(is, v.data(), v.size());
    if (!is) throw IoError("truncated PWF1 file: " + path);
    return Profile1D(g, std::move(v));
  }
  if (rank == 2) {
    Grid1D fast = get_axis(is);
    Grid1D slow = get_axis(is);
    CMat v(slow.n_points, fast.n_points);
    get_payload(is, v.data(), v.size());
    if (!is) throw IoError("truncated PWF1 file: " + path);
    return PhysField2D(fast, slow, std::move(v));
  }
  throw IoError("unsupported PWF1 rank in " + path);
}

Profile1D read_pwf_profile(const std::string& path) {
  auto any = read_pwf(path);
  if (auto* p = std::get_if<Profile1D>(&any)) return *p;
  throw IoError("expected rank-1 PWF1 file: " + path);
}

PhysField2D read_pwf_phys(const std::string& path) {
  auto any = read_pwf(path);
  if (auto* p = std::get_if<PhysField2D>(&any)) return *p;
  throw IoError("expected rank-2 PWF1 file: " + path);
}

SpeedField read_pwf_speed(const std::string& path) {
  return as_speed_field(read_pwf_phys(path));
}

void write_csv(const std::string& path, const Profile1D& f) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw IoError("cannot open for writing: " + path);
  std::fprintf(fp, "coord,re,im\n");
  for (int i = 0; i < f.size(); ++i)
    std::fprintf(fp, "%.17g,%.17g,%.17g\n", f.grid_z.point(i), f.values[i].real(),
                 f.values[i].imag());
  std::fclose(fp);
}

}  // namespace pw
