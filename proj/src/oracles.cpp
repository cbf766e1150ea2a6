#include "pw/oracles.hpp"

#include <cmath>

namespace pw {

double oracle_unit_square(double x, double y) {
  if (y == 0.0) return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
  if (x >= 0.0 && x <= 1.0) {
    if (y >= x - 1.0 && y <= x) return 1.0;
    if (y >= x) return x / y;
    return (x - 1.0) / y;  // y <= x - 1
  }
  if (x <= 0.0) {
    if (y >= x - 1.0 && y <= x) return (y - x) / y;
    if (y <= x - 1.0) return -1.0 / y;
    return 0.0;
  }
  // x >= 1
  if (y >= x - 1.0 && y <= x) return (y - x + 1.0) / y;
  if (y >= x) return 1.0 / y;
  return 0.0;
}

double oracle_gaussian(double x, double y) {
  const double s = 1.0 + y * y;
  return std::sqrt(M_PI / s) * std::exp(-x * x / s);
}

}  // namespace pw
