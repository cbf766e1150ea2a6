#pragma once

// Test-only quadrature oracles, independent of the library's FFT/grid path:
// adaptive Simpson integration for closed-form cross-checks.

#include <cmath>
#include <functional>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

inline double adaptive_step(const std::function<double(double)>& f, double a, double b,
                            double whole, double tol, int depth) {
  const double c = 0.5 * (a + b);
  const double left = simpson(f, a, c);
  const double right = simpson(f, c, b);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_step(f, a, c, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, c, b, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  return adaptive_step(f, a, b, simpson(f, a, b), tol, 40);
}

inline double integrate2(const std::function<double(double, double)>& f, double ax,
                         double bx, double ay, double by, double tol = 1e-10) {
  return integrate(
      [&](double y) {
        return integrate([&, y](double x) { return f(x, y); }, ax, bx, tol * 0.1);
      },
      ay, by, tol);
}

}  // namespace oracle
