#pragma once

namespace pw {

// Closed-form transform of the (sharp) unit-square indicator, from the
// eight-branch piecewise table; the y = 0 line degenerates to the indicator
// of [0, 1] itself.
double oracle_unit_square(double x, double y);

// Closed-form transform of e^{-z^2 - c^2}: sqrt(pi/(1+y^2)) e^{-x^2/(1+y^2)}.
double oracle_gaussian(double x, double y);

}  // namespace pw
