#pragma once

namespace qlf {

// Quintic Hermite interpolation on one cell of width h, t in [0, 1], from
// values and first/second derivatives at both ends.
inline double quintic_hermite(double t, double h, double f0, double d0, double s0, double f1, double d1,
                              double s1) {
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double h0 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
  const double h1 = t - 6 * t3 + 8 * t4 - 3 * t5;
  const double h2 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
  const double h3 = 0.5 * (t3 - 2 * t4 + t5);
  const double h4 = -4 * t3 + 7 * t4 - 3 * t5;
  const double h5 = 10 * t3 - 15 * t4 + 6 * t5;
  return f0 * h0 + h * d0 * h1 + h * h * s0 * h2 + f1 * h5 + h * d1 * h4 + h * h * s1 * h3;
}

}  // namespace qlf
