#pragma once

#include <cmath>

namespace qlf {

// Compensated summation (Neumaier's variant of Kahan). Order-dependent by
// design: callers add terms in a fixed order for reproducibility.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace qlf
