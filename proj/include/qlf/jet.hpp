#pragma once
// Truncated Taylor series of order 4, enough for weight derivatives up to
// the fourth.

#include <array>

namespace qlf {

struct Jet {
  static constexpr int kOrder = 4;
  // c[k] is the k-th Taylor coefficient, i.e. f^(k)(t) / k!.
  std::array<double, kOrder + 1> c{};

  static Jet constant(double v) {
    Jet r;
    r.c[0] = v;
    return r;
  }
  // The affine map t -> a + b (t - t0) expanded at t0.
  static Jet affine(double a, double b) {
    Jet r;
    r.c[0] = a;
    r.c[1] = b;
    return r;
  }

  double value() const { return c[0]; }
  double derivative(int k) const;
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(double s, const Jet& a);
Jet operator+(double s, const Jet& a);
Jet reciprocal(const Jet& a);
Jet exp(const Jet& a);

}  // namespace qlf
