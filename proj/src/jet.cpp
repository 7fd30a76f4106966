#include "qlf/jet.hpp"

#include <cmath>

namespace qlf {

double Jet::derivative(int k) const {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f * c[static_cast<std::size_t>(k)];
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet r;
  for (int k = 0; k <= Jet::kOrder; ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet r;
  for (int k = 0; k <= Jet::kOrder; ++k) r.c[k] = a.c[k] - b.c[k];
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  for (int k = 0; k <= Jet::kOrder; ++k) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i) s += a.c[i] * b.c[k - i];
    r.c[k] = s;
  }
  return r;
}

Jet operator*(double s, const Jet& a) {
  Jet r;
  for (int k = 0; k <= Jet::kOrder; ++k) r.c[k] = s * a.c[k];
  return r;
}

Jet operator+(double s, const Jet& a) {
  Jet r = a;
  r.c[0] += s;
  return r;
}

Jet reciprocal(const Jet& a) {
  Jet r;
  const double inv = 1.0 / a.c[0];
  r.c[0] = inv;
  for (int k = 1; k <= Jet::kOrder; ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += a.c[i] * r.c[k - i];
    r.c[k] = -inv * s;
  }
  return r;
}

Jet exp(const Jet& a) {
  // From e' = a' e: k e_k = sum_{i=1}^k i a_i e_{k-i}.
  Jet r;
  r.c[0] = std::exp(a.c[0]);
  for (int k = 1; k <= Jet::kOrder; ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += i * a.c[i] * r.c[k - i];
    r.c[k] = s / k;
  }
  return r;
}

}  // namespace qlf
