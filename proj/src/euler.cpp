#include "qlf/euler.hpp"

#include <cmath>

#include "qlf/errors.hpp"

namespace qlf {

double prime_square_tail(i64 P) {
  const double x = static_cast<double>(std::max<i64>(P, 2));
  return 2.51012 / (x * std::log(x));
}

EulerProductValue odd_prime_product(i64 P, double prefactor, double c,
                                    const std::function<double(double)>& log_factor) {
  if (P < 3) throw DomainError("Euler product: prime cutoff must be >= 3, got " + std::to_string(P));
  auto table = primes_up_to(P);
  // Kahan sum of the logs in ascending p.
  double s = 0.0, comp = 0.0;
  for (std::uint32_t p32 : table->primes()) {
    if (p32 == 2) continue;
    if (p32 > P) break;
    const double y = log_factor(static_cast<double>(p32)) - comp;
    const double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  EulerProductValue r;
  r.value = prefactor * std::exp(s);
  r.prime_cutoff = P;
  r.tail_bound = std::abs(r.value) * std::expm1(c * prime_square_tail(P));
  return r;
}

namespace {

double logC(double p) { return std::log1p(-1.0 / (p * (p + 1.0))); }

// (1 - 1/p) h(p) - 1 = -1/p^3 - 4(p-1)/(p^2(p+1)).
double D_minus_one(double p) { return -1.0 / (p * p * p) - 4.0 * (p - 1.0) / (p * p * (p + 1.0)); }
double logD(double p) { return std::log1p(D_minus_one(p)); }

}  // namespace

double eta_generic_minus_one(double p) {
  // 1/(p(p+1)) - 1/p^2 combined as -1/(p^2(p+1)) to avoid cancellation.
  return -4.0 * (p - 1.0) / (p * p * (p + 1.0)) - 1.0 / (p * p * (p + 1.0)) - 1.0 / (p * p * p * (p + 1.0));
}

EulerProductValue const_C(i64 P) { return odd_prime_product(P, 1.0 / 3.0, kTailC, logC); }

EulerProductValue const_D(i64 P) { return odd_prime_product(P, 1.0 / 8.0, kTailD, logD); }

EulerProductValue ratio_C_over_D(i64 P) {
  return odd_prime_product(P, 8.0 / 3.0, kTailC + kTailD, [](double p) { return logC(p) - logD(p); });
}

EulerProductValue eta_at_one(i64 l, i64 P) {
  if (l < 1 || l % 2 == 0) throw DomainError("eta_at_one: l must be odd and positive, got " + std::to_string(l));
  const SquarefreeSplit s = split_l1_l2(l);
  const FactoredInteger f = factor(l);
  auto local = [&](double p) -> double {
    const auto pi = static_cast<i64>(p);
    if (s.l1 % pi == 0) return std::log((p - 1.0) / (p + 1.0));
    if (l % pi == 0) return std::log((p - 1.0) / p);
    return std::log1p(eta_generic_minus_one(p));
  };
  EulerProductValue r = odd_prime_product(P, 1.0 / 8.0, kTailEta, local);
  // Primes of l above the cutoff still take their special factor.
  for (const auto& pe : f.factors) {
    if (pe.p <= P) continue;
    const double p = static_cast<double>(pe.p);
    const double adj = local(p) - std::log1p(eta_generic_minus_one(p));
    r.value *= std::exp(adj);
    r.tail_bound *= std::exp(adj);
  }
  return r;
}

}  // namespace qlf
