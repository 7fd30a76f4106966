#pragma once
// Truncated Euler products over odd primes with explicit tail bounds.

#include <functional>

#include "qlf/ntheory.hpp"

namespace qlf {

struct EulerProductValue {
  double value = 0.0;
  i64 prime_cutoff = 0;
  // Absolute bound on |limit - value| from the omitted primes p > prime_cutoff.
  double tail_bound = 0.0;

  double lo() const { return value - tail_bound; }
  double hi() const { return value + tail_bound; }
};

// Upper bound for sum_{p > P} p^{-2}, from pi(x) < 1.25506 x / log x.
double prime_square_tail(i64 P);

// prefactor * prod_{3 <= p <= P} f(p), given log f(p) and a constant c with
// |log f(p)| <= c / p^2 for every p > P.
EulerProductValue odd_prime_product(i64 P, double prefactor, double c,
                                    const std::function<double(double)>& log_factor);

// Log-factor constants. The sharp limits of p^2 |log f(p)| are 1, 4 and 2
// (approached from below); each carries a factor 2 of slack.
inline constexpr double kTailC = 2.0;
inline constexpr double kTailD = 8.0;
inline constexpr double kTailEta = 8.0;
inline constexpr double kTail69 = 4.0;

inline constexpr i64 kDefaultEulerCutoff = 10'000'000;

// C = 1/3 prod_{p>=3} (1 - 1/(p(p+1))).
EulerProductValue const_C(i64 P);
// D = 1/8 prod_{p>=3} (1 - 1/p) h(p).
EulerProductValue const_D(i64 P);
// C / D as one product, so the truncation errors cancel prime by prime.
EulerProductValue ratio_C_over_D(i64 P);

// eta(1; l) for odd l: local factor 1/8 at 2, (p-1)/(p+1) for p | l1,
// (p-1)/p for p | l2 but not l1, and the generic factor otherwise.
EulerProductValue eta_at_one(i64 l, i64 P);

// Generic local factor of eta(s; l) at s = 1, written in the expanded form
// 1 - 4(1 - 1/p)/(p(p+1)) + 1/(p(p+1)) - 1/p^2 - 1/(p^3(p+1)), minus 1.
double eta_generic_minus_one(double p);

}  // namespace qlf
