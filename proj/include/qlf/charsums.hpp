#pragma once
// Gauss-type sums G_k(n), tau_k(n) for odd n and the Poisson-summation
// identity for smoothed sums of (d/n) over odd d.

#include <complex>
#include <string>
#include <vector>

#include "qlf/ntheory.hpp"
#include "qlf/smoothing.hpp"

namespace qlf {

using cplx = std::complex<double>;

// Which branch of the prime-power table produced a local factor G_k(p^beta),
// where p^alpha || k (alpha infinite for k = 0).
enum class GaussCase {
  zero_odd,    // beta <= alpha, beta odd: 0
  phi_even,    // beta <= alpha, beta even: phi(p^beta)
  neg_palpha,  // beta = alpha + 1 even: -p^alpha
  sqrt_case,   // beta = alpha + 1 odd: (k p^-alpha / p) p^alpha sqrt(p)
  zero_high,   // beta >= alpha + 2: 0
};
std::string to_string(GaussCase c);

struct GaussWitness {
  i64 p;
  int beta;
  int alpha;  // -1 stands for infinity (k = 0)
  GaussCase which;
};

struct GaussSumValue {
  cplx value;
  std::vector<GaussWitness> witness;
  bool is_zero() const;
};

inline constexpr i64 kTauOracleLimit = 1'000'000;

// Literal sum over a mod n of (a/n) e(ak/n); parallel over residue blocks
// with the block partials added in block order.
cplx tau_brute(i64 k, i64 n);
// (1-i)/2 + (-1/n)(1+i)/2, i.e. 1 for n = 1 mod 4 and -i for n = 3 mod 4.
cplx gauss_prefactor(i64 n);
cplx gauss_from_tau(i64 k, i64 n);
// Closed form assembled multiplicatively from the prime-power table.
GaussSumValue gauss_closed(i64 k, const FactoredInteger& n);
GaussSumValue gauss_closed(i64 k, i64 n);

struct PoissonResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double xi_max = 0.0;  // transform treated as 0 beyond this frequency
  i64 terms = 0;        // number of (alpha, k) terms on the dual side
};

// Frequency beyond which |F~| stays below eps (plateau: from the ramp envelope;
// otherwise found by doubling with adaptive quadrature).
double tilde_negligible_frequency(const SmoothWeight& F, double eps = 1e-16);

// lhs = (1/X) sum_{d odd} M_Y(d) (d/n) F(d/X);
// rhs = (1/2n)(2/n) sum_{alpha <= Y, (alpha, 2n) = 1} mu(alpha)/alpha^2 sum_k (-1)^k G_k(n) F~(kX/(2 alpha^2 n)).
PoissonResult poisson_check(i64 n, double X, i64 Y, const SmoothWeight& F);

}  // namespace qlf
