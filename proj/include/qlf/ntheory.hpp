#pragma once
// Exact arithmetic kernels: Kronecker/Jacobi symbols, square-free sieving,
// divisor-type functions and the multiplicative weights used by the
// mollifier and moment constants.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qlf {

using i64 = std::int64_t;
using Rational = boost::multiprecision::cpp_rational;

// Odd, positive, square-free d. 8d is then a fundamental discriminant and
// n -> (8d/n) is a primitive even character of conductor 8d.
class OddSquarefree {
 public:
  // Throws DomainError unless d >= 1 is odd and square-free.
  static OddSquarefree make(i64 d);
  i64 value() const noexcept { return d_; }
  friend bool operator==(OddSquarefree, OddSquarefree) = default;

 private:
  explicit OddSquarefree(i64 d) : d_(d) {}
  friend std::vector<OddSquarefree> sieve_odd_squarefree(i64, i64, std::size_t);
  i64 d_;
};

struct PrimePower {
  i64 p;
  int e;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// n = prod p^e with primes strictly increasing.
struct FactoredInteger {
  i64 n = 1;
  std::vector<PrimePower> factors;

  bool is_squarefree() const;
  // Canonical debug form "p1^e1 * p2^e2" ("1" for n = 1).
  std::string str() const;
};

FactoredInteger factor(i64 n);

// Kronecker symbol (a/n) for n >= 1 and any integer a.
int kronecker(i64 a, i64 n);
// Jacobi symbol for odd n >= 1.
int jacobi(i64 a, i64 n);

// Default memory budget for the square-free sieve (bytes of marking table).
inline constexpr std::size_t kDefaultSieveBudget = std::size_t{1} << 30;

// All odd square-free d in [lo, hi], ascending. Throws ResourceError if the
// range exceeds the marking budget.
std::vector<OddSquarefree> sieve_odd_squarefree(i64 lo, i64 hi,
                                                std::size_t budget_bytes = kDefaultSieveBudget);

int mobius(i64 n);
int mobius(const FactoredInteger& f);
// Coefficient of n^{-s} in zeta(s)^j, j in {1, 2, 3}.
i64 divisor_j(int j, i64 n);
i64 divisor_j(int j, const FactoredInteger& f);
i64 sigma(i64 n);
i64 sigma(const FactoredInteger& f);
i64 phi(i64 n);
i64 phi(const FactoredInteger& f);

// Generalized von Mangoldt function, as the Mobius convolution mu * log^j.
double lambda_j(int j, i64 n);

// l = l1 * l2^2 with l1 square-free; l must be odd.
struct SquarefreeSplit {
  i64 l1;
  i64 l2;
};
SquarefreeSplit split_l1_l2(i64 l);

// M_Y(d) = sum_{l^2 | d, l <= Y} mu(l) and R_Y(d) = sum_{l^2 | d, l > Y} mu(l).
i64 my_weight(i64 d, i64 Y);
i64 ry_weight(i64 d, i64 Y);

// Multiplicative weights on odd arguments.
//   g(l)  = prod_{p | l} ((p+1)/p)(1 - 1/(p(p+1)))
//   h(n)  = prod_{p^k || n} (1 + 1/p + 1/p^2 - 4/(p(p+1)))
//   H(g)  = prod_{p | g} (1 - 4p/(h(p)(p+1)^2))          (square-free only)
//   g1(g) = prod_{p | g} (1/g(p) - 2p/(h(p)(p+1)))        (square-free only)
Rational g_exact(i64 l);
Rational h_exact(i64 n);
Rational H_exact(i64 gamma);
Rational g1_exact(i64 gamma);

double mult_g(i64 l);
double mult_h(i64 n);
double mult_H(i64 gamma);
double mult_g1(i64 gamma);

// Single-prime factors in double precision (p odd prime).
double g_prime(double p);
double h_prime(double p);
double H_prime(double p);
double g1_prime(double p);

// Primes up to a limit (odd-only Eratosthenes). Immutable once built.
class PrimeTable {
 public:
  explicit PrimeTable(i64 limit);
  i64 limit() const noexcept { return limit_; }
  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

 private:
  i64 limit_;
  std::vector<std::uint32_t> primes_;
};

// Shared table covering at least [2, limit]; built once per process and
// reused by later calls with smaller limits.
std::shared_ptr<const PrimeTable> primes_up_to(i64 limit);

// Smallest-prime-factor table on [0, limit] (spf[0] = spf[1] = 0).
class SpfTable {
 public:
  explicit SpfTable(i64 limit);
  i64 limit() const noexcept { return static_cast<i64>(spf_.size()) - 1; }
  std::uint32_t operator[](i64 n) const { return spf_[static_cast<std::size_t>(n)]; }
  std::span<const std::uint32_t> primes() const { return primes_; }

 private:
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

// d_j(n) for all n <= limit, j in {1, 2, 3}.
std::vector<std::uint32_t> divisor_table(int j, const SpfTable& spf);

}  // namespace qlf
