#include "qlf/ntheory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <sstream>

#include "qlf/errors.hpp"

namespace qlf {

namespace {

void require_positive(i64 n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + ": argument must be >= 1, got " + std::to_string(n));
}

void require_odd(i64 n, const char* what) {
  require_positive(n, what);
  if (n % 2 == 0) throw DomainError(std::string(what) + ": argument must be odd, got " + std::to_string(n));
}

}  // namespace

OddSquarefree OddSquarefree::make(i64 d) {
  require_odd(d, "OddSquarefree");
  if (mobius(d) == 0) throw DomainError("OddSquarefree: " + std::to_string(d) + " is not square-free");
  return OddSquarefree(d);
}

bool FactoredInteger::is_squarefree() const {
  return std::all_of(factors.begin(), factors.end(), [](const PrimePower& f) { return f.e == 1; });
}

std::string FactoredInteger::str() const {
  if (factors.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) os << " * ";
    os << factors[i].p << '^' << factors[i].e;
  }
  return os.str();
}

FactoredInteger factor(i64 n) {
  require_positive(n, "factor");
  FactoredInteger f;
  f.n = n;
  i64 m = n;
  auto take = [&](i64 p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) f.factors.push_back({p, e});
  };
  take(2);
  take(3);
  for (i64 p = 5; p * p <= m; p += 6) {
    take(p);
    take(p + 2);
  }
  if (m > 1) f.factors.push_back({m, 1});
  return f;
}

int jacobi(i64 a, i64 n) {
  if (n < 1 || n % 2 == 0) throw DomainError("jacobi: modulus must be odd and positive");
  std::uint64_t m = static_cast<std::uint64_t>(n);
  i64 r = a % n;
  if (r < 0) r += n;
  std::uint64_t x = static_cast<std::uint64_t>(r);
  int t = 1;
  while (x != 0) {
    int z = std::countr_zero(x);
    x >>= z;
    if ((z & 1) && ((m & 7) == 3 || (m & 7) == 5)) t = -t;
    if ((x & 3) == 3 && (m & 3) == 3) t = -t;
    std::swap(x, m);
    x %= m;
  }
  return m == 1 ? t : 0;
}

int kronecker(i64 a, i64 n) {
  require_positive(n, "kronecker");
  int v = std::countr_zero(static_cast<std::uint64_t>(n));
  int t = 1;
  if (v > 0) {
    if (a % 2 == 0) return 0;
    i64 r = ((a % 8) + 8) % 8;
    int k2 = (r == 1 || r == 7) ? 1 : -1;
    if (v & 1) t = k2;
    n >>= v;
  }
  return t * jacobi(a, n);
}

std::vector<OddSquarefree> sieve_odd_squarefree(i64 lo, i64 hi, std::size_t budget_bytes) {
  if (lo < 1 || hi < lo) throw DomainError("sieve_odd_squarefree: need 1 <= lo <= hi");
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  if (span > budget_bytes) {
    throw ResourceError("sieve_odd_squarefree: range of " + std::to_string(span) +
                            " integers exceeds the sieve budget of " + std::to_string(budget_bytes) + " bytes",
                        "QC_SIEVE_BYTES");
  }
  const i64 root = static_cast<i64>(std::sqrt(static_cast<double>(hi))) + 1;
  auto primes = primes_up_to(std::max<i64>(root, 3));

  std::vector<OddSquarefree> out;
  out.reserve(static_cast<std::size_t>(static_cast<double>(span) * 0.41) + 16);

  constexpr i64 kSegment = i64{1} << 18;
  std::vector<std::uint8_t> mark;
  for (i64 seg_lo = lo; seg_lo <= hi; seg_lo += kSegment) {
    const i64 seg_hi = std::min(hi, seg_lo + kSegment - 1);
    mark.assign(static_cast<std::size_t>(seg_hi - seg_lo + 1), 1);
    for (std::uint32_t p32 : primes->primes()) {
      const i64 p = p32;
      if (p == 2) continue;
      const i64 q = p * p;
      if (q > seg_hi) break;
      i64 start = ((seg_lo + q - 1) / q) * q;
      for (i64 m = start; m <= seg_hi; m += q) mark[static_cast<std::size_t>(m - seg_lo)] = 0;
    }
    for (i64 d = seg_lo | 1; d <= seg_hi; d += 2) {
      if (mark[static_cast<std::size_t>(d - seg_lo)]) out.push_back(OddSquarefree(d));
    }
  }
  return out;
}

int mobius(const FactoredInteger& f) {
  if (!f.is_squarefree()) return 0;
  return (f.factors.size() % 2) ? -1 : 1;
}

int mobius(i64 n) { return mobius(factor(n)); }

i64 divisor_j(int j, const FactoredInteger& f) {
  if (j < 1 || j > 3) throw DomainError("divisor_j: j must be 1, 2 or 3");
  i64 r = 1;
  for (const auto& pe : f.factors) {
    const i64 e = pe.e;
    if (j == 2) r *= e + 1;
    if (j == 3) r *= (e + 1) * (e + 2) / 2;
  }
  return r;
}

i64 divisor_j(int j, i64 n) { return divisor_j(j, factor(n)); }

i64 sigma(const FactoredInteger& f) {
  i64 r = 1;
  for (const auto& pe : f.factors) {
    i64 s = 1, q = 1;
    for (int k = 0; k < pe.e; ++k) {
      q *= pe.p;
      s += q;
    }
    r *= s;
  }
  return r;
}

i64 sigma(i64 n) { return sigma(factor(n)); }

i64 phi(const FactoredInteger& f) {
  i64 r = 1;
  for (const auto& pe : f.factors) {
    r *= pe.p - 1;
    for (int k = 1; k < pe.e; ++k) r *= pe.p;
  }
  return r;
}

i64 phi(i64 n) { return phi(factor(n)); }

double lambda_j(int j, i64 n) {
  if (j < 0) throw DomainError("lambda_j: j must be >= 0");
  const FactoredInteger f = factor(n);
  const std::size_t k = f.factors.size();
  // Only square-free divisors e contribute to mu * log^j.
  double sum = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    i64 e = 1;
    int sign = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) {
        e *= f.factors[i].p;
        sign = -sign;
      }
    }
    const double lg = std::log(static_cast<double>(n / e));
    sum += sign * std::pow(lg, j);
  }
  return sum;
}

SquarefreeSplit split_l1_l2(i64 l) {
  require_odd(l, "split_l1_l2");
  SquarefreeSplit s{1, 1};
  for (const auto& pe : factor(l).factors) {
    if (pe.e % 2) s.l1 *= pe.p;
    for (int k = 0; k < pe.e / 2; ++k) s.l2 *= pe.p;
  }
  return s;
}

i64 my_weight(i64 d, i64 Y) {
  require_positive(d, "my_weight");
  i64 s = 0;
  for (i64 l = 1; l <= Y && l * l <= d; ++l) {
    if (d % (l * l) == 0) s += mobius(l);
  }
  return s;
}

i64 ry_weight(i64 d, i64 Y) {
  require_positive(d, "ry_weight");
  i64 s = 0;
  for (i64 l = std::max<i64>(Y + 1, 1); l * l <= d; ++l) {
    if (d % (l * l) == 0) s += mobius(l);
  }
  return s;
}

namespace {

Rational g_p(const Rational& p) { return (p * p + p - 1) / (p * p); }
Rational h_p(const Rational& p) { return 1 + 1 / p + 1 / (p * p) - 4 / (p * (p + 1)); }
Rational H_p(const Rational& p) { return 1 - 4 * p / (h_p(p) * (p + 1) * (p + 1)); }
Rational g1_p(const Rational& p) { return 1 / g_p(p) - 2 * p / (h_p(p) * (p + 1)); }

template <class F>
Rational over_primes(i64 n, const char* what, bool squarefree_only, F&& f) {
  require_odd(n, what);
  const FactoredInteger fi = factor(n);
  if (squarefree_only && !fi.is_squarefree()) {
    throw DomainError(std::string(what) + ": argument " + std::to_string(n) + " is not square-free");
  }
  Rational r = 1;
  for (const auto& pe : fi.factors) r *= f(Rational(pe.p));
  return r;
}

template <class F>
double over_primes_double(i64 n, const char* what, bool squarefree_only, F&& f) {
  require_odd(n, what);
  const FactoredInteger fi = factor(n);
  if (squarefree_only && !fi.is_squarefree()) {
    throw DomainError(std::string(what) + ": argument " + std::to_string(n) + " is not square-free");
  }
  double r = 1.0;
  for (const auto& pe : fi.factors) r *= f(static_cast<double>(pe.p));
  return r;
}

}  // namespace

Rational g_exact(i64 l) { return over_primes(l, "g", false, g_p); }
Rational h_exact(i64 n) { return over_primes(n, "h", false, h_p); }
Rational H_exact(i64 gamma) { return over_primes(gamma, "H", true, H_p); }
Rational g1_exact(i64 gamma) { return over_primes(gamma, "g1", true, g1_p); }

double g_prime(double p) { return (p * p + p - 1.0) / (p * p); }
double h_prime(double p) { return 1.0 + 1.0 / p + 1.0 / (p * p) - 4.0 / (p * (p + 1.0)); }
double H_prime(double p) { return 1.0 - 4.0 * p / (h_prime(p) * (p + 1.0) * (p + 1.0)); }
double g1_prime(double p) { return 1.0 / g_prime(p) - 2.0 * p / (h_prime(p) * (p + 1.0)); }

double mult_g(i64 l) { return over_primes_double(l, "g", false, g_prime); }
double mult_h(i64 n) { return over_primes_double(n, "h", false, h_prime); }
double mult_H(i64 gamma) { return over_primes_double(gamma, "H", true, H_prime); }
double mult_g1(i64 gamma) { return over_primes_double(gamma, "g1", true, g1_prime); }

PrimeTable::PrimeTable(i64 limit) : limit_(limit) {
  if (limit < 2) return;
  primes_.push_back(2);
  const i64 half = (limit - 1) / 2;  // index i <-> 2i+1
  std::vector<std::uint8_t> composite(static_cast<std::size_t>(half + 1), 0);
  for (i64 i = 1; i <= half; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    const i64 p = 2 * i + 1;
    primes_.push_back(static_cast<std::uint32_t>(p));
    for (i64 m = p * p; m <= limit; m += 2 * p) composite[static_cast<std::size_t>(m / 2)] = 1;
  }
}

std::shared_ptr<const PrimeTable> primes_up_to(i64 limit) {
  static std::mutex mu;
  static std::shared_ptr<const PrimeTable> cached;
  std::lock_guard lock(mu);
  if (!cached || cached->limit() < limit) {
    cached = std::make_shared<const PrimeTable>(std::max<i64>(limit, 1000));
  }
  return cached;
}

SpfTable::SpfTable(i64 limit) : spf_(static_cast<std::size_t>(std::max<i64>(limit, 1) + 1), 0) {
  const auto n = static_cast<std::uint32_t>(spf_.size() - 1);
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes_.push_back(i);
    }
    for (std::uint32_t p : primes_) {
      const std::uint64_t m = std::uint64_t{p} * i;
      if (p > spf_[i] || m > n) break;
      spf_[m] = p;
    }
  }
}

std::vector<std::uint32_t> divisor_table(int j, const SpfTable& spf) {
  if (j < 1 || j > 3) throw DomainError("divisor_table: j must be 1, 2 or 3");
  const i64 n = spf.limit();
  std::vector<std::uint32_t> dj(static_cast<std::size_t>(n + 1), 1);
  if (j == 1) return dj;
  for (i64 k = 2; k <= n; ++k) {
    const i64 p = spf[k];
    i64 m = k;
    std::uint32_t e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    const std::uint32_t local = (j == 2) ? e + 1 : (e + 1) * (e + 2) / 2;
    dj[static_cast<std::size_t>(k)] = dj[static_cast<std::size_t>(m)] * local;
  }
  return dj;
}

}  // namespace qlf
