#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qlf/errors.hpp"
#include "qlf/euler.hpp"
#include "qlf/ntheory.hpp"

using namespace qlf;

TEST_CASE("kronecker symbol values") {
  CHECK(kronecker(8, 1) == 1);
  CHECK(kronecker(8, 3) == -1);
  CHECK(kronecker(8, 7) == 1);
  CHECK(kronecker(9, 15) == 0);
  CHECK(kronecker(9, 7) == 1);
  CHECK(kronecker(8, 2) == 0);
  CHECK(kronecker(5, 2) == -1);  // 5 = 5 mod 8
  CHECK(kronecker(-3, 2) == -1);
  CHECK(kronecker(17, 2) == 1);
}

TEST_CASE("kronecker matches jacobi on odd moduli and brute-force residues on primes") {
  for (i64 p : {3, 5, 7, 11, 13, 101, 997}) {
    std::vector<int> is_sq(static_cast<std::size_t>(p), 0);
    for (i64 x = 1; x < p; ++x) is_sq[static_cast<std::size_t>(x * x % p)] = 1;
    for (i64 a = -50; a <= 50; ++a) {
      const i64 r = ((a % p) + p) % p;
      const int expect = r == 0 ? 0 : is_sq[static_cast<std::size_t>(r)] ? 1 : -1;
      CHECK(kronecker(a, p) == expect);
      CHECK(jacobi(a, p) == expect);
    }
  }
}

TEST_CASE("kronecker is completely multiplicative in the bottom argument") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<i64> A(-100000, 100000), N(0, 20000);
  for (int it = 0; it < 5000; ++it) {
    const i64 a = A(rng), m = 2 * N(rng) + 1, n = 2 * N(rng) + 1;
    CHECK(kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n));
  }
  // even bottoms too, for top 8d
  for (i64 d = 1; d < 200; d += 2)
    for (i64 m = 1; m < 60; ++m)
      for (i64 n = 1; n < 60; n += 7) CHECK(kronecker(8 * d, m * n) == kronecker(8 * d, m) * kronecker(8 * d, n));
}

TEST_CASE("square-free sieve") {
  auto vals = [](i64 lo, i64 hi) {
    std::vector<i64> v;
    for (auto d : sieve_odd_squarefree(lo, hi)) v.push_back(d.value());
    return v;
  };
  CHECK(vals(1, 10) == std::vector<i64>{1, 3, 5, 7});
  CHECK(vals(1, 1) == std::vector<i64>{1});
  CHECK(vals(8, 9).empty());
  // segment boundaries
  const auto a = vals(1, 600000);
  std::vector<i64> brute;
  for (i64 d = 1; d <= 600000; d += 2)
    if (mobius(d) != 0) brute.push_back(d);
  CHECK(a == brute);
  const auto n = static_cast<double>(sieve_odd_squarefree(1, 1000000).size());
  CHECK(std::abs(n / 1e6 - 4.0 / (M_PI * M_PI)) < 1e-3);
  CHECK_THROWS_AS(sieve_odd_squarefree(1, 1000000, 1000), ResourceError);
  CHECK_THROWS_AS(sieve_odd_squarefree(5, 4), DomainError);
  CHECK_THROWS_AS(OddSquarefree::make(9), DomainError);
  CHECK_THROWS_AS(OddSquarefree::make(2), DomainError);
}

TEST_CASE("factorization") {
  CHECK(factor(1).str() == "1");
  CHECK(factor(360).str() == "2^3 * 3^2 * 5^1");
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<i64> U(1, 1'000'000'000'000LL);
  for (int it = 0; it < 200; ++it) {
    const i64 n = U(rng);
    const FactoredInteger f = factor(n);
    i64 prod = 1, last = 1;
    for (const auto& pe : f.factors) {
      CHECK(pe.p > last);
      CHECK(pe.e >= 1);
      last = pe.p;
      for (int e = 0; e < pe.e; ++e) prod *= pe.p;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("arithmetic functions") {
  CHECK(divisor_j(2, 6) == 4);
  CHECK(divisor_j(3, 4) == 6);
  CHECK(mobius(1) == 1);
  for (int j = 1; j <= 3; ++j) CHECK(divisor_j(j, 1) == 1);
  CHECK(sigma(1) == 1);
  CHECK(phi(1) == 1);
  CHECK(sigma(6) == 12);
  CHECK(phi(9) == 6);
  CHECK(mobius(30) == -1);
  CHECK(mobius(12) == 0);
  // d_3 = 1 * d_2 by brute force
  for (i64 n = 1; n <= 500; ++n) {
    i64 s = 0;
    for (i64 e = 1; e <= n; ++e)
      if (n % e == 0) s += divisor_j(2, e);
    CHECK(divisor_j(3, n) == s);
  }
}

TEST_CASE("generalized von Mangoldt") {
  CHECK(lambda_j(0, 1) == 1.0);
  CHECK(lambda_j(0, 2) == 0.0);
  CHECK(lambda_j(1, 8) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(lambda_j(2, 12) == doctest::Approx(2 * std::log(2.0) * std::log(3.0)).epsilon(1e-12));
  CHECK(std::abs(lambda_j(2, 30)) < 1e-12);
}

TEST_CASE("log^j is the divisor sum of Lambda_j") {
  double worst = 0.0;
  for (int j = 0; j <= 3; ++j)
    for (i64 n = 1; n <= 10000; ++n) {
      double s = 0.0;
      for (i64 e = 1; e * e <= n; ++e) {
        if (n % e) continue;
        s += lambda_j(j, e);
        if (e * e != n) s += lambda_j(j, n / e);
      }
      const double target = j == 0 ? 1.0 : std::pow(std::log(static_cast<double>(n)), j);
      worst = std::max(worst, std::abs(s - target));
      const FactoredInteger f = factor(n);
      if (static_cast<int>(f.factors.size()) > j) CHECK(std::abs(lambda_j(j, n)) < 1e-9);
      if (j >= 1)
        CHECK(lambda_j(j, n) <= std::pow(std::log(static_cast<double>(n)), j) * divisor_j(2, f) + 1e-9);
    }
  CHECK(worst < 1e-9);
}

TEST_CASE("l = l1 l2^2 split") {
  CHECK(split_l1_l2(45).l1 == 5);
  CHECK(split_l1_l2(45).l2 == 3);
  CHECK(split_l1_l2(1).l1 == 1);
  CHECK(split_l1_l2(105).l1 == 105);
  CHECK_THROWS_AS(split_l1_l2(4), DomainError);
  for (i64 l = 1; l < 5000; l += 2) {
    const auto s = split_l1_l2(l);
    CHECK(s.l1 * s.l2 * s.l2 == l);
    CHECK(mobius(s.l1) != 0);
  }
}

TEST_CASE("M_Y + R_Y = mu^2") {
  CHECK(my_weight(9, 1) == 1);
  CHECK(ry_weight(9, 1) == -1);
  CHECK(my_weight(9, 3) == 0);
  for (i64 d = 1; d < 3000; d += 2)
    for (i64 Y : {1, 2, 3, 5, 10, 50}) {
      CHECK(my_weight(d, Y) + ry_weight(d, Y) == mobius(d) * mobius(d));
      if (mobius(d) != 0) CHECK(my_weight(d, Y) == 1);
    }
}

TEST_CASE("exact multiplicative functions g, h, H, g1") {
  CHECK(h_exact(3) == Rational(10, 9));
  CHECK(h_exact(9) == Rational(10, 9));
  CHECK(g_exact(1) == 1);
  CHECK(h_exact(1) == 1);
  CHECK(H_exact(1) == 1);
  CHECK(g1_exact(1) == 1);
  CHECK(g_exact(3) == Rational(11, 9));
  CHECK(H_exact(3) == Rational(13, 40));
  CHECK(g1_exact(3) == Rational(-117, 220));
  CHECK_THROWS_AS(H_exact(9), DomainError);
  CHECK_THROWS_AS(g1_exact(9), DomainError);
  CHECK_THROWS_AS(h_exact(4), DomainError);
  for (i64 n : {1, 3, 15, 105, 1155, 9, 45}) {
    CHECK(mult_h(n) == doctest::Approx(h_exact(n).convert_to<double>()).epsilon(1e-14));
    CHECK(mult_g(n) == doctest::Approx(g_exact(n).convert_to<double>()).epsilon(1e-14));
  }
  for (i64 n : {1, 3, 15, 105, 1155}) {
    CHECK(mult_H(n) == doctest::Approx(H_exact(n).convert_to<double>()).epsilon(1e-14));
    CHECK(mult_g1(n) == doctest::Approx(g1_exact(n).convert_to<double>()).epsilon(1e-14));
  }
}

TEST_CASE("Euler products C and D") {
  CHECK(const_C(3).value == doctest::Approx(11.0 / 36).epsilon(1e-15));
  CHECK(const_D(3).value == doctest::Approx(5.0 / 54).epsilon(1e-15));
  CHECK_THROWS_AS(const_C(2), DomainError);
  const auto C = const_C(kDefaultEulerCutoff), D = const_D(kDefaultEulerCutoff);
  CHECK(C.tail_bound <= 1e-6);
  CHECK(D.tail_bound <= 1e-6);
  // doubling P moves the value by less than the tail bound, and the interval shrinks
  for (i64 P : {1000, 100000}) {
    for (auto f : {const_C, const_D}) {
      const auto a = f(P), b = f(2 * P);
      CHECK(std::abs(a.value - b.value) <= a.tail_bound);
      CHECK(b.tail_bound < a.tail_bound);
      CHECK(b.lo() >= a.lo() - 1e-15);
      CHECK(b.hi() <= a.hi() + 1e-15);
    }
  }
  CHECK(ratio_C_over_D(kDefaultEulerCutoff).value == doctest::Approx(C.value / D.value).epsilon(1e-12));
}

TEST_CASE("Euler factors are 1 + O(1/p^2)") {
  auto primes = primes_up_to(10000);
  double worst_c = 0, worst_d = 0, worst_eta = 0;
  for (auto p32 : primes->primes()) {
    if (p32 == 2) continue;
    const double p = p32;
    worst_c = std::max(worst_c, p * p * std::abs(std::log1p(-1.0 / (p * (p + 1)))));
    worst_d = std::max(worst_d, p * p * std::abs(std::log((1 - 1 / p) * h_prime(p))));
    worst_eta = std::max(worst_eta, p * p * std::abs(std::log1p(eta_generic_minus_one(p))));
  }
  CHECK(worst_c <= kTailC);
  CHECK(worst_d <= kTailD);
  CHECK(worst_eta <= kTailEta);
}

TEST_CASE("eta(1; l) identity") {
  const auto D = const_D(kDefaultEulerCutoff);
  for (i64 l : {1, 3, 5, 9, 15, 45, 105, 225}) {
    const auto e = eta_at_one(l, kDefaultEulerCutoff);
    const auto s = split_l1_l2(l);
    const double scale = static_cast<double>(sigma(s.l1)) * mult_h(l) / static_cast<double>(s.l1);
    CHECK(std::abs(e.value * scale - D.value) <= e.tail_bound * scale + D.tail_bound);
  }
  CHECK(eta_at_one(9, kDefaultEulerCutoff).value == doctest::Approx(0.9 * D.value).epsilon(1e-6));
  CHECK_THROWS_AS(eta_at_one(2, 1000), DomainError);
  // a prime of l above the cutoff still takes its special factor
  const i64 big = 1000003;
  const auto lo = eta_at_one(big, 1000), hi = eta_at_one(big, 2000000);
  CHECK(std::abs(lo.value - hi.value) <= lo.tail_bound);
}
