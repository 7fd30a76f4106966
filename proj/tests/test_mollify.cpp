#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qlf/errors.hpp"
#include "qlf/mollify.hpp"
#include "qlf/sweep.hpp"

using namespace qlf;

namespace {
const MollifierSpec& spec1000() {
  static const MollifierSpec s = make_mollifier(1e6, 1.0);
  return s;
}
}  // namespace

TEST_CASE("optimal xi") {
  const auto& s = spec1000();
  CHECK(s.length() == 1000);
  const double lm = std::log(s.M);
  CHECK(xi_optimal(1, s.X, s.M, s.c_over_d) ==
        doctest::Approx(s.c_over_d * std::log(std::sqrt(s.X)) / (lm * lm * lm)).epsilon(1e-14));
  CHECK(xi_optimal(3, s.X, s.M, s.c_over_d) < 0.0);
  CHECK_THROWS_AS(xi_optimal(9, s.X, s.M, s.c_over_d), DomainError);
  CHECK_THROWS_AS(xi_optimal(4, s.X, s.M, s.c_over_d), DomainError);
  CHECK_THROWS_AS(xi_optimal(1001, s.X, s.M, s.c_over_d), DomainError);
  for (std::size_t l = 0; l < s.xi.size(); ++l) {
    const bool support = l % 2 == 1 && mobius(static_cast<i64>(l)) != 0;
    if (!support) {
      CHECK(s.xi[l] == 0.0);
      CHECK(s.lambda[l] == 0.0);
    }
  }
}

TEST_CASE("size constraint on xi holds with fixed K, K'") {
  // |xi(g)| <= K / (g log^2 M) prod_{p | g} (1 + K'/p)
  const double K = 10.0, Kp = 3.0;
  for (double X : {1e4, 1e6}) {
    const auto s = make_mollifier(X, 1.0);
    const double lm = std::log(s.M);
    for (std::size_t g = 1; g < s.xi.size(); g += 2) {
      if (s.xi[g] == 0.0) continue;
      double prod = 1.0;
      for (const auto& pe : factor(static_cast<i64>(g)).factors) prod *= 1.0 + Kp / static_cast<double>(pe.p);
      CHECK(std::abs(s.xi[g]) <= K / (static_cast<double>(g) * lm * lm) * prod);
    }
  }
}

TEST_CASE("lambda <-> xi are mutual inverses and linear") {
  const auto& s = spec1000();
  const CoeffMap back = xi_from_lambda(s.lambda);
  for (std::size_t g = 1; g < s.xi.size(); ++g)
    if (s.xi[g] != 0.0) CHECK(std::abs(back[g] - s.xi[g]) <= 1e-12 * std::abs(s.xi[g]));

  // linearity on a second map
  CoeffMap other(s.xi.size(), 0.0);
  for (std::size_t g = 1; g < other.size(); g += 2)
    if (mobius(static_cast<i64>(g)) != 0) other[g] = std::sin(static_cast<double>(g)) / static_cast<double>(g);
  CoeffMap mix(s.xi.size());
  for (std::size_t g = 0; g < mix.size(); ++g) mix[g] = 2.5 * s.xi[g] - 0.75 * other[g];
  const CoeffMap lm = lambda_from_xi(mix), l1 = lambda_from_xi(s.xi), l2 = lambda_from_xi(other);
  for (std::size_t g = 0; g < mix.size(); ++g)
    CHECK(std::abs(lm[g] - (2.5 * l1[g] - 0.75 * l2[g])) <= 1e-12 * (1 + std::abs(lm[g])));

  // decay of lambda
  double worst = 0.0;
  for (std::size_t l = 1; l < s.lambda.size(); ++l)
    worst = std::max(worst, std::abs(s.lambda[l]) * std::pow(static_cast<double>(l), 0.9));
  CHECK(worst < 5.0);
}

TEST_CASE("short mollifiers") {
  const auto s = make_mollifier(4.0, 1.0);  // M = 2: support {1}
  CHECK(s.length() == 2);
  CHECK(s.lambda[1] == s.xi[1]);
  for (i64 d : {1, 3, 5, 7, 11}) CHECK(mollifier_value(s, OddSquarefree::make(d)) == s.lambda[1]);
  CHECK_THROWS_AS(make_mollifier(1e4, 0.0), DomainError);
  CHECK_THROWS_AS(make_mollifier(1e4, 1.5), DomainError);
}

TEST_CASE("predictions") {
  CHECK(predicted_first_coeff(1) == Rational(14, 9));
  CHECK(predicted_second_coeff(1) == Rational(224, 81));
  CHECK(predicted_proportion_exact(1) == Rational(7, 8));
  for (int i = 1; i <= 10; ++i) {
    const Rational th(i, 10);
    // exact identity first^2 = proportion * second (in units of K)
    CHECK(predicted_first_coeff(th) * predicted_first_coeff(th) ==
          predicted_proportion_exact(th) * predicted_second_coeff(th));
    const double t = i / 10.0;
    const double K = moment_unit(1.0);
    CHECK(predicted_first(t) == doctest::Approx(predicted_first_coeff(th).convert_to<double>() * K).epsilon(1e-14));
    CHECK(std::abs(predicted_first(t) * predicted_first(t) - predicted_proportion(t) * predicted_second(t) * K) <=
          1e-12 * predicted_first(t) * predicted_first(t));
  }
  CHECK(predicted_proportion(1e-9) < 1e-8);
  CHECK_THROWS_AS(predicted_first(0.0), DomainError);
  CHECK_THROWS_AS(predicted_second(1.2), DomainError);
  CHECK_THROWS_AS(predicted_proportion_exact(Rational(3, 2)), DomainError);
}

TEST_CASE("four-ninths constant") {
  const Identity69 id = identity_69(kDefaultEulerCutoff);
  CHECK(id.gap + id.value.tail_bound <= 1e-6);
  // a single prime: (C^2/D)(1/2) f(3) with C, D truncated at 3 as well
  const double c3 = 11.0 / 36, d3 = 5.0 / 54;
  const double f3 = (2.0 / 3) * (1 + (10.0 / 9) * (117.0 / 220) * (117.0 / 220) / (3 * 13.0 / 40));
  CHECK(identity_69(3).value.value == doctest::Approx(c3 * c3 / d3 * 0.5 * f3).epsilon(1e-14));
  CHECK(identity_69_factor(3) == doctest::Approx(f3).epsilon(1e-14));
  // each factor is 1 + O(1/p^2); partial products stay positive
  for (double p : {3.0, 5.0, 7.0, 101.0, 9973.0}) {
    CHECK(identity_69_factor(p) > 0.0);
    CHECK(std::abs(identity_69_factor(p) - 1.0) * p * p <= kTail69);
  }
  double prev = INFINITY;
  for (i64 P : {1000, 2000, 4000, 8000, 16000}) {
    const Identity69 r = identity_69(P);
    CHECK(r.gap <= r.value.tail_bound);
    CHECK(r.value.tail_bound < prev);
    prev = r.value.tail_bound;
  }
}

TEST_CASE("mollified sweep") {
  const auto W = SmoothWeight::plateau(32);
  const double X = 5000;
  const LTable t = central_values(1, 10000);
  const auto s = make_mollifier(X, 0.6);
  const MollifiedMoments m = mollified_sweep(s, W, t);
  CHECK(m.S2 > 0.0);
  CHECK(m.S1 * m.S1 <= m.S2 * m.density * (1 + 1e-12));
  CHECK(m.lower_bound <= moment_unit(W.integral()) * 1.05);

  // invariance of S1^2/S2 under rescaling of lambda
  MollifierSpec scaled = s;
  for (double& v : scaled.lambda) v *= -3.7;
  const MollifiedMoments ms = mollified_sweep(scaled, W, t);
  CHECK(std::abs(ms.S1 + 3.7 * m.S1) <= 1e-12 * std::abs(m.S1) * 3.7);
  CHECK(std::abs(ms.lower_bound - m.lower_bound) <= 1e-10 * m.lower_bound);

  // lambda = delta_1 gives the plain first moment
  MollifierSpec trivial = s;
  std::fill(trivial.lambda.begin(), trivial.lambda.end(), 0.0);
  trivial.lambda[1] = 1.0;
  const MollifiedMoments mt = mollified_sweep(trivial, W, t);
  const double first = smoothed_sum(t, X, [&W](double x) { return W.eval(x); }, [](i64, double L) { return L; });
  CHECK(mt.S1 == doctest::Approx(first).epsilon(1e-14));

  CHECK_THROWS_AS(mollified_sweep(s, W, central_values(1, 3000)), DomainError);
}
