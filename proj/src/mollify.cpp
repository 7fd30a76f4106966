#include "qlf/mollify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlf/errors.hpp"
#include "qlf/kahan.hpp"
#include "qlf/sweep.hpp"

namespace qlf {

namespace {

bool odd_squarefree(i64 n) { return n >= 1 && n % 2 == 1 && mobius(n) != 0; }

}  // namespace

double transfer_weight(i64 a) {
  const FactoredInteger f = factor(a);
  return static_cast<double>(a) * static_cast<double>(divisor_j(2, f)) / (mult_h(a) * static_cast<double>(sigma(f)));
}

double xi_optimal(i64 gamma, double X, double M, double c_over_d) {
  if (!odd_squarefree(gamma)) throw DomainError("xi_optimal: " + std::to_string(gamma) + " is not odd square-free");
  if (static_cast<double>(gamma) > M) throw DomainError("xi_optimal: gamma exceeds M");
  const double lm = std::log(M);
  const double g = static_cast<double>(gamma);
  return c_over_d / (lm * lm * lm) * mult_h(gamma) * mult_g1(gamma) / (g * mult_H(gamma)) *
         std::log(std::sqrt(X) * g);
}

CoeffMap lambda_from_xi(const CoeffMap& xi) {
  const auto M = static_cast<i64>(xi.size()) - 1;
  CoeffMap out(xi.size(), 0.0);
  for (i64 l = 1; l <= M; l += 2) {
    CompensatedSum s;
    for (i64 a = 1; a * l <= M; a += 2) {
      const double x = xi[static_cast<std::size_t>(a * l)];
      if (x == 0.0) continue;
      const int mu = mobius(a);
      if (mu == 0) continue;
      s.add(mu * transfer_weight(a) * x);
    }
    out[static_cast<std::size_t>(l)] = s.value();
  }
  return out;
}

CoeffMap xi_from_lambda(const CoeffMap& lambda) {
  const auto M = static_cast<i64>(lambda.size()) - 1;
  CoeffMap out(lambda.size(), 0.0);
  for (i64 g = 1; g <= M; g += 2) {
    CompensatedSum s;
    for (i64 a = 1; a * g <= M; a += 2) {
      const double x = lambda[static_cast<std::size_t>(a * g)];
      if (x == 0.0) continue;
      s.add(transfer_weight(a) * x);
    }
    out[static_cast<std::size_t>(g)] = s.value();
  }
  return out;
}

MollifierSpec make_mollifier(double X, double theta, i64 euler_cutoff) {
  if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("mollifier: theta must lie in (0, 1]");
  if (!(X > 1.0)) throw DomainError("mollifier: X must exceed 1");
  MollifierSpec s;
  s.X = X;
  s.theta = theta;
  s.M = std::pow(std::sqrt(X), theta);
  s.c_over_d = ratio_C_over_D(euler_cutoff).value;
  const auto Mf = static_cast<i64>(std::floor(s.M + 1e-9));
  s.xi.assign(static_cast<std::size_t>(std::max<i64>(Mf, 1) + 1), 0.0);
  if (s.M > 1.0) {
    for (i64 g = 1; g <= Mf; g += 2)
      if (odd_squarefree(g)) s.xi[static_cast<std::size_t>(g)] = xi_optimal(g, X, s.M, s.c_over_d);
  } else {
    s.xi[1] = 1.0;  // log M = 0: keep the trivial mollifier
  }
  s.lambda = lambda_from_xi(s.xi);
  return s;
}

double mollifier_value(const MollifierSpec& spec, OddSquarefree d) {
  CompensatedSum s;
  const i64 top = 8 * d.value();
  for (i64 l = 1; l <= spec.length(); l += 2) {
    const double c = spec.lambda[static_cast<std::size_t>(l)];
    if (c == 0.0) continue;
    const int chi = kronecker(top, l);
    if (chi == 0) continue;
    s.add(chi * c * std::sqrt(static_cast<double>(l)));
  }
  return s.value();
}

Rational predicted_first_coeff(const Rational& theta) {
  if (theta <= 0 || theta > 1) throw DomainError("predicted moments: theta must lie in (0, 1]");
  const Rational u = 1 / theta;
  return Rational(2, 9) * ((1 + u) * (1 + u) * (1 + u) - u * u * u);
}

Rational predicted_second_coeff(const Rational& theta) {
  if (theta <= 0 || theta > 1) throw DomainError("predicted moments: theta must lie in (0, 1]");
  const Rational u = 1 / theta;
  const Rational u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
  return Rational(4, 81) + Rational(8, 27) * u + Rational(20, 27) * u2 + Rational(76, 81) * u3 +
         Rational(16, 27) * u4 + Rational(4, 27) * u5;
}

Rational predicted_proportion_exact(const Rational& theta) {
  if (theta <= 0 || theta > 1) throw DomainError("predicted proportion: theta must lie in (0, 1]");
  const Rational t1 = theta + 1;
  return 1 - 1 / (t1 * t1 * t1);
}

namespace {
void check_theta(double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("predicted moments: theta must lie in (0, 1]");
}
}  // namespace

double moment_unit(double phi_hat0) { return 4.0 * phi_hat0 / (std::numbers::pi * std::numbers::pi); }

double predicted_first(double theta, double phi_hat0) {
  check_theta(theta);
  const double u = 1.0 / theta;
  return 2.0 / 9.0 * ((1 + u) * (1 + u) * (1 + u) - u * u * u) * moment_unit(phi_hat0);
}

double predicted_second(double theta, double phi_hat0) {
  check_theta(theta);
  const double u = 1.0 / theta;
  const double p = 4.0 / 81 + u * (8.0 / 27 + u * (20.0 / 27 + u * (76.0 / 81 + u * (16.0 / 27 + u * (4.0 / 27)))));
  return p * moment_unit(phi_hat0);
}

double predicted_proportion(double theta) {
  check_theta(theta);
  return 1.0 - 1.0 / ((theta + 1) * (theta + 1) * (theta + 1));
}

double identity_69_factor(double p) {
  return (1.0 - 1.0 / p) * (1.0 + h_prime(p) * g1_prime(p) * g1_prime(p) / (p * H_prime(p)));
}

Identity69 identity_69(i64 P) {
  // Combine C^2, 1/D and the constant-4/9 factor prime by prime so truncation errors cancel.
  auto logf = [](double p) {
    const double c = std::log1p(-1.0 / (p * (p + 1.0)));
    const double d = std::log1p(-1.0 / (p * p * p) - 4.0 * (p - 1.0) / (p * p * (p + 1.0)));
    const double f = std::log1p(-1.0 / p) + std::log1p(h_prime(p) * g1_prime(p) * g1_prime(p) / (p * H_prime(p)));
    return 2.0 * c - d + f;
  };
  // (1/3)^2 / (1/8) * (1/2)
  Identity69 r{odd_prime_product(P, 4.0 / 9.0, 2 * kTailC + kTailD + kTail69, logf), 0.0};
  r.gap = std::abs(r.value.value - 4.0 / 9.0);
  return r;
}

MollifiedMoments mollified_sweep(const MollifierSpec& spec, const SmoothWeight& W, const LTable& table) {
  MollifiedMoments out;
  out.X = spec.X;
  const double X = spec.X;
  if (static_cast<double>(table.lo) > std::floor(X) + 1.0 || static_cast<double>(table.hi) < std::ceil(2.0 * X) - 1.0) {
    throw DomainError("mollified_sweep: central-value table does not cover (X, 2X)");
  }
  auto Phi = [&W](double t) { return W.eval(t); };
  std::vector<double> lm(table.size(), 0.0);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double x = static_cast<double>(table.d[i]) / X;
    if (x <= 1.0 || x >= 2.0) continue;
    lm[i] = table.L[i] * mollifier_value(spec, OddSquarefree::make(table.d[i]));
    ++out.count;
  }
  auto index_of = [&table](i64 d) { return static_cast<std::size_t>(std::lower_bound(table.d.begin(), table.d.end(), d) - table.d.begin()); };
  out.S1 = smoothed_sum(table, X, Phi, [&](i64 d, double) { return lm[index_of(d)]; });
  out.S2 = smoothed_sum(table, X, Phi, [&](i64 d, double) {
    const double v = lm[index_of(d)];
    return v * v;
  });
  out.density = smoothed_sum(table, X, Phi, [](i64, double) { return 1.0; });
  out.lower_bound = out.S2 > 0 ? out.S1 * out.S1 / out.S2 : 0.0;
  return out;
}

}  // namespace qlf
