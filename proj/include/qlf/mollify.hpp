#pragma once
// Mollifier M(d) = sum_{l <= M} lambda(l) sqrt(l) (8d/l): the change of
// variables lambda <-> xi, the optimal xi, closed-form moment predictions
// in theta, and empirical mollified moments.

#include <vector>

#include "qlf/euler.hpp"
#include "qlf/ntheory.hpp"
#include "qlf/smoothing.hpp"

namespace qlf {

class LTable;

// Dense coefficient map on 0..floor(M); entries off odd square-free support are 0.
using CoeffMap = std::vector<double>;

struct MollifierSpec {
  double X = 0.0;
  double theta = 0.0;
  double M = 0.0;  // (sqrt X)^theta
  double c_over_d = 0.0;
  CoeffMap xi;
  CoeffMap lambda;

  i64 length() const { return static_cast<i64>(lambda.size()) - 1; }
};

// a d(a) / (h(a) sigma(a)) for odd a.
double transfer_weight(i64 a);

// xi(gamma) = (C/(D log^3 M)) h(gamma) g1(gamma) / (gamma H(gamma)) log(sqrt(X) gamma).
double xi_optimal(i64 gamma, double X, double M, double c_over_d);

// lambda(l) = sum_a mu(a) w(a) xi(l a) and xi(g) = sum_a w(a) lambda(a g), w = transfer_weight.
CoeffMap lambda_from_xi(const CoeffMap& xi);
CoeffMap xi_from_lambda(const CoeffMap& lambda);

MollifierSpec make_mollifier(double X, double theta, i64 euler_cutoff = kDefaultEulerCutoff);

double mollifier_value(const MollifierSpec& spec, OddSquarefree d);

// Coefficients in units of K = 2 Phi-hat(0) / (3 zeta(2)).
Rational predicted_first_coeff(const Rational& theta);
Rational predicted_second_coeff(const Rational& theta);
Rational predicted_proportion_exact(const Rational& theta);
double predicted_first(double theta, double phi_hat0 = 1.0);
double predicted_second(double theta, double phi_hat0 = 1.0);
double predicted_proportion(double theta);
// 2 Phi-hat(0) / (3 zeta(2)) = 4 Phi-hat(0) / pi^2.
double moment_unit(double phi_hat0);

struct Identity69 {
  EulerProductValue value;
  double gap;  // |value - 4/9|
};
// (C^2/D)(1/2) prod_{3 <= p <= P} (1 - 1/p)(1 + h(p) g1(p)^2 / (p H(p))), as one product.
Identity69 identity_69(i64 P);
// Single local factor of the product above (diagnostic).
double identity_69_factor(double p);

struct MollifiedMoments {
  double X = 0.0;
  double S1 = 0.0;
  double S2 = 0.0;
  double lower_bound = 0.0;  // S1^2 / S2
  double density = 0.0;      // (1/X) sum mu^2(d) Phi(d/X) over odd d
  i64 count = 0;
};

// Sums over the odd square-free d in (X, 2X), using the central values in `table`.
MollifiedMoments mollified_sweep(const MollifierSpec& spec, const SmoothWeight& W, const LTable& table);

}  // namespace qlf
