#pragma once
// Test functions supported in (1, 2), their Mellin data and the
// cosine-plus-sine transform used on the dual side of Poisson summation.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "qlf/jet.hpp"

namespace qlf {

enum class WeightKind { standard_bump, plateau };

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

class SmoothWeight {
 public:
  // exp(4 - 1/(t-1) - 1/(2-t)) on (1, 2); peak value 1 at t = 3/2.
  static SmoothWeight standard_bump();
  // 1 on [1 + 1/Z, 2 - 1/Z] with smooth ramps of width 1/Z; Z >= 4.
  static SmoothWeight plateau(double Z);

  WeightKind kind() const noexcept { return kind_; }
  double Z() const noexcept { return Z_; }
  double ramp_width() const noexcept { return w_; }
  std::string name() const;

  double eval(double t) const;
  // nu-th derivative, nu in [0, 4]; UnsupportedOrder otherwise.
  double deriv(double t, int nu) const;
  Jet jet(double t) const;

  // Integral of Phi(y) log^j(y), j in [0, 6], with its quadrature error estimate.
  double mellin_moment(int j) const;
  double mellin_error(int j) const;
  // Phi-hat(0) = Phi-check(0) = integral of Phi.
  double integral() const { return mellin_moment(0); }
  // max_{0 <= i <= nu} integral |Phi^(i)|, nu in [0, 4].
  double deriv_norm(int nu) const;

  // Points in (1, 2) where Phi is not analytic (plateau joins); used to split quadrature.
  std::vector<double> breakpoints() const;

 private:
  SmoothWeight(WeightKind kind, double Z);
  void compute_moments();

  WeightKind kind_;
  double Z_ = 0.0;
  double w_ = 0.0;
  std::array<double, 7> moments_{};
  std::array<double, 7> moment_err_{};
  std::array<double, 5> norms_{};
};

double weight_eval(const SmoothWeight& W, double t);
double weight_deriv(const SmoothWeight& W, double t, int nu);

// The smooth step psi on [0, 1]: 0 below, 1 above, psi(x) + psi(1-x) = 1.
Jet ramp_jet(double x);
double ramp(double x);

// Integral over [a, b] of (cos + sin)(2 pi xi x) F(x) by Gauss-Kronrod 21 on
// panels no longer than one period, split further at `breaks`.
QuadResult tilde_transform(const std::function<double(double)>& F, double xi, double a = 1.0, double b = 2.0,
                           const std::vector<double>& breaks = {}, double tol = 1e-10);
// Transform of a weight: closed form through the universal ramp integral for
// plateau weights, adaptive quadrature otherwise.
double tilde_transform(const SmoothWeight& W, double xi);
QuadResult tilde_transform_adaptive(const SmoothWeight& W, double xi, double tol = 1e-10);

// B(om) = integral_0^1 psi'(t) cos(om (t - 1/2)) dt, tabulated on [0, 900].
double ramp_cosine_integral(double om);
// max_{om' >= om} |B(om')|, an envelope for choosing truncation points.
double ramp_cosine_envelope(double om);

}  // namespace qlf
