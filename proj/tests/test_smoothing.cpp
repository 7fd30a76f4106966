#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include <boost/math/special_functions/gamma.hpp>

#include "qlf/errors.hpp"
#include "qlf/omega.hpp"
#include "qlf/smoothing.hpp"

using namespace qlf;

TEST_CASE("weights vanish outside (1, 2) and lie in [0, 1]") {
  for (const auto& W : {SmoothWeight::standard_bump(), SmoothWeight::plateau(10), SmoothWeight::plateau(32)}) {
    CHECK(weight_eval(W, 0.5) == 0.0);
    CHECK(weight_eval(W, 2.5) == 0.0);
    CHECK(weight_eval(W, 1.0) == 0.0);
    CHECK(weight_eval(W, 2.0) == 0.0);
    for (int i = 0; i <= 1000; ++i) {
      const double v = weight_eval(W, 1.0 + i / 1000.0);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(W.integral() > 0.0);
    CHECK(W.integral() <= 1.0);
  }
  CHECK(weight_eval(SmoothWeight::plateau(10), 1.5) == 1.0);
  CHECK(weight_eval(SmoothWeight::standard_bump(), 1.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(SmoothWeight::plateau(3.0), DomainError);
}

TEST_CASE("plateau is flat on (1 + 1/Z, 2 - 1/Z)") {
  const auto W = SmoothWeight::plateau(32);
  for (int i = 1; i < 100; ++i) {
    const double t = 1.0 + 1.0 / 32 + i * (1.0 - 2.0 / 32) / 100;
    CHECK(W.eval(t) == 1.0);
  }
}

TEST_CASE("derivatives agree with finite differences") {
  for (const auto& W : {SmoothWeight::standard_bump(), SmoothWeight::plateau(8)}) {
    for (double t : {1.02, 1.1, 1.3, 1.5, 1.77, 1.95}) {
      for (int nu = 1; nu <= 4; ++nu) {
        // fourth-order central stencil on the scale of the steepest feature
        const double h = 1e-4 * (W.kind() == WeightKind::plateau ? W.ramp_width() : 1.0);
        auto g = [&](double x) { return W.deriv(x, nu - 1); };
        const double fd = (-g(t + 2 * h) + 8 * g(t + h) - 8 * g(t - h) + g(t - 2 * h)) / (12 * h);
        const double scale = std::max(1.0, W.deriv_norm(nu));
        CHECK(std::abs(W.deriv(t, nu) - fd) <= 1e-6 * scale);
      }
      const Jet j = W.jet(t);
      for (int nu = 0; nu <= 4; ++nu) CHECK(j.derivative(nu) == doctest::Approx(W.deriv(t, nu)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(weight_deriv(W, 1.5, 5), UnsupportedOrder);
    CHECK_THROWS_AS(weight_deriv(W, 1.5, -1), UnsupportedOrder);
  }
}

TEST_CASE("Mellin moments") {
  const auto big = SmoothWeight::plateau(512);
  CHECK(std::abs(big.mellin_moment(0) - 1.0) < 4.0 / 512);
  CHECK(std::abs(big.mellin_moment(1) - (2 * std::log(2.0) - 1)) < 4.0 / 512);
  // Z -> infinity convergence of the logarithmic moments, at rate 1/Z
  for (int j = 0; j <= 6; ++j) {
    const double lim = [&] {
      // int_1^2 log^j y dy by the recurrence I_j = 2 log^j 2 - j I_{j-1}
      double I = 1.0;
      for (int k = 1; k <= j; ++k) I = 2 * std::pow(std::log(2.0), k) - k * I;
      return I;
    }();
    const double e32 = std::abs(SmoothWeight::plateau(32).mellin_moment(j) - lim);
    const double e128 = std::abs(SmoothWeight::plateau(128).mellin_moment(j) - lim);
    CHECK(e128 < e32);
    CHECK(SmoothWeight::plateau(32).mellin_error(j) <= 1e-12);
  }
  CHECK(SmoothWeight::plateau(32).integral() == doctest::Approx(1.0 - 1.0 / 32).epsilon(1e-12));
  for (int nu = 0; nu <= 4; ++nu) CHECK(std::isfinite(SmoothWeight::plateau(32).deriv_norm(nu)));
  CHECK(SmoothWeight::plateau(32).deriv_norm(1) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("tilde transform") {
  const auto W = SmoothWeight::plateau(32);
  CHECK(tilde_transform(W, 0.0) == doctest::Approx(W.integral()).epsilon(1e-12));
  for (double xi : {0.3, 1.7, 5.0, 12.5}) {
    auto F = [&W](double x) { return W.eval(x); };
    const double plus = tilde_transform(F, xi, 1.0, 2.0, W.breakpoints()).value;
    const double minus = tilde_transform(F, -xi, 1.0, 2.0, W.breakpoints()).value;
    auto C = [&W, xi](double x) { return std::cos(2 * M_PI * xi * x) * W.eval(x); };
    // cosine part by the same quadrature with the sine removed: (F(xi) + F(-xi)) / 2
    double cosint = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) cosint += C(1.0 + (i + 0.5) / n) / n;
    CHECK(std::abs(plus + minus - 2 * cosint) < 1e-8);
    // fast path agrees with the adaptive path
    CHECK(std::abs(tilde_transform(W, xi) - tilde_transform_adaptive(W, xi).value) < 1e-10);
  }
  // decay at xi = 50 needs the ramps to be resolved: 2 pi xi / Z well above 1
  const auto W8 = SmoothWeight::plateau(8);
  CHECK(std::abs(tilde_transform(W8, 50.0)) <= 1e-4);
  CHECK(std::abs(tilde_transform_adaptive(W8, 50.0, 1e-12).value) <= 1e-4);
  CHECK(std::abs(tilde_transform_adaptive(W, 50.0, 1e-12).value - tilde_transform_adaptive(W, 50.0, 1e-10).value) <
        1e-10);
  // the plateau transform decays once xi passes a few multiples of Z
  CHECK(std::abs(tilde_transform(W, 400.0)) <= 1e-4);
  const auto B = SmoothWeight::standard_bump();
  CHECK(std::abs(tilde_transform(B, 3.3) - tilde_transform_adaptive(B, 3.3).value) < 1e-10);
}

TEST_CASE("omega kernels") {
  for (int j = 1; j <= 3; ++j) {
    const auto k = OmegaKernel::shared(j);
    CHECK((*k)(0.0) == 1.0);
    CHECK_THROWS_AS((*k)(-1.0), DomainError);
    CHECK((*k)(k->cutoff() * 1.01) == 0.0);
  }
  const auto k1 = OmegaKernel::shared(1);
  for (double xi : {1e-9, 1e-4, 0.01, 0.3, 1.0, 2.5, 6.0}) {
    const double exact = boost::math::gamma_q(0.25, xi * xi);
    CHECK(std::abs(k1->direct(xi).value - exact) < 1e-12);
    CHECK(std::abs((*k1)(xi) - exact) < 1e-12);
  }
  CHECK(std::abs((*k1)(10.0)) <= std::exp(-50.0) * omega_envelope_K(1));
}

TEST_CASE("omega contour independence and cache accuracy off-grid") {
  for (int j = 1; j <= 3; ++j) {
    const auto k = OmegaKernel::shared(j);
    for (double xi : {0.05, 0.5, 1.3, 4.0, 9.0}) {
      const double a = omega_contour(j, xi, 1.0).value;
      const double b = omega_contour(j, xi, 1.5).value;
      CHECK(std::abs(a - b) <= 1e-9);
      const double off = xi * std::exp(0.5 * OmegaKernel::kGridStep);  // half-way between nodes
      CHECK(std::abs((*k)(off) - k->direct(off).value) <= 1e-9);
    }
  }
}

TEST_CASE("omega_2 matches the Bessel-K integral") {
  // omega_2(xi) = (4 / Gamma(1/4)^2) int_xi^inf t^(-1/2) K_0(2t) dt
  const double g = std::tgamma(0.25);
  for (double xi : {0.2, 1.0, 2.0}) {
    double s = 0.0;
    const int n = 400000;
    const double top = xi + 25.0;
    const double h = (top - xi) / n;
    for (int i = 0; i < n; ++i) {
      const double t = xi + (i + 0.5) * h;
      s += std::cyl_bessel_k(0.0, 2 * t) / std::sqrt(t) * h;
    }
    CHECK(std::abs(OmegaKernel::shared(2)->direct(xi).value - 4 / (g * g) * s) < 1e-7);
  }
}

TEST_CASE("kernel file round trip and corruption detection") {
  const auto dir = std::filesystem::temp_directory_path() / "qlf_kernel_test";
  std::filesystem::create_directories(dir);
  const OmegaKernel k(2);
  k.save(dir / "k2.bin");
  const OmegaKernel back = OmegaKernel::load(dir / "k2.bin");
  CHECK(back.values() == k.values());
  CHECK(back.d1() == k.d1());
  CHECK(back.d2() == k.d2());
  CHECK(back(0.77) == k(0.77));
  {
    std::fstream f(dir / "k2.bin", std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(200);
    f.put('\x5a');
  }
  CHECK_THROWS(OmegaKernel::load(dir / "k2.bin"));
  std::filesystem::remove_all(dir);
}
