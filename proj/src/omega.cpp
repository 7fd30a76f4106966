#include "qlf/omega.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>

#include "qlf/errors.hpp"
#include "qlf/hermite.hpp"

namespace qlf {

namespace {

using cplx = std::complex<double>;

// B_{2k} / (2k (2k-1)) for k = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

constexpr double kLeftAbscissa = -0.25;

// log Gamma(1/4)
const double kLogGammaQuarter = std::lgamma(0.25);

std::vector<cplx> contour_nodes(int j, double c, double T, double h) {
  const double dt = 0.5 * h;
  const auto n = static_cast<std::size_t>(std::ceil(T / dt)) + 1;
  std::vector<cplx> g(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx s(c, static_cast<double>(k) * dt);
    g[k] = std::exp(static_cast<double>(j) * (log_gamma(0.5 * s + 0.25) - kLogGammaQuarter));
  }
  return g;
}

// Trapezoid sums on t >= 0 at steps h/2 (all nodes) and h (even nodes).
ContourResult integrate_nodes(const std::vector<cplx>& g, double c, double h, double xi) {
  const double u = std::log(xi);
  const double dt = 0.5 * h;
  const double scale = std::exp(-c * u);
  double v_fine = 0, v_coarse = 0, a1 = 0, a2 = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double t = static_cast<double>(k) * dt;
    const cplx s(c, t);
    const cplx e = g[k] * scale * cplx(std::cos(t * u), -std::sin(t * u));
    const double w = (k == 0) ? 0.5 : 1.0;
    const double fv = (e / s).real();
    v_fine += w * fv;
    if (k % 2 == 0) v_coarse += w * fv;
    a1 -= w * e.real();
    a2 += w * (e * s).real();
  }
  const double inv_pi = 1.0 / std::numbers::pi;
  ContourResult r;
  r.value = inv_pi * dt * v_fine;
  r.d1 = inv_pi * dt * a1;
  r.d2 = inv_pi * dt * a2;
  r.error = std::abs(r.value - inv_pi * h * v_coarse);
  if (c < 0) r.value += 1.0;  // residue of xi^{-s}/s at s = 0
  return r;
}

void check_j(int j) {
  if (j < 1 || j > 3) throw DomainError("omega: j must be 1, 2 or 3, got " + std::to_string(j));
}

}  // namespace

cplx log_gamma(cplx z) {
  cplx prod(1.0, 0.0);
  while (std::abs(z) < 10.0) {
    prod *= z;
    z += 1.0;
  }
  const cplx iz = 1.0 / z, iz2 = iz * iz;
  cplx series = 0.0, p = iz;
  for (double b : kStirling) {
    series += b * p;
    p *= iz2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series - std::log(prod);
}

double contour_height(int j) {
  check_j(j);
  return 4.0 / (j * std::numbers::pi) * (std::log(1e17) + 2.0);
}

ContourResult omega_contour(int j, double xi, double c, double h) {
  check_j(j);
  if (!(xi > 0.0)) throw DomainError("omega_contour: xi must be positive");
  if (!(c > 0.0 || (c < 0.0 && c > -0.5))) throw DomainError("omega_contour: abscissa must be > 0 or in (-1/2, 0)");
  return integrate_nodes(contour_nodes(j, c, contour_height(j), h), c, h, xi);
}

double omega_cutoff(int j) {
  check_j(j);
  return std::pow(2.0 * std::log(1e18) / j, 0.5 * j);
}

double omega_envelope_K(int j) {
  check_j(j);
  // Measured maxima on [1, cutoff]: 0.62, 0.51, 0.036.
  static constexpr std::array<double, 3> K = {1.0, 1.0, 0.1};
  return K[static_cast<std::size_t>(j - 1)];
}

double omega_envelope_K_all(int j) { return std::max(omega_envelope_K(j), std::exp(0.5 * j)); }

double omega_small_K(int j) {
  check_j(j);
  // Measured maxima: 0.70, 2.58, 9.64.
  static constexpr std::array<double, 3> K = {1.0, 4.0, 15.0};
  return K[static_cast<std::size_t>(j - 1)];
}

OmegaKernel::OmegaKernel(int j, double c, double h) : j_(j), c_(c), h_(h) {
  check_j(j);
  if (!(c > 0.0)) throw DomainError("OmegaKernel: abscissa must be positive");
  T_ = contour_height(j);
  cut_ = omega_cutoff(j);
  u0_ = std::log(kXiMin);
  hu_ = kGridStep;
  build_nodes();
  const auto n = static_cast<std::size_t>(std::ceil((std::log(cut_) - u0_) / hu_)) + 1;
  val_.resize(n);
  d1_.resize(n);
  d2_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ContourResult r = from_nodes(std::exp(u0_ + static_cast<double>(i) * hu_));
    val_[i] = r.value;
    d1_[i] = r.d1;
    d2_[i] = r.d2;
  }
}

void OmegaKernel::build_nodes() {
  g_right_ = contour_nodes(j_, c_, T_, h_);
  g_left_ = contour_nodes(j_, kLeftAbscissa, T_, h_);
}

ContourResult OmegaKernel::from_nodes(double xi) const {
  // Left of 1 the line Re s = c loses digits to xi^{-c}; shift past the pole.
  if (xi < 1.0) return integrate_nodes(g_left_, kLeftAbscissa, h_, xi);
  return integrate_nodes(g_right_, c_, h_, xi);
}

ContourResult OmegaKernel::direct(double xi) const {
  if (xi < 0.0) throw DomainError("omega: xi must be >= 0");
  if (xi == 0.0) return ContourResult{1.0, 0.0, 0.0, 0.0};
  return from_nodes(xi);
}

double OmegaKernel::operator()(double xi) const {
  if (xi < kXiMin) {
    if (xi < 0.0) throw DomainError("omega: xi must be >= 0");
    if (xi == 0.0) return 1.0;
    return from_nodes(xi).value;
  }
  if (xi >= cut_) return 0.0;
  const double pos = (std::log(xi) - u0_) / hu_;
  auto k = static_cast<std::size_t>(pos);
  if (k + 1 >= val_.size()) k = val_.size() - 2;
  const double s = pos - static_cast<double>(k);
  return quintic_hermite(s, hu_, val_[k], d1_[k], d2_[k], val_[k + 1], d1_[k + 1], d2_[k + 1]);
}

std::shared_ptr<const OmegaKernel> OmegaKernel::shared(int j) {
  check_j(j);
  static std::mutex mu;
  static std::array<std::shared_ptr<const OmegaKernel>, 3> kernels;
  std::lock_guard lock(mu);
  auto& slot = kernels[static_cast<std::size_t>(j - 1)];
  if (slot) return slot;
  const char* dir = std::getenv("QC_KERNEL_DIR");
  if (dir && *dir) {
    const auto path = std::filesystem::path(dir) / ("omega_j" + std::to_string(j) + ".bin");
    try {
      auto k = std::make_shared<const OmegaKernel>(load(path));
      if (k->j() == j && k->abscissa() == 1.0 && k->step() == 0.05) {
        slot = k;
        return slot;
      }
    } catch (const std::exception&) {
      // missing or stale file: rebuild below
    }
    slot = std::make_shared<const OmegaKernel>(j);
    try {
      std::filesystem::create_directories(dir);
      slot->save(path);
    } catch (const std::exception&) {
    }
    return slot;
  }
  slot = std::make_shared<const OmegaKernel>(j);
  return slot;
}

}  // namespace qlf
