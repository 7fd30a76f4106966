#pragma once
// The kernels omega_j(xi) = (1/2 pi i) int_(c) (Gamma(s/2 + 1/4)/Gamma(1/4))^j xi^{-s} ds/s
// for j = 1, 2, 3, by trapezoid quadrature along a vertical line, with an
// interpolation cache in u = log xi.

#include <complex>
#include <filesystem>
#include <memory>
#include <vector>

namespace qlf {

std::complex<double> log_gamma(std::complex<double> z);

struct ContourResult {
  double value = 0.0;  // omega_j(xi)
  double d1 = 0.0;     // d omega / d log xi
  double d2 = 0.0;     // d^2 omega / d (log xi)^2
  double error = 0.0;  // |step h - step h/2| on the value
};

// Height where |Gamma(s/2+1/4)/Gamma(1/4)|^j has fallen below ~1e-17.
double contour_height(int j);

// Direct quadrature on Re s = c. For -1/2 < c < 0 the residue 1 at s = 0 is
// added, so the result is omega_j(xi) for any admissible c.
ContourResult omega_contour(int j, double xi, double c, double h = 0.05);

// Largest xi with exp(-(j/2) xi^{2/j}) >= 1e-18; omega_j is treated as 0 beyond.
double omega_cutoff(int j);

// Frozen constants with |omega_j(xi)| <= K_j exp(-(j/2) xi^{2/j}) for xi >= 1.
double omega_envelope_K(int j);
// Same envelope valid for every xi > 0 (covers |omega_j| <= 1 near 0).
double omega_envelope_K_all(int j);
// Frozen constant with |omega_j(xi) - 1| <= K xi^{0.4} on [1e-6, 1e-2].
double omega_small_K(int j);

class OmegaKernel {
 public:
  static constexpr double kXiMin = 1e-8;
  static constexpr double kGridStep = 0.01;  // in log xi

  explicit OmegaKernel(int j, double c = 1.0, double h = 0.05);

  // Process-wide kernel for j, loaded from / saved to $QC_KERNEL_DIR when set.
  static std::shared_ptr<const OmegaKernel> shared(int j);

  int j() const noexcept { return j_; }
  double abscissa() const noexcept { return c_; }
  double height() const noexcept { return T_; }
  double step() const noexcept { return h_; }
  double cutoff() const noexcept { return cut_; }
  double u0() const noexcept { return u0_; }
  double grid_step() const noexcept { return hu_; }
  std::size_t size() const noexcept { return val_.size(); }

  // Cached evaluation; exact 1 at xi = 0, contour quadrature below kXiMin, 0 beyond the cutoff.
  double operator()(double xi) const;
  // Direct contour quadrature (no cache).
  ContourResult direct(double xi) const;

  const std::vector<double>& values() const { return val_; }
  const std::vector<double>& d1() const { return d1_; }
  const std::vector<double>& d2() const { return d2_; }

  // Binary persistence; load throws std::runtime_error on a damaged or mismatched file.
  void save(const std::filesystem::path& path) const;
  static OmegaKernel load(const std::filesystem::path& path);

 private:
  OmegaKernel() = default;
  void build_nodes();
  ContourResult from_nodes(double xi) const;

  int j_ = 1;
  double c_ = 1.0, T_ = 0.0, h_ = 0.05, cut_ = 0.0;
  double u0_ = 0.0, hu_ = kGridStep;
  // G^j at t_k = k h/2 on the right-hand contour (Re s = c) and the shifted one (Re s = -1/4).
  std::vector<std::complex<double>> g_right_, g_left_;
  std::vector<double> val_, d1_, d2_;
};

}  // namespace qlf
