#include "qlf/central.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <ostream>

#include <boost/math/special_functions/gamma.hpp>

#include "qlf/errors.hpp"
#include "qlf/kahan.hpp"
#include "qlf/omega.hpp"
#include "qlf/sweep.hpp"

namespace qlf {

namespace {

void check_j(int j) {
  if (j < 1 || j > 3) throw DomainError("j must be 1, 2 or 3, got " + std::to_string(j));
}

double kappa(int j, i64 d) { return std::pow(std::numbers::pi / (8.0 * static_cast<double>(d)), 0.5 * j); }

// d_j(n) n^{-1/2} <= c_j n^{a_j}: d_1 = 1, d_2(n) <= 2 sqrt n, d_3(n) <= 4 n.
struct EnvelopeShape {
  double c, a;
};
EnvelopeShape shape(int j) {
  static constexpr std::array<EnvelopeShape, 3> s = {{{1.0, -0.5}, {2.0, 0.0}, {4.0, 0.5}}};
  return s[static_cast<std::size_t>(j - 1)];
}

// Substituting y = (j/2)(x kappa)^{2/j} turns the envelope integral from x
// to infinity into prefactor * Gamma(s, y).
struct EnvelopeIntegral {
  double prefactor, s;
};
EnvelopeIntegral envelope_integral(int j, i64 d) {
  const EnvelopeShape sh = shape(j);
  const double beta = std::pow(2.0 / j, 0.5 * j) / kappa(j, d);
  return {sh.c * omega_envelope_K_all(j) * 0.5 * j * std::pow(beta, sh.a + 1.0), (sh.a + 1.0) * 0.5 * j};
}

}  // namespace

double truncation_tail(int j, i64 d, i64 N) {
  check_j(j);
  const auto ei = envelope_integral(j, d);
  // The summand bound is decreasing past its peak; start the integral one step early.
  const double x = std::max<double>(static_cast<double>(N) - 1.0, 0.0);
  const double y = 0.5 * j * std::pow(x * kappa(j, d), 2.0 / j);
  return ei.prefactor * boost::math::tgamma(ei.s, y);
}

i64 truncation_length(int j, i64 d, double eps) {
  check_j(j);
  if (d < 1) throw DomainError("truncation_length: d must be >= 1");
  if (!(eps > 0.0 && eps <= 1e-6)) throw DomainError("truncation_length: eps must lie in (0, 1e-6]");
  const auto ei = envelope_integral(j, d);
  const double q = eps / (ei.prefactor * boost::math::tgamma(ei.s));
  double y = 0.0;
  if (q < 1.0) y = boost::math::gamma_q_inv(ei.s, q);
  const double x = std::pow(2.0 * y / j, 0.5 * j) / kappa(j, d) + 1.0;
  return static_cast<i64>(std::ceil(1.5 * x));
}

i64 kernel_support(int j, i64 d) {
  check_j(j);
  return static_cast<i64>(std::floor(omega_cutoff(j) / kappa(j, d)));
}

std::shared_ptr<const std::vector<std::uint32_t>> divisor_values(int j, i64 N) {
  check_j(j);
  static std::mutex mu;
  static std::array<std::shared_ptr<const std::vector<std::uint32_t>>, 3> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[static_cast<std::size_t>(j - 1)];
  if (!slot || static_cast<i64>(slot->size()) <= N) {
    const i64 lim = std::max<i64>(N, slot ? 2 * static_cast<i64>(slot->size()) : 1024);
    if (j == 1) {
      slot = std::make_shared<const std::vector<std::uint32_t>>(static_cast<std::size_t>(lim + 1), 1u);
    } else {
      SpfTable spf(lim);
      slot = std::make_shared<const std::vector<std::uint32_t>>(divisor_table(j, spf));
    }
  }
  return slot;
}

double a_value(int j, OddSquarefree d, double eps) {
  check_j(j);
  const i64 dv = d.value();
  const i64 N = std::min(truncation_length(j, dv, eps), kernel_support(j, dv));
  const auto kern = OmegaKernel::shared(j);
  const auto dj = divisor_values(j, N);
  const double kap = kappa(j, dv);
  CompensatedSum s;
  for (i64 n = 1; n <= N; ++n) {
    const int chi = kronecker(8 * dv, n);
    if (chi == 0) continue;
    const double t = (*dj)[static_cast<std::size_t>(n)] / std::sqrt(static_cast<double>(n)) *
                     (*kern)(static_cast<double>(n) * kap);
    s.add(chi > 0 ? t : -t);
  }
  return s.value();
}

CentralValue central_value(OddSquarefree d, double eps) {
  const i64 N = std::min(truncation_length(1, d.value(), eps), kernel_support(1, d.value()));
  return CentralValue{d, 2.0 * a_value(1, d, eps), N, 2.0 * truncation_tail(1, d.value(), N)};
}

double hurwitz_zeta(double s, double x, int shift) {
  if (!(x > 0.0) || s == 1.0) throw DomainError("hurwitz_zeta: need x > 0 and s != 1");
  // B_{2m} for m = 1..10
  static constexpr std::array<double, 10> B = {1.0 / 6,        -1.0 / 30,   1.0 / 42,       -1.0 / 30,
                                               5.0 / 66,       -691.0 / 2730, 7.0 / 6,      -3617.0 / 510,
                                               43867.0 / 798, -174611.0 / 330};
  CompensatedSum acc;
  for (int k = 0; k < shift; ++k) acc.add(std::pow(x + k, -s));
  const double y = x + shift;
  acc.add(std::pow(y, 1.0 - s) / (s - 1.0));
  acc.add(0.5 * std::pow(y, -s));
  double rising = s;  // s (s+1) ... (s + 2m - 2)
  double fact = 2.0;  // (2m)!
  double ypow = std::pow(y, -s - 1.0);
  for (int m = 1; m <= 10; ++m) {
    acc.add(B[static_cast<std::size_t>(m - 1)] / fact * rising * ypow);
    rising *= (s + 2 * m - 1) * (s + 2 * m);
    fact *= (2.0 * m + 1) * (2.0 * m + 2);
    ypow /= y * y;
  }
  return acc.value();
}

double oracle_central(OddSquarefree d) {
  const i64 q = 8 * d.value();
  if (q > kOracleMaxConductor) {
    throw ResourceError("oracle_central: conductor " + std::to_string(q) + " exceeds " +
                            std::to_string(kOracleMaxConductor),
                        "oracle conductor limit");
  }
  CompensatedSum acc;
  i64 chi_total = 0;
  for (i64 a = 1; a <= q; ++a) {
    const int chi = kronecker(8 * d.value(), a);
    chi_total += chi;
    if (chi == 0) continue;
    const double z = hurwitz_zeta(0.5, static_cast<double>(a) / static_cast<double>(q));
    acc.add(chi > 0 ? z : -z);
  }
  if (chi_total != 0) throw std::logic_error("oracle_central: character sum over a period is not 0");
  return acc.value() / std::sqrt(static_cast<double>(q));
}

CensusSummary census(i64 lo, i64 hi, double threshold, std::ostream* csv, double eps, std::size_t sieve_budget) {
  CensusSummary out;
  if (csv) *csv << "d,L,N\n";
  if (hi < lo || hi < 1) return out;
  const LTable t = central_values(std::max<i64>(lo, 1), hi, eps, 0, sieve_budget);
  char buf[96];
  out.min_abs_L = INFINITY;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double L = t.L[i];
    ++out.count_total;
    if (std::abs(L) > threshold)
      ++out.count_nonvanishing;
    else
      out.vanishing.push_back(t.d[i]);
    if (L < 0) {
      ++out.count_negative;
      if (out.negative.size() < 1000) out.negative.push_back(t.d[i]);
    }
    if (std::abs(L) < out.min_abs_L) {
      out.min_abs_L = std::abs(L);
      out.argmin_d = t.d[i];
    }
    if (csv) {
      std::snprintf(buf, sizeof buf, "%lld,%.17g,%lld\n", static_cast<long long>(t.d[i]), L,
                    static_cast<long long>(t.N[i]));
      *csv << buf;
    }
  }
  if (out.count_total == 0) out.min_abs_L = 0.0;
  out.proportion = out.count_total ? static_cast<double>(out.count_nonvanishing) / out.count_total : 0.0;
  return out;
}

}  // namespace qlf
