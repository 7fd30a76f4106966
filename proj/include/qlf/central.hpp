#pragma once
// Central values L(1/2, chi_8d) from the smoothed Dirichlet sums
// A_j(d) = sum_n (8d/n) d_j(n) n^{-1/2} omega_j(n (pi/8d)^{j/2}), with
// L^j = 2 A_j(d), and an independent Hurwitz-zeta oracle.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "qlf/ntheory.hpp"

namespace qlf {

inline constexpr double kDefaultTruncationEps = 1e-12;

// Envelope bound for sum_{n > N} d_j(n) n^{-1/2} |omega_j(n kappa)|, kappa = (pi/8d)^{j/2}.
double truncation_tail(int j, i64 d, i64 N);
// N from the envelope at tolerance eps, times a safety factor 1.5.
i64 truncation_length(int j, i64 d, double eps = kDefaultTruncationEps);
// Last n with n kappa below the omega cutoff (terms beyond vanish identically).
i64 kernel_support(int j, i64 d);

struct CentralValue {
  OddSquarefree d;
  double L;
  i64 truncation_N;
  double tail_estimate;  // bound on the truncation error of L
};

// A_j(d), summed in ascending n with compensated accumulation.
double a_value(int j, OddSquarefree d, double eps = kDefaultTruncationEps);
CentralValue central_value(OddSquarefree d, double eps = kDefaultTruncationEps);

// d_j(n) for n <= N, shared across calls and grown on demand.
std::shared_ptr<const std::vector<std::uint32_t>> divisor_values(int j, i64 N);

inline constexpr i64 kOracleMaxConductor = 24000;

// Hurwitz zeta at s by Euler-Maclaurin with `shift` direct terms and
// Bernoulli corrections through B_20.
double hurwitz_zeta(double s, double x, int shift = 50);
// L(1/2, chi_8d) = q^{-1/2} sum_{a=1}^{q} chi(a) zeta(1/2, a/q), q = 8d.
double oracle_central(OddSquarefree d);

struct CensusSummary {
  i64 count_total = 0;
  i64 count_nonvanishing = 0;
  i64 count_negative = 0;
  double proportion = 0.0;  // 0 on an empty range
  double min_abs_L = 0.0;
  i64 argmin_d = 0;
  std::vector<i64> vanishing;  // d with |L| <= threshold
  std::vector<i64> negative;   // d with L < 0 (first 1000)
};

// Central values for every odd square-free d in [lo, hi]. When `csv` is
// given, writes "d,L,N" rows in ascending d.
CensusSummary census(i64 lo, i64 hi, double threshold = 1e-8, std::ostream* csv = nullptr,
                     double eps = kDefaultTruncationEps, std::size_t sieve_budget = kDefaultSieveBudget);

}  // namespace qlf
