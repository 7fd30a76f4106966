#include "qlf/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <omp.h>

#include "qlf/errors.hpp"
#include "qlf/kahan.hpp"
#include "qlf/omega.hpp"

namespace qlf {

double LTable::at(i64 dv) const {
  auto it = std::lower_bound(d.begin(), d.end(), dv);
  if (it == d.end() || *it != dv) throw DomainError("LTable: d = " + std::to_string(dv) + " not in table");
  return L[static_cast<std::size_t>(it - d.begin())];
}

namespace {

struct Plan {
  std::vector<i64> d, N;
  i64 n_max = 1;
};

Plan plan(i64 lo, i64 hi, double eps, std::size_t budget) {
  Plan p;
  for (const auto& s : sieve_odd_squarefree(lo, hi, budget)) {
    p.d.push_back(s.value());
    p.N.push_back(std::min(truncation_length(1, s.value(), eps), kernel_support(1, s.value())));
    p.n_max = std::max(p.n_max, p.N.back());
  }
  return p;
}

// 2 A_1(d) from a ready character row chi[n], n <= N.
template <class Chi>
double sum_l(i64 dv, i64 N, const OmegaKernel& kern, Chi&& chi) {
  const double kap = std::sqrt(std::numbers::pi / (8.0 * static_cast<double>(dv)));
  CompensatedSum s;
  for (i64 n = 1; n <= N; ++n) {
    const int c = chi(n);
    if (c == 0) continue;
    const double t = (kern)(static_cast<double>(n) * kap) / std::sqrt(static_cast<double>(n));
    s.add(c > 0 ? t : -t);
  }
  return 2.0 * s.value();
}

}  // namespace

LTable central_values_reference(i64 lo, i64 hi, double eps, std::size_t sieve_budget) {
  Plan p = plan(lo, hi, eps, sieve_budget);
  const auto kern = OmegaKernel::shared(1);
  LTable t;
  t.lo = lo;
  t.hi = hi;
  t.d = p.d;
  t.N = p.N;
  t.L.resize(p.d.size());
  for (std::size_t i = 0; i < p.d.size(); ++i) {
    const i64 top = 8 * p.d[i];
    t.L[i] = sum_l(p.d[i], p.N[i], *kern, [top](i64 n) { return kronecker(top, n); });
  }
  return t;
}

LTable central_values(i64 lo, i64 hi, double eps, int threads, std::size_t sieve_budget) {
  Plan p = plan(lo, hi, eps, sieve_budget);
  const auto kern = OmegaKernel::shared(1);
  const SpfTable spf(p.n_max);
  LTable t;
  t.lo = lo;
  t.hi = hi;
  t.d = p.d;
  t.N = p.N;
  t.L.resize(p.d.size());
  const auto count = static_cast<std::int64_t>(p.d.size());
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nt)
  {
    std::vector<std::int8_t> chi(static_cast<std::size_t>(p.n_max + 1));
    // Each d is written to its own slot, so the schedule cannot affect the output.
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < count; ++i) {
      const i64 dv = p.d[static_cast<std::size_t>(i)];
      const i64 N = p.N[static_cast<std::size_t>(i)];
      const i64 top = 8 * dv;
      // Completely multiplicative: chi(n) = chi(p) chi(n/p), p the smallest prime factor.
      chi[1] = 1;
      for (i64 n = 2; n <= N; ++n) {
        const auto q = static_cast<i64>(spf[n]);
        const auto un = static_cast<std::size_t>(n);
        chi[un] = (q == n) ? static_cast<std::int8_t>(kronecker(top, n))
                           : static_cast<std::int8_t>(chi[static_cast<std::size_t>(q)] * chi[un / static_cast<std::size_t>(q)]);
      }
      t.L[static_cast<std::size_t>(i)] = sum_l(dv, N, *kern, [&chi](i64 n) { return chi[static_cast<std::size_t>(n)]; });
    }
  }
  return t;
}

double smoothed_sum(const LTable& t, double X, const std::function<double(double)>& Phi,
                    const std::function<double(i64, double)>& f) {
  CompensatedSum s;
  auto it = std::upper_bound(t.d.begin(), t.d.end(), static_cast<i64>(std::floor(X)));
  for (auto i = static_cast<std::size_t>(it - t.d.begin()); i < t.size(); ++i) {
    const double x = static_cast<double>(t.d[i]) / X;
    if (x >= 2.0) break;
    const double w = Phi(x);
    if (w == 0.0) continue;
    s.add(f(t.d[i], t.L[i]) * w);
  }
  return s.value() / X;
}

}  // namespace qlf
