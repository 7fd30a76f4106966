#pragma once
// Bulk central values over ranges of d. The reference path evaluates
// (8d/n) by binary Jacobi for every term; the fast path builds (8d/n) for
// all n <= N from its values at primes through a smallest-prime-factor
// table and runs d-blocks in parallel. Both sum the same terms in the same
// order, so they agree bit for bit.

#include <functional>
#include <vector>

#include "qlf/central.hpp"

namespace qlf {

struct LTable {
  i64 lo = 0;  // requested range; d holds its odd square-free members
  i64 hi = -1;
  std::vector<i64> d;
  std::vector<double> L;
  std::vector<i64> N;

  std::size_t size() const { return d.size(); }
  // L for an odd square-free d inside the table; throws DomainError otherwise.
  double at(i64 dv) const;
};

LTable central_values_reference(i64 lo, i64 hi, double eps = kDefaultTruncationEps,
                                std::size_t sieve_budget = kDefaultSieveBudget);
// threads <= 0 keeps the OpenMP default.
LTable central_values(i64 lo, i64 hi, double eps = kDefaultTruncationEps, int threads = 0,
                      std::size_t sieve_budget = kDefaultSieveBudget);

// (1/X) sum over table entries with X < d < 2X of f(d, L) Phi(d/X), compensated, ascending d.
double smoothed_sum(const LTable& t, double X, const std::function<double(double)>& Phi,
                    const std::function<double(i64, double)>& f);

}  // namespace qlf
