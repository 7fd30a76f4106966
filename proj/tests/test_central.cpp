#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qlf/central.hpp"
#include "qlf/errors.hpp"
#include "qlf/sweep.hpp"
#include "qlf/verify.hpp"

using namespace qlf;

TEST_CASE("truncation length") {
  CHECK(truncation_length(1, 1) <= 200);
  for (int j = 1; j <= 3; ++j)
    for (i64 d : {1, 7, 100, 1001}) {
      CHECK(truncation_length(j, 2 * d) > truncation_length(j, d));
      CHECK(truncation_tail(j, d, truncation_length(j, d)) < kDefaultTruncationEps);
    }
  const i64 n100 = truncation_length(1, 100);
  CHECK(n100 >= 100);
  CHECK(n100 <= 400);
  CHECK_THROWS_AS(truncation_length(1, 1, 1e-3), DomainError);
}

TEST_CASE("central values agree with the Hurwitz oracle") {
  for (const auto d : sieve_odd_squarefree(1, 120)) {
    const CentralValue v = central_value(d);
    CHECK(std::abs(v.L - oracle_central(d)) <= 1e-8);
    CHECK(v.tail_estimate < 1e-10 * std::max(1.0, std::abs(v.L)));
  }
  CHECK_THROWS_AS(oracle_central(OddSquarefree::make(3001)), ResourceError);
}

TEST_CASE("powers of the central value") {
  for (i64 d : sample_odd_squarefree(2000, 30)) {
    const auto od = OddSquarefree::make(d);
    const double L = 2 * a_value(1, od);
    CHECK(std::abs(L * L - 2 * a_value(2, od)) <= 1e-8 * L * L);
  }
  for (i64 d : sample_odd_squarefree(200, 10)) {
    const auto od = OddSquarefree::make(d);
    const double L = 2 * a_value(1, od);
    CHECK(std::abs(L * L * L - 2 * a_value(3, od)) <= 1e-6 * std::abs(L * L * L));
  }
  CHECK_THROWS_AS(a_value(4, OddSquarefree::make(1)), DomainError);
}

TEST_CASE("tighter truncation moves L by less than the tail estimate") {
  for (i64 d : {1, 3, 101, 4999, 77777}) {
    const auto od = OddSquarefree::make(d);
    const CentralValue a = central_value(od, 1e-7), b = central_value(od, 1e-14);
    // N is capped by the support of the omega cache, beyond which the kernel is 0
    CHECK(b.truncation_N >= a.truncation_N);
    CHECK(b.truncation_N <= kernel_support(1, d));
    CHECK(std::abs(a.L - b.L) <= a.tail_estimate + 1e-13);
  }
}

TEST_CASE("census") {
  const CensusSummary empty = census(10, 9);
  CHECK(empty.count_total == 0);
  std::ostringstream csv;
  const CensusSummary s = census(1, 10000, 1e-8, &csv);
  CHECK(s.count_total == static_cast<i64>(sieve_odd_squarefree(1, 10000).size()));
  CHECK(s.min_abs_L > 0.0);
  CHECK(s.proportion == 1.0);
  CHECK(csv.str().rfind("d,L,N\n", 0) == 0);
  std::ostringstream again;
  census(1, 10000, 1e-8, &again);
  CHECK(csv.str() == again.str());
}

TEST_CASE("parallel sweep is bit-identical to the serial reference") {
  const LTable ref = central_values_reference(1, 20000);
  for (int threads : {1, 2, 4}) {
    const LTable fast = central_values(1, 20000, kDefaultTruncationEps, threads);
    REQUIRE(fast.size() == ref.size());
    CHECK(fast.d == ref.d);
    CHECK(fast.N == ref.N);
    CHECK(fast.L == ref.L);
  }
  CHECK(ref.at(1) == central_value(OddSquarefree::make(1)).L);
}
