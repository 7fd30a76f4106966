#pragma once
// Identity suites: each runs one family of checks and reports verdicts plus
// the raw measurements as JSON.

#include <string>
#include <vector>

#include <json.hpp>

#include "qlf/config.hpp"
#include "qlf/ntheory.hpp"
#include "qlf/verdict.hpp"

namespace qlf {

struct SuiteResult {
  std::string suite;
  std::vector<Verdict> verdicts;
  nlohmann::json data;
  double seconds = 0.0;
  bool pass() const { return all_pass(verdicts); }
};

// gauss, poisson, omega, eta, identity-69, prediction-identity, afe-consistency, oracle
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const RunConfig& cfg);

nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const SuiteResult& r);

// Fixed seed for the random d samples, so reruns are byte-identical.
inline constexpr unsigned long long kSampleSeed = 0x51a7c0de;
std::vector<i64> sample_odd_squarefree(i64 hi, std::size_t count, unsigned long long seed = kSampleSeed);

}  // namespace qlf
