#pragma once

#include <string>
#include <vector>

namespace qlf {

// One named check with its measured value, target and tolerance.
struct Verdict {
  std::string check;
  std::string anchor;  // result the check traces back to, e.g. "gauss-sum-prime-power-table"
  bool pass = false;
  bool advisory = false;  // reported but never fails a run
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

inline bool all_pass(const std::vector<Verdict>& vs) {
  for (const auto& v : vs)
    if (!v.pass && !v.advisory) return false;
  return true;
}

}  // namespace qlf
