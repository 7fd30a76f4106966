#pragma once

#include <stdexcept>
#include <string>

namespace qlf {

// Argument outside the mathematical domain of an operation (even modulus,
// non-square-free argument, negative xi, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configured compute or memory budget would be exceeded. `knob` names the
// configuration value (or QC_* environment variable) that controls it.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::string knob)
      : std::runtime_error(what + " (budget knob: " + knob + ")"), knob_(std::move(knob)) {}
  const std::string& knob() const noexcept { return knob_; }

 private:
  std::string knob_;
};

// Least-squares fit could not be carried out (too few points, rank deficiency).
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Request for an unsupported derivative order.
class UnsupportedOrder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qlf
