#include "qlf/config.hpp"

#include <cstdlib>
#include <fstream>

#include <omp.h>

#include "qlf/errors.hpp"

namespace qlf {

void RunConfig::validate() const {
  if (threads < 0) throw DomainError("threads must be >= 0");
  if (weight != "plateau" && weight != "standard_bump") throw DomainError("unknown weight '" + weight + "'");
  if (!(Z >= 4.0)) throw DomainError("Z must be >= 4");
  if (euler_cutoff < 3) throw DomainError("euler cutoff must be >= 3");
  if (!(eps > 0.0 && eps <= 1e-6)) throw DomainError("truncation eps must lie in (0, 1e-6]");
  if (max_d < 1) throw DomainError("max_d must be positive");
  if (!(max_x > 0.0)) throw DomainError("max_x must be positive");
  if (sieve_bytes < 1) throw DomainError("sieve_bytes must be positive");
}

int RunConfig::effective_threads() const { return threads > 0 ? threads : omp_get_max_threads(); }

SmoothWeight RunConfig::make_weight() const {
  return weight == "standard_bump" ? SmoothWeight::standard_bump() : SmoothWeight::plateau(Z);
}

nlohmann::json RunConfig::to_json() const {
  return {{"threads", effective_threads()}, {"weight", weight},         {"Z", Z},
          {"euler_cutoff", euler_cutoff},  {"eps", eps},               {"max_d", max_d},
          {"max_x", max_x},                {"sieve_bytes", sieve_bytes}, {"out_dir", out_dir.string()}};
}

void apply_json(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "threads") cfg.threads = v.get<int>();
    else if (key == "weight") cfg.weight = v.get<std::string>();
    else if (key == "Z") cfg.Z = v.get<double>();
    else if (key == "euler_cutoff") cfg.euler_cutoff = v.get<long long>();
    else if (key == "eps") cfg.eps = v.get<double>();
    else if (key == "max_d") cfg.max_d = v.get<long long>();
    else if (key == "max_x") cfg.max_x = v.get<double>();
    else if (key == "sieve_bytes") cfg.sieve_bytes = v.get<long long>();
    else if (key == "out_dir") cfg.out_dir = v.get<std::string>();
    else throw DomainError("unknown config key '" + key + "'");
  }
}

void apply_json_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config file " + path.string() + ": " + e.what());
  }
  apply_json(cfg, j);
}

namespace {

template <class T>
void env_number(const char* name, T& field) {
  const char* s = std::getenv(name);
  if (s == nullptr || *s == '\0') return;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0') throw DomainError(std::string(name) + " is not a number: " + s);
  field = static_cast<T>(v);
}

}  // namespace

void apply_env(RunConfig& cfg) {
  env_number("QC_THREADS", cfg.threads);
  env_number("QC_MAX_D", cfg.max_d);
  env_number("QC_MAX_X", cfg.max_x);
  env_number("QC_SIEVE_BYTES", cfg.sieve_bytes);
  env_number("QC_EULER_CUTOFF", cfg.euler_cutoff);
}

}  // namespace qlf
