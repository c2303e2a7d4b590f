#include "fraclap/report.hpp"

#include <cmath>

namespace fraclap {

nlohmann::json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

nlohmann::json envelope(const std::string& kind, nlohmann::json result) {
  return {{"schema_version", kSchemaVersion}, {"kind", kind}, {"result", std::move(result)}};
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace fraclap
