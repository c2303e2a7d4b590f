#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace fraclap {

inline constexpr int kSchemaVersion = 1;

/// JSON number, or the strings "inf", "-inf", "nan" (JSON has no such numbers).
nlohmann::json number(double v);

/// {"schema_version", "kind", "result"}.
nlohmann::json envelope(const std::string& kind, nlohmann::json result);

/// Stable text form: sorted keys, two-space indent, trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace fraclap
