#pragma once
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace glab {

// Shortest round-trippable decimal form of a double (%.17g trimmed).
std::string format_double(double v);

// Plain CSV: header line, then one row per entry, every number written so it
// round-trips exactly. Overwrites; throws on I/O failure.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

// mkdir -p equivalent; throws on failure.
void ensure_dir(const std::string& path);

}  // namespace glab
