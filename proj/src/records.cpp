#include "avalanche/records.hpp"

#include <cmath>
#include <cstdio>

namespace avalanche {

nlohmann::json ResultRecord::to_json() const {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["subcommand"] = subcommand;
  j["parameters"] = parameters;
  j["seed"] = seed;
  j["payload"] = payload;
  j["wall_time_s"] = wall_time_s;
  return j;
}

ResultRecord ResultRecord::from_json(const nlohmann::json& j) {
  ResultRecord r;
  r.subcommand = j.at("subcommand").get<std::string>();
  r.parameters = j.at("parameters");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.payload = j.at("payload");
  r.wall_time_s = j.value("wall_time_s", 0.0);
  return r;
}

void CsvTable::add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }

std::string fmt_double(double x) {
  if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", x);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  double back = std::strtod(buf, nullptr);
  if (back == x) {  // trim to the shortest representation that round-trips
    for (int prec = 1; prec <= 16; ++prec) {
      char t[40];
      std::snprintf(t, sizeof t, "%.*g", prec, x);
      if (std::strtod(t, nullptr) == x) return t;
    }
  }
  return buf;
}

void write_csv(std::ostream& os, const ResultRecord& meta, const CsvTable& table) {
  os << "# schema_version=" << kSchemaVersion << "\n";
  os << "# subcommand=" << meta.subcommand << "\n";
  os << "# seed=" << meta.seed << "\n";
  os << "# parameters=" << meta.parameters.dump() << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    os << table.columns[c] << (c + 1 < table.columns.size() ? "," : "\n");
  for (const auto& row : table.rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      os << row[c] << (c + 1 < row.size() ? "," : "\n");
}

void write_jsonl_meta(std::ostream& os, const ResultRecord& meta) {
  os << meta.to_json().dump() << "\n";
}

}  // namespace avalanche
