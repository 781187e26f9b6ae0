#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace avalanche {

inline constexpr int kSchemaVersion = 1;

// Envelope written at the top of every output file: rerunning with the
// stored parameters and seed regenerates the payload bit-identically
// (wall_time excluded).
struct ResultRecord {
  std::string subcommand;
  nlohmann::json parameters;  // all flags
  std::uint64_t seed = 0;
  nlohmann::json payload;
  double wall_time_s = 0;

  nlohmann::json to_json() const;
  static ResultRecord from_json(const nlohmann::json& j);
};

// Fixed-column table; rows render in insertion order, columns in the given
// order, so csv outputs diff cleanly.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

std::string fmt_double(double x);  // shortest round-trip decimal

void write_csv(std::ostream& os, const ResultRecord& meta, const CsvTable& table);
void write_jsonl_meta(std::ostream& os, const ResultRecord& meta);

}  // namespace avalanche
