#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace moire {

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex16(std::uint64_t v);
std::string format_real(double x);  // 17 significant digits, '.' decimal point

// RFC-4180 table (CRLF records, quoting only where required) whose first
// record is a comment-style provenance row carrying the config hash, the
// library version and a content hash over every byte after that row. The
// provenance row is padded with empty fields to the table's field count.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);
  void add_row(std::vector<std::string> fields);
  std::size_t rows() const { return rows_.size(); }
  void write(const std::string& path, std::uint64_t config_hash) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// JSON document {"provenance": {config_hash, lib_version, content_hash},
// "report": report} where content_hash covers the serialized report only.
void write_summary_json(const std::string& path, const nlohmann::json& report,
                        std::uint64_t config_hash);

}  // namespace moire
