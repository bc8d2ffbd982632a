#include "moire/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "moire/version.hpp"

namespace moire {
namespace {

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string join_record(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += quote_if_needed(fields[i]);
  }
  line += "\r\n";
  return line;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("table needs at least one column");
}

void CsvTable::add_row(std::vector<std::string> fields) {
  if (fields.size() != columns_.size())
    throw std::invalid_argument("row arity does not match the header");
  rows_.push_back(std::move(fields));
}

void CsvTable::write(const std::string& path, std::uint64_t config_hash) const {
  std::string body = join_record(columns_);
  for (const auto& row : rows_) body += join_record(row);

  std::vector<std::string> prov{"#provenance", std::string("config=") + hex16(config_hash) +
                                                   " version=" MOIRE_VERSION
                                                   " content=" +
                                                   hex16(fnv1a64(body))};
  if (prov.size() < columns_.size()) prov.resize(columns_.size());  // pad to the field count

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << join_record(prov) << body;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_summary_json(const std::string& path, const nlohmann::json& report,
                        std::uint64_t config_hash) {
  const std::string body = report.dump(2);
  nlohmann::json root;
  root["provenance"] = {{"config_hash", hex16(config_hash)},
                        {"lib_version", MOIRE_VERSION},
                        {"content_hash", hex16(fnv1a64(body))}};
  root["report"] = report;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << root.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace moire
