#include "optoconj/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "optoconj/errors.hpp"

namespace optoconj {

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidParameter("out", "cannot write " + path);
  out << text;
  if (!out) throw InvalidParameter("out", "write failed for " + path);
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw InvalidParameter("header", "must not be empty");
}

void CsvTable::add_row(const std::vector<double>& values) {
  if (values.size() != header_.size()) {
    throw InvalidParameter("row", "expected " + std::to_string(header_.size()) + " columns");
  }
  rows_.push_back(values);
}

std::string CsvTable::str() const {
  std::string s;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) s += ',';
    s += header_[i];
  }
  s += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += format_double(row[i]);
    }
    s += '\n';
  }
  return s;
}

void CsvTable::write(const std::string& path) const { write_file(path, str()); }

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return s;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["subcommand"] = subcommand;
  j["config_hash"] = "fnv1a64:" + config_hash();
  j["seed"] = seed;
  j["overrides"] = overrides;
  j["outputs"] = outputs;
  j["wall_clock_seconds"] = wall_clock_seconds;
  j["config"] = nlohmann::ordered_json::parse(config_json);
  for (const auto& [k, v] : extra_json) j["results"][k] = nlohmann::ordered_json::parse(v);
  return j.dump(2) + "\n";
}

void RunManifest::write(const std::string& path) const { write_file(path, to_json()); }

}  // namespace optoconj
