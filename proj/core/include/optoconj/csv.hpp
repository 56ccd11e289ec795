#pragma once

// Deterministic tabular output: shortest round-trip number formatting, '.'
// decimal point regardless of locale, '\n' line endings.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace optoconj {

std::string format_double(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<double>& values);
  std::size_t rows() const noexcept { return rows_.size(); }
  const std::vector<std::string>& header() const noexcept { return header_; }

  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t h);

// Sidecar metadata sufficient to re-run a subcommand. Extra holds
// subcommand-specific results (fit slopes, pass/fail flags, ...), already
// serialized as JSON values.
struct RunManifest {
  std::string subcommand;
  std::string config_json;  // canonical config text; hashed
  std::uint64_t seed = 0;
  std::map<std::string, std::string> overrides;
  std::vector<std::string> outputs;
  double wall_clock_seconds = 0.0;
  std::map<std::string, std::string> extra_json;

  std::string config_hash() const { return hex64(fnv1a64(config_json)); }
  std::string to_json() const;
  void write(const std::string& path) const;
};

}  // namespace optoconj
