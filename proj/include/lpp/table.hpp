#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lpp::table {

// Rectangular table of preformatted cells with a header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  Table() = default;
  explicit Table(std::vector<std::string> h) : header(std::move(h)) {}
  void add(std::vector<std::string> row);
};

// shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite
std::string num(double x);
std::string num(std::int64_t x);
inline std::string num(int x) { return num(static_cast<std::int64_t>(x)); }
inline std::string num(std::size_t x) { return num(static_cast<std::int64_t>(x)); }

enum class Format { Csv, Json };
Format parse_format(const std::string& s);

std::string to_csv(const Table& t);
// array of objects keyed by the header; numeric cells become JSON numbers
std::string to_json(const Table& t);
Table from_csv(const std::string& text);
Table from_json(const std::string& text);
std::string render(const Table& t, Format f);

// cells equal as strings, or both numeric with equal value
bool same_content(const Table& a, const Table& b);

std::uint64_t fnv1a64(const std::string& bytes);

// writes to path ("-" = stdout) and returns the checksum of the bytes
std::uint64_t emit(const Table& t, Format f, const std::string& path);

struct RunManifest {
  std::string command_line;
  std::uint64_t seed = 0;
  std::string version;
  double wall_time_s = 0.0;
  std::uint64_t checksum = 0;
  std::string format;
  std::string output;
};
std::string manifest_json(const RunManifest& m);
RunManifest parse_manifest(const std::string& json);
std::string hex64(std::uint64_t x);

}  // namespace lpp::table
