#include "lpp/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "lpp/errors.hpp"

namespace lpp::table {

using nlohmann::json;

void Table::add(std::vector<std::string> row) {
  if (row.size() != header.size()) throw InvalidParameter("table: row width does not match header");
  rows.push_back(std::move(row));
}

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string num(std::int64_t x) { return std::to_string(x); }

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw InvalidParameter("unknown output format: " + s);
}

namespace {

void check(const Table& t) {
  if (t.header.empty()) throw InvalidParameter("table: empty header");
  if (t.rows.empty()) throw InvalidParameter("table: no rows");
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool as_number(const std::string& s, double& v) {
  if (s.empty()) return false;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  return r.ec == std::errc() && r.ptr == s.data() + s.size() && std::isfinite(v);
}

bool as_integer(const std::string& s, std::int64_t& v) {
  if (s.empty()) return false;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

}  // namespace

std::string to_csv(const Table& t) {
  check(t);
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out += ',';
      out += csv_cell(cells[k]);
    }
    out += '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

std::string to_json(const Table& t) {
  check(t);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < r.size(); ++k) {
      std::int64_t i = 0;
      double d = 0.0;
      if (as_integer(r[k], i)) obj[t.header[k]] = i;
      else if (as_number(r[k], d)) obj[t.header[k]] = d;
      else obj[t.header[k]] = r[k];
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump() + "\n";
}

Table from_csv(const std::string& text) {
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> cur;
  std::string cell;
  bool quoted = false, any = false;
  for (std::size_t k = 0; k < text.size(); ++k) {
    char c = text[k];
    if (quoted) {
      if (c == '"' && k + 1 < text.size() && text[k + 1] == '"') {
        cell += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      cur.push_back(cell);
      cell.clear();
    } else if (c == '\n') {
      cur.push_back(cell);
      lines.push_back(cur);
      cur.clear();
      cell.clear();
      any = false;
    } else {
      cell += c;
      any = true;
    }
  }
  if (any || !cell.empty() || !cur.empty()) {
    cur.push_back(cell);
    lines.push_back(cur);
  }
  if (lines.empty()) throw InvalidParameter("csv: no header");
  Table t(lines.front());
  for (std::size_t k = 1; k < lines.size(); ++k) t.add(lines[k]);
  return t;
}

Table from_json(const std::string& text) {
  auto arr = nlohmann::ordered_json::parse(text);
  if (!arr.is_array() || arr.empty()) throw InvalidParameter("json table: expected a nonempty array");
  Table t;
  for (auto it = arr[0].begin(); it != arr[0].end(); ++it) t.header.push_back(it.key());
  for (const auto& obj : arr) {
    std::vector<std::string> row;
    for (const auto& h : t.header) {
      const auto& v = obj.at(h);
      if (v.is_string()) row.push_back(v.get<std::string>());
      else if (v.is_number_integer()) row.push_back(std::to_string(v.get<std::int64_t>()));
      else if (v.is_number()) row.push_back(num(v.get<double>()));
      else row.push_back(v.dump());
    }
    t.add(row);
  }
  return t;
}

std::string render(const Table& t, Format f) { return f == Format::Csv ? to_csv(t) : to_json(t); }

bool same_content(const Table& a, const Table& b) {
  auto cell_eq = [](const std::string& x, const std::string& y) {
    if (x == y) return true;
    double u = 0.0, v = 0.0;
    return as_number(x, u) && as_number(y, v) && u == v;
  };
  // JSON objects come back with keys sorted; compare by column name
  if (a.header.size() != b.header.size() || a.rows.size() != b.rows.size()) return false;
  for (std::size_t k = 0; k < a.header.size(); ++k) {
    auto it = std::find(b.header.begin(), b.header.end(), a.header[k]);
    if (it == b.header.end()) return false;
    auto kb = static_cast<std::size_t>(it - b.header.begin());
    for (std::size_t r = 0; r < a.rows.size(); ++r)
      if (!cell_eq(a.rows[r][k], b.rows[r][kb])) return false;
  }
  return true;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t emit(const Table& t, Format f, const std::string& path) {
  std::string bytes = render(t, f);
  if (path.empty() || path == "-") {
    std::cout << bytes;
    std::cout.flush();
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open output file: " + path);
    out << bytes;
    if (!out) throw std::ios_base::failure("write failed: " + path);
  }
  return fnv1a64(bytes);
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::string manifest_json(const RunManifest& m) {
  json j = {{"command_line", m.command_line}, {"seed", m.seed},         {"version", m.version},
            {"wall_time_s", m.wall_time_s},   {"checksum", hex64(m.checksum)}, {"format", m.format},
            {"output", m.output}};
  return j.dump(2) + "\n";
}

RunManifest parse_manifest(const std::string& text) {
  json j = json::parse(text);
  RunManifest m;
  m.command_line = j.at("command_line").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.version = j.at("version").get<std::string>();
  m.wall_time_s = j.at("wall_time_s").get<double>();
  m.checksum = std::stoull(j.at("checksum").get<std::string>(), nullptr, 16);
  m.format = j.at("format").get<std::string>();
  m.output = j.at("output").get<std::string>();
  return m;
}

}  // namespace lpp::table
