#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lpp/errors.hpp"
#include "lpp/table.hpp"

using namespace lpp;
using namespace lpp::table;

namespace {

Table sample_table() {
  Table t({"p", "label", "count", "value"});
  t.add({num(0.5), "plain", num(3), num(0.1 + 0.2)});
  t.add({num(0.25), "with, comma", num(-7), num(-INFINITY)});
  t.add({num(1e-300), "quote \"q\"", num(std::int64_t{1} << 40), num(2.0 / 3.0)});
  return t;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("table") {

TEST_CASE("num round-trips doubles") {
  CHECK(num(0.5) == "0.5");
  CHECK(num(3) == "3");
  CHECK(num(INFINITY) == "inf");
  CHECK(num(-INFINITY) == "-inf");
  CHECK(num(NAN) == "nan");
  for (double x : {0.1 + 0.2, 1.0 / 3.0, 6.02e23, -1e-300, 558.46})
    CHECK(std::stod(num(x)) == x);
}

TEST_CASE("csv layout") {
  Table t({"a", "b"});
  t.add({"1", "x,y"});
  CHECK(to_csv(t) == "a,b\n1,\"x,y\"\n");
}

TEST_CASE("same table gives the same checksum") {
  auto a = sample_table(), b = sample_table();
  CHECK(fnv1a64(to_csv(a)) == fnv1a64(to_csv(b)));
  CHECK(fnv1a64(to_json(a)) == fnv1a64(to_json(b)));
  CHECK(fnv1a64(to_csv(a)) != fnv1a64(to_json(a)));
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("csv and json carry the same content") {
  auto t = sample_table();
  auto c = from_csv(to_csv(t));
  auto j = from_json(to_json(t));
  CHECK(c.header == t.header);
  CHECK(c.rows == t.rows);
  CHECK(same_content(c, j));
  CHECK(same_content(t, j));
  Table other = t;
  other.rows[0][3] = "0.3";
  CHECK_FALSE(same_content(t, other));
}

TEST_CASE("json is an array of objects keyed by the header") {
  Table t({"n", "name"});
  t.add({"2", "two"});
  CHECK(to_json(t) == "[{\"n\":2,\"name\":\"two\"}]\n");
}

TEST_CASE("empty tables and bad rows are rejected") {
  Table t({"a"});
  CHECK_THROWS_AS(to_csv(t), InvalidParameter);
  CHECK_THROWS_AS(to_json(t), InvalidParameter);
  CHECK_THROWS_AS(to_csv(Table()), InvalidParameter);
  CHECK_THROWS_AS(t.add({"1", "2"}), InvalidParameter);
  CHECK_THROWS_AS(parse_format("xml"), InvalidParameter);
}

TEST_CASE("emit writes the checksummed bytes") {
  auto dir = std::filesystem::temp_directory_path() / "lpp_table_test";
  std::filesystem::create_directories(dir);
  auto path = dir / "out.csv";
  auto t = sample_table();
  auto h = emit(t, Format::Csv, path.string());
  CHECK(h == fnv1a64(slurp(path)));
  CHECK(slurp(path) == to_csv(t));
  CHECK(emit(t, Format::Csv, path.string()) == h);
  CHECK_THROWS_AS(emit(t, Format::Csv, (dir / "missing" / "x.csv").string()), std::ios_base::failure);
  std::filesystem::remove_all(dir);
}

TEST_CASE("manifest round trip") {
  RunManifest m;
  m.command_line = "lpp --seed 3 euler rate --p 0.5";
  m.seed = 3;
  m.version = "1.2.3";
  m.wall_time_s = 0.25;
  m.checksum = 0xfedcba9876543210ULL;
  m.format = "csv";
  m.output = "x.csv";
  auto r = parse_manifest(manifest_json(m));
  CHECK(r.command_line == m.command_line);
  CHECK(r.seed == m.seed);
  CHECK(r.version == m.version);
  CHECK(r.wall_time_s == m.wall_time_s);
  CHECK(r.checksum == m.checksum);
  CHECK(r.format == m.format);
  CHECK(r.output == m.output);
  CHECK(hex64(1) == "0000000000000001");
}

}
