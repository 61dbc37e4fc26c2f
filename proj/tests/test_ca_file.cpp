#include "doctest.h"
#include "fekete/ca_file.hpp"

using namespace fekete;

namespace {

std::string key_of(const std::string& text) {
  try {
    parse_ca_description(text);
  } catch (const FormatError& e) {
    return e.key();
  }
  return "(no error)";
}

}  // namespace

TEST_CASE("table description") {
  const auto d = parse_ca_description(R"({
    "dimension": 1, "states": 2, "neighborhood": [[0], [1]], "rule": {"table": [0, 0, 0, 1]}
  })");
  CHECK(d.ca.rule_table() == make_builtin("and1d").rule_table());
  CHECK_FALSE(d.labeled);
  CHECK(d.labels == std::vector<std::string>{"0", "1"});
}

TEST_CASE("labelled states map by first occurrence and bare 1D offsets are accepted") {
  const auto d = parse_ca_description(R"({
    "dimension": 1, "states": ["on", "off"], "neighborhood": [1, 0],
    "rule": {"table": ["on", "off", "off", "off"]}
  })");
  CHECK(d.labeled);
  CHECK(d.labels == std::vector<std::string>{"on", "off"});
  CHECK(d.ca.state_count() == 2);
  CHECK(d.ca.neighborhood() == std::vector<Offset>{{1}, {0}});
  CHECK(d.ca.rule_table() == std::vector<State>{0, 1, 1, 1});
}

TEST_CASE("builtin description, optionally cross-checked") {
  CHECK(parse_ca_description(R"({"rule": {"builtin": "and2d"}})").ca.dimension() == 2);
  CHECK(parse_ca_description(R"({"dimension": 1, "states": 2, "rule": {"builtin": "xor1d"}})").ca.name() == "xor1d");
  CHECK(key_of(R"({"dimension": 2, "rule": {"builtin": "xor1d"}})") == "dimension");
  CHECK(key_of(R"({"neighborhood": [0], "rule": {"builtin": "xor1d"}})") == "neighborhood");
  CHECK(key_of(R"({"rule": {"builtin": "rule30"}})") == "rule.builtin");
}

TEST_CASE("errors name the offending key") {
  CHECK(key_of("{not json") == "document");
  CHECK(key_of(R"({"states": 2, "neighborhood": [0], "rule": {"table": [0, 1]}})") == "dimension");
  CHECK(key_of(R"({"dimension": 1, "neighborhood": [0], "rule": {"table": [0, 1]}})") == "states");
  CHECK(key_of(R"({"dimension": 1, "states": 1, "neighborhood": [0], "rule": {"table": [0]}})") == "states");
  CHECK(key_of(R"({"dimension": 1, "states": ["a", "a"], "neighborhood": [0], "rule": {"table": [0, 1]}})") == "states");
  CHECK(key_of(R"({"dimension": 1, "states": 2, "rule": {"table": [0, 1]}})") == "neighborhood");
  CHECK(key_of(R"({"dimension": 1, "states": 2, "neighborhood": [0, 0], "rule": {"table": [0, 1, 1, 0]}})") == "neighborhood");
  CHECK(key_of(R"({"dimension": 2, "states": 2, "neighborhood": [[0]], "rule": {"table": [0, 1]}})") == "neighborhood");
  CHECK(key_of(R"({"dimension": 1, "states": 2, "neighborhood": [0, 1], "rule": {"table": [0, 1, 1]}})") == "rule.table");
  CHECK(key_of(R"({"dimension": 1, "states": 2, "neighborhood": [0], "rule": {"table": [0, 2]}})") == "rule.table");
  CHECK(key_of(R"({"dimension": 1, "states": ["a", "b"], "neighborhood": [0], "rule": {"table": ["a", "c"]}})") == "rule.table");
  CHECK(key_of(R"({"dimension": 1, "states": 2, "neighborhood": [0]})") == "rule");
  CHECK(key_of(R"({"dimension": 1, "states": 2, "neighborhood": [0], "rule": {}})") == "rule");
}

TEST_CASE("function tables") {
  const auto table = parse_function_table("# f on a line\n1 2\n2, 5\n3\t6 # trailing\n\n");
  CHECK(table.size() == 3);
  CHECK(table.at({2}) == 5.0);
  const auto f = table_function(table);
  CHECK(f({3}) == 6.0);
  try {
    f({4});
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("missing index 4") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_function_table("1x2 3\n1 4\n"), FormatError);
  CHECK_THROWS_AS(parse_function_table("1 3\n1 4\n"), FormatError);
  CHECK_THROWS_AS(parse_function_table("1 abc\n"), FormatError);
  CHECK_THROWS_AS(parse_function_table("# nothing\n"), FormatError);
  CHECK(parse_function_table("2x3 1.5").at({2, 3}) == 1.5);
}

TEST_CASE("builtin functions") {
  CHECK(builtin_function("3n")({13}) == 39.0);
  CHECK(builtin_function("xy+x+y")({5, 5}) == 35.0);
  CHECK(builtin_function("n+ceil-log2")({1}) == 2.0);
  CHECK(builtin_function("n+ceil-log2")({7}) == 10.0);
  CHECK(builtin_function("n+ceil-log2")({8}) == 12.0);
  CHECK(builtin_function("n^2")({4}) == 16.0);
  CHECK_THROWS_AS(builtin_function("sin"), FormatError);
}
