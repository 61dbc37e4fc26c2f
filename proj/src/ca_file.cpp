#include "fekete/ca_file.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fekete {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::int64_t as_int(const json& value, const std::string& key) {
  if (!value.is_number_integer()) throw FormatError(key, "expected an integer");
  return value.get<std::int64_t>();
}

std::vector<Offset> parse_neighborhood(const json& doc, std::size_t dimension) {
  if (!doc.contains("neighborhood")) throw FormatError("neighborhood", "missing key");
  const json& list = doc["neighborhood"];
  if (!list.is_array() || list.empty()) throw FormatError("neighborhood", "expected a nonempty list");
  std::vector<Offset> out;
  for (const auto& entry : list) {
    Offset v;
    if (entry.is_number_integer() && dimension == 1) {
      v.push_back(entry.get<std::int64_t>());
    } else if (entry.is_array()) {
      for (const auto& c : entry) v.push_back(as_int(c, "neighborhood"));
    } else {
      throw FormatError("neighborhood", "offsets must be lists of integers");
    }
    if (v.size() != dimension) {
      throw FormatError("neighborhood", "offset of length " + std::to_string(v.size()) +
                                            " in dimension " + std::to_string(dimension));
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

CaDescription parse_ca_description(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError("document", e.what());
  }
  if (!doc.is_object()) throw FormatError("document", "expected a JSON object");
  if (!doc.contains("rule") || !doc["rule"].is_object()) throw FormatError("rule", "missing key");
  const json& rule = doc["rule"];

  if (rule.contains("builtin")) {
    if (!rule["builtin"].is_string()) throw FormatError("rule.builtin", "expected a name");
    CellularAutomaton ca = [&] {
      try {
        return make_builtin(rule["builtin"].get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw FormatError("rule.builtin", e.what());
      }
    }();
    if (doc.contains("dimension") &&
        static_cast<std::size_t>(as_int(doc["dimension"], "dimension")) != ca.dimension()) {
      throw FormatError("dimension", "does not match builtin " + ca.name());
    }
    if (doc.contains("states") && doc["states"].is_number_integer() &&
        static_cast<State>(doc["states"].get<std::int64_t>()) != ca.state_count()) {
      throw FormatError("states", "does not match builtin " + ca.name());
    }
    if (doc.contains("neighborhood") && parse_neighborhood(doc, ca.dimension()) != ca.neighborhood()) {
      throw FormatError("neighborhood", "does not match builtin " + ca.name());
    }
    CaDescription out{std::move(ca), {}, false};
    for (State s = 0; s < out.ca.state_count(); ++s) out.labels.push_back(std::to_string(s));
    return out;
  }
  if (!rule.contains("table")) throw FormatError("rule", "expected \"table\" or \"builtin\"");

  if (!doc.contains("dimension")) throw FormatError("dimension", "missing key");
  const std::int64_t dimension = as_int(doc["dimension"], "dimension");
  if (dimension < 1) throw FormatError("dimension", "must be >= 1");

  if (!doc.contains("states")) throw FormatError("states", "missing key");
  const json& states = doc["states"];
  std::vector<std::string> labels;
  bool labeled = false;
  if (states.is_number_integer()) {
    const auto q = states.get<std::int64_t>();
    if (q < 2) throw FormatError("states", "at least two states are required");
    if (q > (std::int64_t{1} << 20)) throw FormatError("states", "too many states");
    for (std::int64_t s = 0; s < q; ++s) labels.push_back(std::to_string(s));
  } else if (states.is_array()) {
    labeled = true;
    for (const auto& label : states) {
      const std::string name = label.is_string() ? label.get<std::string>() : label.dump();
      if (std::find(labels.begin(), labels.end(), name) != labels.end()) {
        throw FormatError("states", "duplicate label '" + name + "'");
      }
      labels.push_back(name);
    }
    if (labels.size() < 2) throw FormatError("states", "at least two states are required");
  } else {
    throw FormatError("states", "expected an integer or a list of labels");
  }

  auto neighborhood = parse_neighborhood(doc, static_cast<std::size_t>(dimension));

  const json& table = rule["table"];
  if (!table.is_array()) throw FormatError("rule.table", "expected a list");
  std::vector<State> entries;
  entries.reserve(table.size());
  for (const auto& entry : table) {
    if (entry.is_number_integer()) {
      const auto s = entry.get<std::int64_t>();
      if (s < 0 || static_cast<std::size_t>(s) >= labels.size()) {
        throw FormatError("rule.table", "entry " + std::to_string(s) + " out of range");
      }
      entries.push_back(static_cast<State>(s));
    } else if (entry.is_string() && labeled) {
      const auto it = std::find(labels.begin(), labels.end(), entry.get<std::string>());
      if (it == labels.end()) throw FormatError("rule.table", "unknown label " + entry.dump());
      entries.push_back(static_cast<State>(it - labels.begin()));
    } else {
      throw FormatError("rule.table", "bad entry " + entry.dump());
    }
  }

  try {
    CellularAutomaton ca(static_cast<std::size_t>(dimension), static_cast<State>(labels.size()),
                         std::move(neighborhood), std::move(entries),
                         doc.value("name", std::string{}));
    return {std::move(ca), std::move(labels), labeled};
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    const std::string key = what.find("neighborhood") != std::string::npos ? "neighborhood"
                            : what.find("table") != std::string::npos      ? "rule.table"
                                                                           : "states";
    throw FormatError(key, what);
  }
}

CaDescription load_ca_description(const std::filesystem::path& path) {
  return parse_ca_description(read_file(path));
}

std::map<MultiIndex, double> parse_function_table(std::string_view text) {
  std::map<MultiIndex, double> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (auto& ch : line) {
      if (ch == ',' || ch == '\t') ch = ' ';
    }
    std::istringstream fields(line);
    std::string sides, value;
    if (!(fields >> sides)) continue;
    const std::string key = "line " + std::to_string(line_no);
    if (!(fields >> value)) throw FormatError(key, "expected 'sides value'");
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      const MultiIndex x = parse_sides(sides);
      if (!out.empty() && out.begin()->first.dimension() != x.dimension()) {
        throw FormatError(key, "dimension differs from earlier entries");
      }
      if (!out.emplace(x, v).second) throw FormatError(key, "duplicate entry " + x.to_string());
    } catch (const FormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw FormatError(key, e.what());
    }
  }
  if (out.empty()) throw FormatError("table", "no entries");
  return out;
}

std::map<MultiIndex, double> load_function_table(const std::filesystem::path& path) {
  return parse_function_table(read_file(path));
}

SubadditiveFn table_function(std::map<MultiIndex, double> table) {
  if (table.empty()) throw FormatError("table", "no entries");
  const std::size_t d = table.begin()->first.dimension();
  return SubadditiveFn(
      d,
      [table = std::move(table)](const MultiIndex& x) {
        const auto it = table.find(x);
        if (it == table.end()) throw FormatError("table", "missing index " + x.to_string());
        return it->second;
      },
      "table");
}

SubadditiveFn builtin_function(std::string_view name) {
  if (name == "3n") {
    return SubadditiveFn(1, [](const MultiIndex& x) { return 3.0 * static_cast<double>(x[0]); }, "3n");
  }
  if (name == "xy+x+y") {
    return SubadditiveFn(
        2,
        [](const MultiIndex& x) {
          const auto a = static_cast<double>(x[0]), b = static_cast<double>(x[1]);
          return a * b + a + b;
        },
        "xy+x+y");
  }
  if (name == "n+ceil-log2") {
    return SubadditiveFn(
        1,
        [](const MultiIndex& x) {
          // ceil(log2(n + 1)) is the bit length of n.
          return static_cast<double>(x[0]) + static_cast<double>(std::bit_width(x[0]));
        },
        "n+ceil-log2");
  }
  if (name == "n^2") {
    return SubadditiveFn(
        1, [](const MultiIndex& x) { return static_cast<double>(x[0]) * static_cast<double>(x[0]); },
        "n^2");
  }
  throw FormatError("function", "unknown builtin '" + std::string(name) + "'");
}

std::vector<std::string> builtin_function_names() { return {"3n", "xy+x+y", "n+ceil-log2", "n^2"}; }

}  // namespace fekete
