#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fekete/ca.hpp"
#include "fekete/subadditive.hpp"

namespace fekete {

/// A malformed input document; `key()` names the offending field.
class FormatError : public std::invalid_argument {
 public:
  FormatError(std::string key, const std::string& message)
      : std::invalid_argument(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// A parsed CA description. `labels[s]` is the name of canonical state s;
/// labels are assigned in first-occurrence order.
struct CaDescription {
  CellularAutomaton ca;
  std::vector<std::string> labels;
  bool labeled = false;
};

/// JSON document:
///   {"dimension": 1, "states": 2 | ["a", "b"], "neighborhood": [[0], [1]],
///    "rule": {"table": [...]} | {"builtin": "and1d"}}
/// In dimension 1 offsets may be written as bare integers.
CaDescription parse_ca_description(std::string_view text);
CaDescription load_ca_description(const std::filesystem::path& path);

/// Lines "AxB value" (or "AxB,value"); '#' starts a comment.
std::map<MultiIndex, double> parse_function_table(std::string_view text);
std::map<MultiIndex, double> load_function_table(const std::filesystem::path& path);

/// Table-backed function; evaluating a missing index throws FormatError naming it.
SubadditiveFn table_function(std::map<MultiIndex, double> table);

/// "3n", "xy+x+y", "n+ceil-log2", "n^2".
SubadditiveFn builtin_function(std::string_view name);
std::vector<std::string> builtin_function_names();

}  // namespace fekete
