#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fekete/bigint.hpp"
#include "fekete/multi_index.hpp"

namespace fekete {

using State = std::uint32_t;
using Offset = std::vector<std::int64_t>;

/// The quadruple <d, Q, N, f> with Q = {0, ..., q-1} and f stored as a table.
///
/// The table entry for neighbour states (s_1, ..., s_n) sits at index
/// sum_i s_i * q^(n-i). Neighbourhood order is significant.
class CellularAutomaton {
 public:
  CellularAutomaton(std::size_t dimension, State state_count, std::vector<Offset> neighborhood,
                    std::vector<State> rule_table, std::string name = {});

  std::size_t dimension() const { return dimension_; }
  State state_count() const { return state_count_; }
  std::size_t neighborhood_size() const { return neighborhood_.size(); }
  const std::vector<Offset>& neighborhood() const { return neighborhood_; }
  const std::vector<State>& rule_table() const { return rule_table_; }
  const std::string& name() const { return name_; }

  /// Canonical table index of a neighbour-state tuple.
  std::size_t rule_index(std::span<const State> neighbor_states) const;

  /// f(s_1, ..., s_n). Throws std::invalid_argument on wrong arity or out-of-range states.
  State apply_local(std::span<const State> neighbor_states) const;

  /// Lookup without validation, for the enumeration hot loops.
  State lookup(std::size_t index) const { return rule_table_[index]; }

 private:
  std::size_t dimension_;
  State state_count_;
  std::vector<Offset> neighborhood_;
  std::vector<State> rule_table_;
  std::string name_;
};

/// prod_i {origin_i, ..., origin_i + sides_i - 1}
struct RightPolytope {
  Offset origin;
  MultiIndex sides;

  std::size_t dimension() const { return sides.dimension(); }
  std::uint64_t volume() const { return sides.volume(); }
  bool contains(const Offset& cell) const;
  /// Cells in row-major order (last coordinate fastest).
  std::vector<Offset> cells() const;

  friend bool operator==(const RightPolytope&, const RightPolytope&) = default;
};

/// E(x_1, ..., x_d) = prod {0, ..., x_i - 1}.
RightPolytope anchored_box(const MultiIndex& sides);

RightPolytope translate_support(const RightPolytope& box, const Offset& displacement);

/// An exact finite cell set together with its tight bounding box.
struct CellSet {
  RightPolytope hull;
  std::vector<Offset> cells;  // sorted lexicographically (row-major within the hull)

  std::size_t size() const { return cells.size(); }
  std::optional<std::size_t> index_of(const Offset& cell) const;
};

/// E + N = {x + v | x in E, v in N}, exact.
CellSet minkowski_sum(const RightPolytope& box, std::span<const Offset> neighborhood);

/// Sides of the tightest box containing the neighbourhood.
MultiIndex bounding_sides(std::span<const Offset> neighborhood);

/// States on the cells of a right polytope, row-major.
///
/// The canonical code sum_k cells[k] * q^(volume-1-k) is a bijection onto
/// 0 .. q^volume - 1.
struct Pattern {
  RightPolytope support;
  std::vector<State> cells;

  BigInt code(State state_count) const;
  static Pattern from_code(const RightPolytope& support, State state_count, const BigInt& code);

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// States on an arbitrary exact cell set (the input side of F_E).
struct CellPattern {
  CellSet support;
  std::vector<State> states;  // parallel to support.cells
};

/// For each output cell of E (row-major), the positions within E + N of its
/// neighbours, in neighbourhood order.
struct Stencil {
  RightPolytope output;
  CellSet input;
  std::vector<std::vector<std::size_t>> taps;  // [output cell][neighbour]
};

Stencil make_stencil(const CellularAutomaton& ca, const RightPolytope& box);

/// F_E: Q^{E+N} -> Q^E. Throws std::invalid_argument unless input covers E+N exactly.
Pattern induced_map(const CellularAutomaton& ca, const RightPolytope& box, const CellPattern& input);

/// shift, and1d, xor1d, and2d.
CellularAutomaton make_builtin(std::string_view name);

/// Names accepted by make_builtin.
std::vector<std::string> builtin_names();

}  // namespace fekete
