#include "fekete/ca.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fekete {

CellularAutomaton::CellularAutomaton(std::size_t dimension, State state_count,
                                     std::vector<Offset> neighborhood,
                                     std::vector<State> rule_table, std::string name)
    : dimension_(dimension),
      state_count_(state_count),
      neighborhood_(std::move(neighborhood)),
      rule_table_(std::move(rule_table)),
      name_(std::move(name)) {
  if (dimension_ < 1) throw std::invalid_argument("CA: dimension must be >= 1");
  if (state_count_ < 2) throw std::invalid_argument("CA: at least two states are required");
  if (neighborhood_.empty()) throw std::invalid_argument("CA: neighborhood must be nonempty");
  std::set<Offset> seen;
  for (const auto& v : neighborhood_) {
    if (v.size() != dimension_) {
      throw std::invalid_argument("CA: neighborhood offset has wrong dimension");
    }
    if (!seen.insert(v).second) throw std::invalid_argument("CA: duplicate neighborhood offset");
  }
  const auto expected = checked_pow(state_count_, neighborhood_.size());
  if (!expected || *expected > (std::uint64_t{1} << 32)) {
    throw std::invalid_argument("CA: rule table would exceed 2^32 entries");
  }
  if (rule_table_.size() != *expected) {
    throw std::invalid_argument("CA: rule table has " + std::to_string(rule_table_.size()) +
                                " entries, expected q^n = " + std::to_string(*expected));
  }
  for (auto s : rule_table_) {
    if (s >= state_count_) throw std::invalid_argument("CA: rule table entry out of range");
  }
}

std::size_t CellularAutomaton::rule_index(std::span<const State> neighbor_states) const {
  if (neighbor_states.size() != neighborhood_.size()) {
    throw std::invalid_argument("apply_local: expected " + std::to_string(neighborhood_.size()) +
                                " states, got " + std::to_string(neighbor_states.size()));
  }
  std::size_t index = 0;
  for (auto s : neighbor_states) {
    if (s >= state_count_) throw std::invalid_argument("apply_local: state out of range");
    index = index * state_count_ + s;
  }
  return index;
}

State CellularAutomaton::apply_local(std::span<const State> neighbor_states) const {
  return rule_table_[rule_index(neighbor_states)];
}

// ---------------------------------------------------------------------------

bool RightPolytope::contains(const Offset& cell) const {
  if (cell.size() != dimension()) return false;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    if (cell[i] < origin[i] || cell[i] >= origin[i] + static_cast<std::int64_t>(sides[i])) {
      return false;
    }
  }
  return true;
}

std::vector<Offset> RightPolytope::cells() const {
  std::vector<Offset> out;
  out.reserve(volume());
  for (const auto& local : boxes_below(sides)) {
    Offset cell(dimension());
    for (std::size_t i = 0; i < cell.size(); ++i) {
      cell[i] = origin[i] + static_cast<std::int64_t>(local[i]) - 1;
    }
    out.push_back(std::move(cell));
  }
  return out;
}

RightPolytope anchored_box(const MultiIndex& sides) {
  return {Offset(sides.dimension(), 0), sides};
}

RightPolytope translate_support(const RightPolytope& box, const Offset& displacement) {
  if (displacement.size() != box.dimension()) {
    throw std::invalid_argument("translate_support: dimension mismatch");
  }
  RightPolytope out = box;
  for (std::size_t i = 0; i < displacement.size(); ++i) out.origin[i] += displacement[i];
  return out;
}

std::optional<std::size_t> CellSet::index_of(const Offset& cell) const {
  const auto it = std::lower_bound(cells.begin(), cells.end(), cell);
  if (it == cells.end() || *it != cell) return std::nullopt;
  return static_cast<std::size_t>(it - cells.begin());
}

CellSet minkowski_sum(const RightPolytope& box, std::span<const Offset> neighborhood) {
  std::set<Offset> cells;
  for (const auto& x : box.cells()) {
    for (const auto& v : neighborhood) {
      if (v.size() != x.size()) throw std::invalid_argument("minkowski_sum: dimension mismatch");
      Offset y(x.size());
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + v[i];
      cells.insert(std::move(y));
    }
  }
  CellSet out;
  out.cells.assign(cells.begin(), cells.end());
  const std::size_t d = box.dimension();
  Offset lo = out.cells.front(), hi = out.cells.front();
  for (const auto& c : out.cells) {
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], c[i]);
      hi[i] = std::max(hi[i], c[i]);
    }
  }
  std::vector<std::uint64_t> sides(d);
  for (std::size_t i = 0; i < d; ++i) sides[i] = static_cast<std::uint64_t>(hi[i] - lo[i] + 1);
  out.hull = {lo, MultiIndex(std::move(sides))};
  return out;
}

MultiIndex bounding_sides(std::span<const Offset> neighborhood) {
  if (neighborhood.empty()) throw std::invalid_argument("bounding_sides: empty neighborhood");
  const std::size_t d = neighborhood.front().size();
  std::vector<std::uint64_t> sides(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::int64_t lo = neighborhood.front()[i], hi = lo;
    for (const auto& v : neighborhood) {
      lo = std::min(lo, v.at(i));
      hi = std::max(hi, v.at(i));
    }
    sides[i] = static_cast<std::uint64_t>(hi - lo + 1);
  }
  return MultiIndex(std::move(sides));
}

// ---------------------------------------------------------------------------

BigInt Pattern::code(State state_count) const {
  BigInt out = 0;
  for (auto s : cells) {
    if (s >= state_count) throw std::invalid_argument("Pattern: state out of range");
    out = out * state_count + s;
  }
  return out;
}

Pattern Pattern::from_code(const RightPolytope& support, State state_count, const BigInt& code) {
  const std::uint64_t volume = support.volume();
  if (code < 0 || code >= pow_big(state_count, volume)) {
    throw std::invalid_argument("Pattern: code out of range");
  }
  Pattern out{support, std::vector<State>(volume)};
  BigInt rest = code;
  for (std::uint64_t k = volume; k-- > 0;) {
    out.cells[k] = static_cast<State>(rest % state_count);
    rest /= state_count;
  }
  return out;
}

Stencil make_stencil(const CellularAutomaton& ca, const RightPolytope& box) {
  if (box.dimension() != ca.dimension()) {
    throw std::invalid_argument("support dimension does not match the automaton");
  }
  Stencil st{box, minkowski_sum(box, ca.neighborhood()), {}};
  for (const auto& x : box.cells()) {
    std::vector<std::size_t> taps;
    taps.reserve(ca.neighborhood_size());
    for (const auto& v : ca.neighborhood()) {
      Offset y(x.size());
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + v[i];
      taps.push_back(*st.input.index_of(y));
    }
    st.taps.push_back(std::move(taps));
  }
  return st;
}

Pattern induced_map(const CellularAutomaton& ca, const RightPolytope& box,
                    const CellPattern& input) {
  const Stencil st = make_stencil(ca, box);
  if (input.support.cells != st.input.cells || input.states.size() != st.input.size()) {
    throw std::invalid_argument("induced_map: input support is not exactly E+N");
  }
  Pattern out{box, {}};
  out.cells.reserve(st.taps.size());
  std::vector<State> neighbors(ca.neighborhood_size());
  for (const auto& taps : st.taps) {
    for (std::size_t i = 0; i < taps.size(); ++i) neighbors[i] = input.states[taps[i]];
    out.cells.push_back(ca.apply_local(neighbors));
  }
  return out;
}

// ---------------------------------------------------------------------------

CellularAutomaton make_builtin(std::string_view name) {
  if (name == "shift") return CellularAutomaton(1, 2, {{1}}, {0, 1}, "shift");
  if (name == "and1d") return CellularAutomaton(1, 2, {{0}, {1}}, {0, 0, 0, 1}, "and1d");
  if (name == "xor1d") return CellularAutomaton(1, 2, {{0}, {1}}, {0, 1, 1, 0}, "xor1d");
  if (name == "and2d") {
    return CellularAutomaton(2, 2, {{0, 0}, {1, 0}, {0, 1}}, {0, 0, 0, 0, 0, 0, 0, 1}, "and2d");
  }
  throw std::invalid_argument("unknown builtin automaton '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() { return {"shift", "and1d", "xor1d", "and2d"}; }

}  // namespace fekete
