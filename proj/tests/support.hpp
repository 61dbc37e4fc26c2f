#pragma once
// Test-only helpers: an enumeration oracle that shares no code with the
// library's counting paths, and the seeded corpus of 1D rules.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "fekete/ca.hpp"

namespace fekete::testing {

/// Distinct images of F_E over an arbitrary (possibly translated) box, by
/// literal application of the local rule to every assignment of the cells of
/// E + N. Images are returned as row-major state vectors.
inline std::set<std::vector<State>> naive_images(const CellularAutomaton& ca, const RightPolytope& box) {
  std::set<Offset> input_cells;
  const auto out_cells = box.cells();
  for (const auto& x : out_cells) {
    for (const auto& v : ca.neighborhood()) {
      Offset y = x;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += v[i];
      input_cells.insert(y);
    }
  }
  std::map<Offset, State> config;
  for (const auto& c : input_cells) config[c] = 0;

  std::set<std::vector<State>> images;
  while (true) {
    std::vector<State> image;
    for (const auto& x : out_cells) {
      std::size_t index = 0;
      for (const auto& v : ca.neighborhood()) {
        Offset y = x;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += v[i];
        index = index * ca.state_count() + config.at(y);
      }
      image.push_back(ca.rule_table()[index]);
    }
    images.insert(std::move(image));
    auto it = config.begin();
    while (it != config.end() && ++it->second == ca.state_count()) {
      it->second = 0;
      ++it;
    }
    if (it == config.end()) return images;
  }
}

inline std::uint64_t naive_out(const CellularAutomaton& ca, const RightPolytope& box) {
  return naive_images(ca, box).size();
}

/// The 16 two-state rules on N = {0, +1}.
inline std::vector<CellularAutomaton> elementary_pair_rules() {
  std::vector<CellularAutomaton> out;
  for (unsigned rule = 0; rule < 16; ++rule) {
    std::vector<State> table(4);
    for (unsigned i = 0; i < 4; ++i) table[i] = (rule >> i) & 1;
    out.emplace_back(1, 2, std::vector<Offset>{{0}, {1}}, table, "pair" + std::to_string(rule));
  }
  return out;
}

/// Seeded random 1D rules with q <= 3 and n <= 3 distinct offsets inside a
/// window of span 3 placed at -2, -1 or 0.
inline std::vector<CellularAutomaton> random_rules(std::size_t count, std::uint64_t seed = 0) {
  std::mt19937_64 rng(seed);
  std::vector<CellularAutomaton> out;
  for (std::size_t k = 0; k < count; ++k) {
    const State q = 2 + static_cast<State>(rng() % 2);
    const std::size_t n = 1 + rng() % 3;
    const std::int64_t start = -static_cast<std::int64_t>(rng() % 3);
    std::vector<std::int64_t> window{start, start + 1, start + 2};
    std::shuffle(window.begin(), window.end(), rng);
    std::vector<Offset> nbhd;
    for (std::size_t i = 0; i < n; ++i) nbhd.push_back({window[i]});
    std::size_t entries = 1;
    for (std::size_t i = 0; i < n; ++i) entries *= q;
    std::vector<State> table(entries);
    for (auto& e : table) e = static_cast<State>(rng() % q);
    out.emplace_back(1, q, std::move(nbhd), std::move(table), "random" + std::to_string(k));
  }
  return out;
}

}  // namespace fekete::testing
