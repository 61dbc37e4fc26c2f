#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace fekete {

/// A d-tuple of positive integers under the product ordering.
///
/// Indexes right d-polytopes by their sides. The default comparison operators
/// are lexicographic (used for containers and tie-breaking); the product order
/// is `leq_pi`.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<std::uint64_t> coords);
  explicit MultiIndex(std::vector<std::uint64_t> coords);

  static MultiIndex diagonal(std::size_t dimension, std::uint64_t value);

  std::size_t dimension() const { return coords_.size(); }
  std::uint64_t operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<std::uint64_t>& coords() const { return coords_; }

  /// Copy with coordinate j replaced.
  MultiIndex with(std::size_t j, std::uint64_t value) const;

  /// Product of the coordinates; throws std::overflow_error past 64 bits.
  std::uint64_t volume() const;
  double volume_d() const;

  /// "3x4x5"
  std::string to_string() const;

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<std::uint64_t> coords_;
};

/// x <=_pi y iff x_i <= y_i for all i. Throws std::invalid_argument on dimension mismatch.
bool leq_pi(const MultiIndex& x, const MultiIndex& y);

/// Coordinatewise max: an upper bound of both arguments in the product order.
MultiIndex join(const MultiIndex& x, const MultiIndex& y);

/// Parses "a x b x c" (whitespace around 'x' optional).
MultiIndex parse_sides(std::string_view text);

/// Parses a comma-separated list of sides, e.g. "1x1,2x2,3x3".
std::vector<MultiIndex> parse_sides_list(std::string_view text);

/// All boxes y with (1,...,1) <=_pi y <=_pi box, in lexicographic order.
std::vector<MultiIndex> boxes_below(const MultiIndex& box);

}  // namespace fekete
