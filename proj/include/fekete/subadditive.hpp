#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fekete/multi_index.hpp"

namespace fekete {

/// A nonnegative function on positive integer d-tuples, expected (not assumed)
/// to be subadditive in each coordinate separately.
class SubadditiveFn {
 public:
  using Eval = std::function<double(const MultiIndex&)>;

  SubadditiveFn(std::size_t dimension, Eval eval, std::string name = {});

  std::size_t dimension() const { return dimension_; }
  const std::string& name() const { return name_; }

  /// Throws std::invalid_argument if x has the wrong dimension.
  double operator()(const MultiIndex& x) const;

 private:
  std::size_t dimension_;
  Eval eval_;
  std::string name_;
};

/// Caches evaluations of a SubadditiveFn for the duration of one computation.
class MemoizedFn {
 public:
  explicit MemoizedFn(const SubadditiveFn& fn) : fn_(fn) {}

  double operator()(const MultiIndex& x);
  std::size_t evaluations() const { return cache_.size(); }

 private:
  const SubadditiveFn& fn_;
  std::map<MultiIndex, double> cache_;
};

struct Violation {
  enum class Kind {
    Subadditivity,  // f(.., x_j + y_j, ..) > f(.., x_j, ..) + f(.., y_j, ..)
    Negative,       // f(x) < 0: the hypothesis itself fails
  };
  Kind kind;
  std::size_t coordinate;  // j (0-based); unused for Negative
  MultiIndex x;
  std::uint64_t y;  // y_j; 0 for Negative
  double lhs;
  double rhs;
};

struct SubadditivityCheck {
  std::vector<Violation> violations;
  bool exhaustive = false;
  std::uint64_t triples_tested = 0;
  std::uint64_t triple_space = 0;  // saturates at UINT64_MAX
  std::uint64_t seed = 0;

  bool passed() const { return violations.empty(); }
};

struct SubadditivityOptions {
  std::uint64_t exhaustive_limit = 1'000'000;
  std::uint64_t seed = 0;
  /// Relative slack for floating-point noise: lhs <= rhs + tolerance * max(1, |rhs|).
  double tolerance = 1e-9;
};

/// Tests the coordinate-wise inequality on triples (j, x, y_j) with x and the
/// split x_j + y_j inside `box`. Exhaustive when the triple count is at most
/// `exhaustive_limit`; otherwise `exhaustive_limit` seeded random triples.
SubadditivityCheck check_subadditivity(const SubadditiveFn& fn, const MultiIndex& box,
                                       const SubadditivityOptions& options = {});

/// Exhaustive check restricted to a finite table: every triple whose three
/// points are all present is tested, plus the sign of every value.
SubadditivityCheck check_subadditivity_table(const std::map<MultiIndex, double>& table,
                                             double tolerance = 1e-9);

struct FeketeEstimate {
  double running_inf = 0.0;
  double last_ratio = 0.0;
  double bracket_width = 0.0;  // last_ratio - running_inf
  std::vector<MultiIndex> evaluated_boxes;
  std::vector<double> ratios;  // f(x)/prod(x), parallel to evaluated_boxes
  MultiIndex argmin;
  MultiIndex last_box;
  /// False when the schedule has no <=_pi-maximum; last_box is then the
  /// lexicographically last scheduled box.
  bool has_maximum = true;
};

/// min over the schedule of f(x)/prod(x), and the ratio at the largest box.
FeketeEstimate running_infimum(const SubadditiveFn& fn, const std::vector<MultiIndex>& schedule);
FeketeEstimate running_infimum(MemoizedFn& fn, const std::vector<MultiIndex>& schedule);

/// Upper bound on f(x) obtained by dividing every coordinate by t:
/// x_j = q_j t_j + r_j with 1 <= r_j <= t_j, then summing over all subsets S of
/// coordinates (prod_{j not in S} q_j) * f(t off S, r on S).
double decomposition_bound(const SubadditiveFn& fn, const MultiIndex& t, const MultiIndex& x);
double decomposition_bound(MemoizedFn& fn, const MultiIndex& t, const MultiIndex& x);

/// The constant t_1...t_d * f(1,...,1) bounding every tail term of the decomposition.
double decomposition_tail_constant(const SubadditiveFn& fn, const MultiIndex& t);

struct FeketeBracket {
  FeketeEstimate estimate;
  MultiIndex base;
  double base_ratio = 0.0;
  /// Certified: the limit equals the infimum of all ratios, hence is at most
  /// every evaluated ratio (including the base).
  double upper = 0.0;
  /// Increment slope (f(x_last) - f(x_prev)) / (prod x_last - prod x_prev)
  /// over the two largest comparable scheduled boxes. Not a certified bound.
  std::optional<double> slope;
  /// min(upper, max(0, slope)); equals upper when no slope is available.
  double lower = 0.0;

  double width() const { return upper - lower; }
  bool contains(double value) const { return lower <= value && value <= upper; }
};

/// Brackets the directed-set limit of f(x)/prod(x). `growth_schedule` is
/// evaluated in order; subadditivity is the caller's responsibility.
FeketeBracket fekete_limit_estimate(const SubadditiveFn& fn, const MultiIndex& base,
                                    const std::vector<MultiIndex>& growth_schedule);

// Schedules ------------------------------------------------------------------

/// (k, ..., k) for k = first..last.
std::vector<MultiIndex> diagonal_schedule(std::size_t dimension, std::uint64_t first,
                                          std::uint64_t last);

/// start, start*factor, start*factor^2, ... (coordinatewise) while every
/// coordinate stays <= limit.
std::vector<MultiIndex> geometric_schedule(const MultiIndex& start, std::uint64_t factor,
                                           std::uint64_t limit);

/// "diag:A..B", "geom:A..B" (doubling from A up to B), or an explicit
/// comma-separated list "1x1,2x2".
std::vector<MultiIndex> parse_schedule(std::string_view text, std::size_t dimension);

}  // namespace fekete
