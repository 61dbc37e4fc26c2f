#include "fekete/subadditive.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

namespace fekete {

SubadditiveFn::SubadditiveFn(std::size_t dimension, Eval eval, std::string name)
    : dimension_(dimension), eval_(std::move(eval)), name_(std::move(name)) {
  if (dimension_ == 0) throw std::invalid_argument("SubadditiveFn: dimension must be >= 1");
  if (!eval_) throw std::invalid_argument("SubadditiveFn: empty evaluator");
}

double SubadditiveFn::operator()(const MultiIndex& x) const {
  if (x.dimension() != dimension_) {
    throw std::invalid_argument("SubadditiveFn: expected dimension " + std::to_string(dimension_) +
                                ", got " + x.to_string());
  }
  return eval_(x);
}

double MemoizedFn::operator()(const MultiIndex& x) {
  if (auto it = cache_.find(x); it != cache_.end()) return it->second;
  const double value = fn_(x);
  cache_.emplace(x, value);
  return value;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

class TripleTester {
 public:
  TripleTester(const SubadditiveFn& fn, const SubadditivityOptions& options,
               SubadditivityCheck& out)
      : memo_(fn), options_(options), out_(out) {}

  void test(std::size_t j, const MultiIndex& x, std::uint64_t y) {
    ++out_.triples_tested;
    const MultiIndex joined = x.with(j, x[j] + y);
    const MultiIndex split = x.with(j, y);
    const double lhs = value(joined);
    const double rhs = value(x) + value(split);
    if (lhs > rhs + options_.tolerance * std::max(1.0, std::abs(rhs))) {
      out_.violations.push_back({Violation::Kind::Subadditivity, j, x, y, lhs, rhs});
    }
  }

 private:
  double value(const MultiIndex& x) {
    const double v = memo_(x);
    if (v < 0 && reported_negative_.insert(x).second) {
      out_.violations.push_back({Violation::Kind::Negative, 0, x, 0, v, 0.0});
    }
    return v;
  }

  MemoizedFn memo_;
  const SubadditivityOptions& options_;
  SubadditivityCheck& out_;
  std::set<MultiIndex> reported_negative_;
};

}  // namespace

SubadditivityCheck check_subadditivity(const SubadditiveFn& fn, const MultiIndex& box,
                                       const SubadditivityOptions& options) {
  if (box.dimension() != fn.dimension()) {
    throw std::invalid_argument("check_subadditivity: box dimension mismatch");
  }
  const std::size_t d = box.dimension();
  SubadditivityCheck out;
  out.seed = options.seed;

  // Triples with split along j: (prod_{i != j} b_i) * b_j (b_j - 1) / 2.
  std::vector<std::uint64_t> per_coordinate(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::uint64_t count = box[j] * (box[j] - 1) / 2;
    for (std::size_t i = 0; i < d; ++i) {
      if (i != j) count = saturating_mul(count, box[i]);
    }
    per_coordinate[j] = count;
    out.triple_space = saturating_add(out.triple_space, count);
  }

  TripleTester tester(fn, options, out);
  if (out.triple_space <= options.exhaustive_limit) {
    out.exhaustive = true;
    for (std::size_t j = 0; j < d; ++j) {
      if (box[j] < 2) continue;
      // x ranges over the box with x_j <= b_j - 1; y over 1..b_j - x_j.
      for (const auto& x : boxes_below(box.with(j, box[j] - 1))) {
        for (std::uint64_t y = 1; x[j] + y <= box[j]; ++y) tester.test(j, x, y);
      }
    }
    return out;
  }

  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> splittable;
  for (std::size_t j = 0; j < d; ++j) {
    if (box[j] >= 2) splittable.push_back(j);
  }
  std::uniform_int_distribution<std::size_t> pick_j(0, splittable.size() - 1);
  for (std::uint64_t k = 0; k < options.exhaustive_limit; ++k) {
    const std::size_t j = splittable[pick_j(rng)];
    std::vector<std::uint64_t> coords(d);
    for (std::size_t i = 0; i < d; ++i) {
      const std::uint64_t hi = (i == j) ? box[i] - 1 : box[i];
      coords[i] = std::uniform_int_distribution<std::uint64_t>(1, hi)(rng);
    }
    const std::uint64_t y = std::uniform_int_distribution<std::uint64_t>(1, box[j] - coords[j])(rng);
    tester.test(j, MultiIndex(std::move(coords)), y);
  }
  return out;
}

SubadditivityCheck check_subadditivity_table(const std::map<MultiIndex, double>& table,
                                             double tolerance) {
  SubadditivityCheck out;
  out.exhaustive = true;
  for (const auto& [x, v] : table) {
    if (v < 0) out.violations.push_back({Violation::Kind::Negative, 0, x, 0, v, 0.0});
  }
  for (const auto& [joined, lhs] : table) {
    for (std::size_t j = 0; j < joined.dimension(); ++j) {
      for (std::uint64_t a = 1; a < joined[j]; ++a) {
        const MultiIndex x = joined.with(j, a);
        const auto ix = table.find(x);
        const auto iy = table.find(joined.with(j, joined[j] - a));
        if (ix == table.end() || iy == table.end()) continue;
        ++out.triples_tested;
        const double rhs = ix->second + iy->second;
        if (lhs > rhs + tolerance * std::max(1.0, std::abs(rhs))) {
          out.violations.push_back({Violation::Kind::Subadditivity, j, x, joined[j] - a, lhs, rhs});
        }
      }
    }
  }
  out.triple_space = out.triples_tested;
  return out;
}

// ---------------------------------------------------------------------------

FeketeEstimate running_infimum(MemoizedFn& fn, const std::vector<MultiIndex>& schedule) {
  if (schedule.empty()) throw std::invalid_argument("running_infimum: empty schedule");
  FeketeEstimate est;
  est.running_inf = std::numeric_limits<double>::infinity();
  MultiIndex upper = schedule.front();
  for (const auto& x : schedule) {
    const double ratio = fn(x) / x.volume_d();
    est.evaluated_boxes.push_back(x);
    est.ratios.push_back(ratio);
    if (ratio < est.running_inf) {
      est.running_inf = ratio;
      est.argmin = x;
    }
    upper = join(upper, x);
  }

  const auto it = std::find(schedule.begin(), schedule.end(), upper);
  if (it != schedule.end()) {
    est.last_box = upper;
    est.last_ratio = est.ratios[static_cast<std::size_t>(it - schedule.begin())];
  } else {
    est.has_maximum = false;
    const auto lex_last = std::max_element(schedule.begin(), schedule.end());
    est.last_box = *lex_last;
    est.last_ratio = est.ratios[static_cast<std::size_t>(lex_last - schedule.begin())];
  }
  est.bracket_width = est.last_ratio - est.running_inf;
  return est;
}

FeketeEstimate running_infimum(const SubadditiveFn& fn, const std::vector<MultiIndex>& schedule) {
  MemoizedFn memo(fn);
  return running_infimum(memo, schedule);
}

double decomposition_bound(MemoizedFn& fn, const MultiIndex& t, const MultiIndex& x) {
  if (t.dimension() != x.dimension()) {
    throw std::invalid_argument("decomposition_bound: dimension mismatch");
  }
  const std::size_t d = x.dimension();
  if (d >= 63) throw std::invalid_argument("decomposition_bound: dimension too large");
  std::vector<std::uint64_t> q(d), r(d);
  for (std::size_t j = 0; j < d; ++j) {
    q[j] = (x[j] - 1) / t[j];
    r[j] = x[j] - q[j] * t[j];  // 1 <= r_j <= t_j
  }

  double bound = 0.0;
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << d); ++subset) {
    double multiplier = 1.0;
    std::vector<std::uint64_t> args(d);
    for (std::size_t j = 0; j < d; ++j) {
      if (subset >> j & 1) {
        args[j] = r[j];
      } else {
        args[j] = t[j];
        multiplier *= static_cast<double>(q[j]);
      }
    }
    if (multiplier == 0.0) continue;
    bound += multiplier * fn(MultiIndex(std::move(args)));
  }
  return bound;
}

double decomposition_bound(const SubadditiveFn& fn, const MultiIndex& t, const MultiIndex& x) {
  MemoizedFn memo(fn);
  return decomposition_bound(memo, t, x);
}

double decomposition_tail_constant(const SubadditiveFn& fn, const MultiIndex& t) {
  return t.volume_d() * fn(MultiIndex::diagonal(t.dimension(), 1));
}

FeketeBracket fekete_limit_estimate(const SubadditiveFn& fn, const MultiIndex& base,
                                    const std::vector<MultiIndex>& growth_schedule) {
  MemoizedFn memo(fn);
  FeketeBracket out;
  out.estimate = running_infimum(memo, growth_schedule);
  out.base = base;
  out.base_ratio = memo(base) / base.volume_d();
  out.upper = std::min(out.base_ratio, out.estimate.running_inf);

  const MultiIndex& top = out.estimate.last_box;
  const MultiIndex* previous = nullptr;
  for (const auto& y : out.estimate.evaluated_boxes) {
    if (y == top || !leq_pi(y, top)) continue;
    if (!previous || y.volume_d() > previous->volume_d()) previous = &y;
  }
  double rounding = 0.0;
  if (previous) {
    const double a = memo(top), b = memo(*previous), span = top.volume_d() - previous->volume_d();
    out.slope = (a - b) / span;
    // Each value carries a few ulps of error; the difference does not shrink them.
    rounding = 8 * std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b)) / span;
  }
  if (!out.slope || std::abs(*out.slope - out.upper) <= rounding) {
    out.lower = out.upper;
  } else {
    out.lower = std::min(out.upper, std::max(0.0, *out.slope - rounding));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<MultiIndex> diagonal_schedule(std::size_t dimension, std::uint64_t first,
                                          std::uint64_t last) {
  if (first < 1 || last < first) throw std::invalid_argument("diagonal_schedule: bad range");
  std::vector<MultiIndex> out;
  out.reserve(last - first + 1);
  for (std::uint64_t k = first; k <= last; ++k) out.push_back(MultiIndex::diagonal(dimension, k));
  return out;
}

std::vector<MultiIndex> geometric_schedule(const MultiIndex& start, std::uint64_t factor,
                                           std::uint64_t limit) {
  if (factor < 2) throw std::invalid_argument("geometric_schedule: factor must be >= 2");
  std::vector<MultiIndex> out;
  std::vector<std::uint64_t> cur = start.coords();
  while (std::all_of(cur.begin(), cur.end(), [&](auto c) { return c <= limit; })) {
    out.emplace_back(cur);
    for (auto& c : cur) {
      if (c > UINT64_MAX / factor) return out;
      c *= factor;
    }
  }
  if (out.empty()) throw std::invalid_argument("geometric_schedule: start exceeds limit");
  return out;
}

namespace {

std::pair<std::uint64_t, std::uint64_t> parse_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    throw std::invalid_argument("schedule: expected A..B, got '" + std::string(text) + "'");
  }
  auto parse = [&](std::string_view s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw std::invalid_argument("schedule: bad number '" + std::string(s) + "'");
    }
    return v;
  };
  return {parse(text.substr(0, dots)), parse(text.substr(dots + 2))};
}

}  // namespace

std::vector<MultiIndex> parse_schedule(std::string_view text, std::size_t dimension) {
  if (text.starts_with("diag:")) {
    const auto [a, b] = parse_range(text.substr(5));
    return diagonal_schedule(dimension, a, b);
  }
  if (text.starts_with("geom:")) {
    const auto [a, b] = parse_range(text.substr(5));
    return geometric_schedule(MultiIndex::diagonal(dimension, a), 2, b);
  }
  auto list = parse_sides_list(text);
  for (const auto& x : list) {
    if (x.dimension() != dimension) {
      throw std::invalid_argument("schedule: " + x.to_string() + " has dimension " +
                                  std::to_string(x.dimension()) + ", expected " +
                                  std::to_string(dimension));
    }
  }
  return list;
}

}  // namespace fekete
