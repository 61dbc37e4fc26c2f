#include "fekete/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace fekete {

double log_q(const BigInt& value, State q) {
  if (auto k = exact_log(value, q)) return static_cast<double>(*k);
  return log2_big(value) / std::log2(static_cast<double>(q));
}

LossRecord loss(const CellularAutomaton& ca, const OutRecord& record) {
  const double volume = record.sides.volume_d();
  const double log_out = log_q(record.out_size, ca.state_count());
  LossRecord out;
  out.sides = record.sides;
  out.lambda_loss = volume - log_out;
  out.ratio = log_out / volume;
  out.lambda_bits = out.lambda_loss * std::log2(static_cast<double>(ca.state_count()));
  return out;
}

// ---------------------------------------------------------------------------

std::vector<OutRow> out_table(const CellularAutomaton& ca, const std::vector<MultiIndex>& sizes,
                              const CountOptions& options) {
  for (const auto& x : sizes) {
    if (x.dimension() != ca.dimension()) {
      throw std::invalid_argument("size " + x.to_string() + " does not match dimension " +
                                  std::to_string(ca.dimension()));
    }
  }
  const bool transfer = options.method == MethodChoice::Transfer ||
                        (options.method == MethodChoice::Auto && ca.dimension() == 1);
  if (options.method == MethodChoice::Transfer && ca.dimension() != 1) {
    throw std::invalid_argument("transfer method requires dimension 1");
  }

  std::vector<OutRow> rows;
  rows.reserve(sizes.size());
  if (transfer && !sizes.empty()) {
    std::uint64_t n_max = 0;
    for (const auto& x : sizes) n_max = std::max(n_max, x[0]);
    try {
      const auto records = out_size_transfer_1d(ca, n_max, options.transfer);
      for (const auto& x : sizes) rows.push_back({x, records[x[0] - 1], {}});
      return rows;
    } catch (const BudgetExceeded& e) {
      if (options.method == MethodChoice::Transfer) {
        for (const auto& x : sizes) rows.push_back({x, std::nullopt, e.what()});
        return rows;
      }
      // Auto falls back to brute force.
    }
  }
  for (const auto& x : sizes) {
    try {
      rows.push_back({x, out_size_bruteforce(ca, x, options.brute), {}});
    } catch (const BudgetExceeded& e) {
      rows.push_back({x, std::nullopt, e.what()});
    }
  }
  return rows;
}

std::vector<Violation> check_log_subadditivity(const std::map<MultiIndex, BigInt>& table) {
  std::vector<Violation> out;
  // Logs decide all clear cases; exact products settle near-ties.
  std::map<MultiIndex, double> logs;
  for (const auto& [x, v] : table) logs[x] = log2_big(v);
  for (const auto& [joined, out_joined] : table) {
    for (std::size_t j = 0; j < joined.dimension(); ++j) {
      for (std::uint64_t a = 1; a < joined[j]; ++a) {
        const MultiIndex x = joined.with(j, a);
        const MultiIndex y = joined.with(j, joined[j] - a);
        if (x > y) continue;  // the split is symmetric
        const auto ix = table.find(x), iy = table.find(y);
        if (ix == table.end() || iy == table.end()) continue;
        const double lhs = logs[joined], rhs = logs[x] + logs[y];
        const bool clear = lhs < rhs - 1e-9 * std::max(1.0, rhs);
        if (!clear && out_joined > ix->second * iy->second) {
          out.push_back({Violation::Kind::Subadditivity, j, x, joined[j] - a, lhs, rhs});
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

LambdaEstimate lambda_estimate(const CellularAutomaton& ca, const std::vector<MultiIndex>& schedule,
                               const CountOptions& options) {
  if (schedule.empty()) throw std::invalid_argument("lambda_estimate: empty schedule");
  LambdaEstimate out;
  std::map<MultiIndex, BigInt> counts;
  std::vector<MultiIndex> computed;
  for (auto& row : out_table(ca, schedule, options)) {
    if (!row.record) {
      out.refused.push_back(row.sides);
      continue;
    }
    out.table.push_back(loss(ca, *row.record));
    computed.push_back(row.sides);
    counts[row.sides] = row.record->out_size;
  }
  out.partial = !out.refused.empty();
  if (computed.empty()) throw BudgetExceeded("lambda_estimate: every scheduled size was refused", 0, 0);

  out.subadditivity_violations = check_log_subadditivity(counts);
  const State q = ca.state_count();
  const SubadditiveFn log_out(
      ca.dimension(),
      [&counts, q](const MultiIndex& x) {
        const auto it = counts.find(x);
        if (it == counts.end()) throw std::out_of_range("no Out_f value at " + x.to_string());
        return log_q(it->second, q);
      },
      "log_q Out_f");
  out.bracket = fekete_limit_estimate(log_out, computed.back(), computed);
  out.bracket.upper = std::clamp(out.bracket.upper, 0.0, 1.0);
  out.bracket.lower = std::clamp(out.bracket.lower, 0.0, out.bracket.upper);
  return out;
}

// ---------------------------------------------------------------------------

MultiIndex boundary_ratio_threshold(const std::vector<std::uint64_t>& r, double epsilon) {
  if (r.empty()) throw std::invalid_argument("boundary_ratio_threshold: empty r");
  if (!(epsilon > 0)) throw std::invalid_argument("boundary_ratio_threshold: epsilon must be positive");
  auto below = [&](std::uint64_t k) {
    double ratio = 1.0;
    for (auto ri : r) ratio *= 1.0 + static_cast<double>(ri) / static_cast<double>(k);
    return ratio < 1.0 + epsilon;
  };
  std::uint64_t hi = 1;
  while (!below(hi)) {
    if (hi > (std::uint64_t{1} << 62)) throw std::overflow_error("boundary_ratio_threshold: epsilon too small");
    hi *= 2;
  }
  std::uint64_t lo = hi / 2;  // below(lo) is false, or lo == 0
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (below(mid) ? hi : lo) = mid;
  }
  return MultiIndex::diagonal(r.size(), hi);
}

double boundary_excess(const MultiIndex& x, const std::vector<std::uint64_t>& r, double K) {
  if (r.size() != x.dimension()) throw std::invalid_argument("boundary sides r: dimension mismatch");
  double padded = 1.0;
  for (std::size_t i = 0; i < r.size(); ++i) padded *= static_cast<double>(x[i] + r[i]);
  return padded - x.volume_d() + K;
}

ThresholdReport theorem2_threshold(const CellularAutomaton& ca, double K,
                                   const std::vector<std::uint64_t>& r, std::optional<double> delta,
                                   const MultiIndex& search_box, const CountOptions& options,
                                   bool assume_nonsurjective) {
  if (K < 0) throw std::invalid_argument("theorem2_threshold: K must be nonnegative");
  if (r.size() != ca.dimension() || search_box.dimension() != ca.dimension()) {
    throw std::invalid_argument("theorem2_threshold: dimension mismatch");
  }
  if (ca.dimension() == 1) {
    try {
      if (decide_surjectivity_1d(ca, options.transfer).surjective) {
        throw std::invalid_argument("theorem2_threshold: the automaton is surjective");
      }
    } catch (const BudgetExceeded&) {
      if (!assume_nonsurjective) throw;
    }
  } else if (!assume_nonsurjective) {
    const auto verdict = surjectivity_report(ca, options);
    if (verdict.verdict != Verdict::Nonsurjective) {
      throw std::invalid_argument("theorem2_threshold: no orphan known; nonsurjectivity not established");
    }
  }

  ThresholdReport report;
  report.K = K;
  report.r = r;
  std::map<MultiIndex, LossRecord> table;
  for (auto& row : out_table(ca, boxes_below(search_box), options)) {
    if (!row.record) {
      report.refused.push_back(row.sides);
      continue;
    }
    const LossRecord rec = loss(ca, *row.record);
    report.losses.push_back(rec);
    table.emplace(rec.sides, rec);
    report.lambda_upper = std::min(report.lambda_upper, rec.ratio);
  }
  report.delta = delta.value_or((report.lambda_upper + 1.0) / 2.0);
  if (!(report.delta > 0.0 && report.delta < 1.0)) {
    throw std::invalid_argument("theorem2_threshold: delta must lie in (0, 1)");
  }

  // x is bad when either sufficient condition fails; t qualifies iff no bad x
  // lies above it. The lexicographically least qualifying t is <=_pi-minimal.
  std::vector<MultiIndex> bad;
  for (const auto& [x, rec] : table) {
    const bool variety = rec.ratio <= report.delta;
    // Relative slack so that exact ties such as 3/30 <= 1 - 0.9 are not lost to rounding.
    const double vol = x.volume_d();
    const bool boundary = boundary_excess(x, r, K) <= (1.0 - report.delta) * vol + 1e-12 * vol;
    if (!variety || !boundary) bad.push_back(x);
  }
  for (const auto& t : boxes_below(search_box)) {
    const bool qualifies = std::none_of(bad.begin(), bad.end(), [&](const auto& x) { return leq_pi(t, x); });
    if (qualifies) {
      report.t = t;
      break;
    }
  }
  if (!report.t) return report;

  report.inequality_verified = true;
  for (const auto& [x, rec] : table) {
    if (!leq_pi(*report.t, x)) continue;
    report.checked_region.push_back(x);
    if (rec.lambda_loss < boundary_excess(x, r, K)) report.inequality_verified = false;
  }
  return report;
}

// ---------------------------------------------------------------------------

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::ProvedSurjective: return "PROVED_SURJECTIVE";
    case Verdict::Nonsurjective: return "NONSURJECTIVE";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

// All sides with cost q^{|E+N|} within budget, by increasing cost, then lexicographically.
std::vector<MultiIndex> sizes_within_budget(const CellularAutomaton& ca, std::uint64_t budget) {
  const State q = ca.state_count();
  std::uint64_t max_cells = 0;
  for (std::uint64_t p = q; p <= budget; p *= q) {
    ++max_cells;
    if (p > budget / q) break;
  }
  if (max_cells == 0) return {};
  std::vector<std::pair<std::size_t, MultiIndex>> found;
  // Every side is at most |E| <= |E+N| <= max_cells.
  std::vector<std::uint64_t> cur(ca.dimension(), 1);
  std::function<void(std::size_t, std::uint64_t)> walk = [&](std::size_t i, std::uint64_t volume) {
    if (i == cur.size()) {
      const MultiIndex x(cur);
      const std::size_t cells = minkowski_sum(anchored_box(x), ca.neighborhood()).size();
      if (cells <= max_cells) found.emplace_back(cells, x);
      return;
    }
    for (std::uint64_t s = 1; volume * s <= max_cells; ++s) {
      cur[i] = s;
      walk(i + 1, volume * s);
    }
    cur[i] = 1;
  };
  walk(0, 1);
  std::sort(found.begin(), found.end());
  std::vector<MultiIndex> out;
  for (auto& [cells, x] : found) out.push_back(std::move(x));
  return out;
}

}  // namespace

SurjectivityVerdict surjectivity_report(const CellularAutomaton& ca, const CountOptions& options) {
  SurjectivityVerdict out;
  if (ca.dimension() == 1) {
    try {
      const auto decision = decide_surjectivity_1d(ca, options.transfer);
      if (decision.surjective) {
        out.verdict = Verdict::ProvedSurjective;
        out.note = "subset construction: empty subset unreachable (" +
                   std::to_string(decision.subsets_explored) + " subsets)";
        return out;
      }
      const MultiIndex sides{decision.orphan_word.size()};
      Pattern pattern{anchored_box(sides), decision.orphan_word};
      const BigInt code = pattern.code(ca.state_count());
      out.verdict = Verdict::Nonsurjective;
      out.certificate = OrphanCertificate{sides, std::move(pattern), code};
      out.note = "shortest orphan word from subset construction";
      return out;
    } catch (const BudgetExceeded& e) {
      out.note = e.what();
      // Fall through to the bounded orphan search.
    }
  }

  std::vector<MultiIndex> cleared;
  for (const auto& sides : sizes_within_budget(ca, options.brute.budget)) {
    if (auto orphan = find_orphan(ca, sides, options.brute)) {
      out.verdict = Verdict::Nonsurjective;
      out.certificate = std::move(orphan);
      out.note = "orphan found by exhaustive search";
      return out;
    }
    cleared.push_back(sides);
  }
  for (const auto& x : cleared) {
    const bool dominated = std::any_of(cleared.begin(), cleared.end(),
                                       [&](const auto& y) { return y != x && leq_pi(x, y); });
    if (!dominated) out.cleared_frontier.push_back(x);
  }
  std::sort(out.cleared_frontier.begin(), out.cleared_frontier.end());
  out.verdict = Verdict::Unknown;
  if (out.note.empty()) out.note = "no orphan within budget " + std::to_string(options.brute.budget);
  return out;
}

}  // namespace fekete
