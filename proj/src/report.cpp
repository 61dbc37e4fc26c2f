#include "fekete/report.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace fekete {

std::string format_real(double value) {
  std::string s = fmt::format("{:.12g}", value);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace {

std::string sides_columns(const MultiIndex& x) {
  std::string s;
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    if (i) s += ',';
    s += std::to_string(x[i]);
  }
  return s;
}

std::string sides_spaced(const MultiIndex& x) {
  std::string s;
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    if (i) s += " x ";
    s += std::to_string(x[i]);
  }
  return s;
}

}  // namespace

void write_out_table_csv(std::ostream& out, const CellularAutomaton& ca, const std::vector<OutRow>& rows) {
  for (std::size_t i = 1; i <= ca.dimension(); ++i) out << 'x' << i << ',';
  out << "out_size,full_size,ratio,lambda_qits\n";
  std::vector<std::string> reasons;
  for (const auto& row : rows) {
    out << sides_columns(row.sides) << ',';
    if (row.record) {
      const LossRecord rec = loss(ca, *row.record);
      out << to_decimal(row.record->out_size) << ',' << to_decimal(row.record->full_size) << ','
          << format_real(rec.ratio) << ',' << format_real(rec.lambda_loss) << '\n';
    } else {
      out << "refused," << to_decimal(pow_big(ca.state_count(), row.sides.volume())) << ",,\n";
      reasons.push_back(row.sides.to_string() + ": " + row.refusal);
    }
  }
  for (const auto& r : reasons) out << "# refused " << r << '\n';
}

std::vector<std::string> pattern_grid(const Pattern& pattern, State state_count) {
  const std::uint64_t row_length = pattern.support.sides[pattern.support.dimension() - 1];
  const bool compact = state_count <= 10;
  std::vector<std::string> rows;
  std::string row;
  for (std::size_t k = 0; k < pattern.cells.size(); ++k) {
    if (!compact && !row.empty()) row += ' ';
    row += std::to_string(pattern.cells[k]);
    if ((k + 1) % row_length == 0) {
      rows.push_back(std::move(row));
      row.clear();
    }
  }
  return rows;
}

std::string certificate_block(const OrphanCertificate& certificate, State state_count) {
  std::string s = "```certificate\n";
  s += "sides: " + sides_spaced(certificate.sides) + "\n";
  for (const auto& row : pattern_grid(certificate.pattern, state_count)) s += row + "\n";
  s += "code: " + to_decimal(certificate.code) + "\n";
  s += "```\n";
  return s;
}

void write_verdict(std::ostream& out, const CaDescription& description, const SurjectivityVerdict& verdict) {
  const auto& ca = description.ca;
  out << "verdict: " << to_string(verdict.verdict) << '\n';
  out << "automaton: " << (ca.name().empty() ? "(unnamed)" : ca.name()) << " (d=" << ca.dimension()
      << ", q=" << ca.state_count() << ", n=" << ca.neighborhood_size() << ")\n";
  if (description.labeled) {
    out << "states:";
    for (std::size_t s = 0; s < description.labels.size(); ++s) out << ' ' << s << '=' << description.labels[s];
    out << '\n';
  }
  if (!verdict.note.empty()) out << "note: " << verdict.note << '\n';
  if (verdict.certificate) {
    const auto& cert = *verdict.certificate;
    if (ca.dimension() == 1) {
      out << "orphan: " << pattern_grid(cert.pattern, ca.state_count()).front() << '\n';
    } else {
      out << "orphan at sides " << cert.sides.to_string() << '\n';
    }
    out << certificate_block(cert, ca.state_count());
  }
  if (verdict.verdict == Verdict::Unknown) {
    out << "cleared frontier:";
    if (verdict.cleared_frontier.empty()) out << " (none)";
    out << '\n';
    for (const auto& x : verdict.cleared_frontier) out << "  " << x.to_string() << '\n';
  }
}

void write_lambda_report(std::ostream& out, const CellularAutomaton& ca, const LambdaEstimate& est) {
  const auto& b = est.bracket;
  out << fmt::format("lambda_f bracket: [{:.6f}, {:.6f}]\n", b.lower, b.upper);
  out << "upper (certified, infimum of ratios): " << format_real(b.upper) << '\n';
  out << "lower (increment slope, estimate): " << format_real(b.lower) << '\n';
  out << "running_inf: " << format_real(b.estimate.running_inf) << " at " << b.estimate.argmin.to_string() << '\n';
  out << "last_ratio: " << format_real(b.estimate.last_ratio) << " at " << b.estimate.last_box.to_string()
      << (b.estimate.has_maximum ? "" : " (schedule has no maximum; lexicographically last)") << '\n';
  out << "surjective iff lambda_f = 1\n";
  out << "partial: " << (est.partial ? "yes" : "no") << '\n';
  for (const auto& x : est.refused) out << "# refused " << x.to_string() << '\n';
  if (!est.subadditivity_violations.empty()) {
    out << "log-subadditivity violations:\n";
    write_violations(out, est.subadditivity_violations);
  }
  out << "ratios:\n";
  for (std::size_t i = 1; i <= ca.dimension(); ++i) out << 'x' << i << ',';
  out << "ratio,lambda_qits\n";
  for (const auto& rec : est.table) {
    out << sides_columns(rec.sides) << ',' << format_real(rec.ratio) << ',' << format_real(rec.lambda_loss) << '\n';
  }
}

void write_threshold_report(std::ostream& out, const ThresholdReport& report) {
  out << "K: " << format_real(report.K) << '\n';
  out << "r:";
  for (auto v : report.r) out << ' ' << v;
  out << '\n';
  out << "delta: " << format_real(report.delta) << '\n';
  out << "lambda upper (search box): " << format_real(report.lambda_upper) << '\n';
  if (!report.t) {
    out << "threshold: none within the search box\n";
    return;
  }
  out << "threshold: " << report.t->to_string() << '\n';
  out << "inequality verified: " << (report.inequality_verified ? "yes" : "no") << " on "
      << report.checked_region.size() << " computed sizes\n";
  for (const auto& x : report.refused) out << "# refused " << x.to_string() << '\n';
}

void write_violations(std::ostream& out, const std::vector<Violation>& violations) {
  for (const auto& v : violations) {
    if (v.kind == Violation::Kind::Negative) {
      out << "  negative value f(" << v.x.to_string() << ") = " << format_real(v.lhs) << '\n';
    } else {
      out << "  j=" << v.coordinate + 1 << " x=" << v.x.to_string() << " y=" << v.y << ": "
          << format_real(v.lhs) << " > " << format_real(v.rhs) << '\n';
    }
  }
}

void write_fekete_report(std::ostream& out, const SubadditivityCheck& check,
                         const std::optional<FeketeBracket>& bracket) {
  out << "subadditivity: " << (check.passed() ? "ok" : "VIOLATED") << " ("
      << (check.exhaustive ? "exhaustive" : "sampled, seed " + std::to_string(check.seed)) << ", "
      << check.triples_tested << " triples)\n";
  if (!check.passed()) {
    out << "violations:\n";
    write_violations(out, check.violations);
    out << "estimate suppressed: hypothesis fails\n";
    return;
  }
  if (!bracket) return;
  const auto& b = *bracket;
  out << "running_inf: " << format_real(b.estimate.running_inf) << " at " << b.estimate.argmin.to_string() << '\n';
  out << "last_ratio: " << format_real(b.estimate.last_ratio) << " at " << b.estimate.last_box.to_string() << '\n';
  out << "bracket_width: " << format_real(b.estimate.bracket_width) << '\n';
  out << "base_ratio: " << format_real(b.base_ratio) << " at " << b.base.to_string() << '\n';
  out << fmt::format("limit bracket: [{:.6f}, {:.6f}]\n", b.lower, b.upper);
}

}  // namespace fekete
