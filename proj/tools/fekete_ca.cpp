// fekete-ca: reachable-pattern counts, information loss, entropy brackets and
// surjectivity verdicts for cellular automata on rectangular supports.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fekete/analysis.hpp"
#include "fekete/ca_file.hpp"
#include "fekete/report.hpp"

using namespace fekete;

namespace {

constexpr int kExitSurjective = 0;
constexpr int kExitNonsurjective = 10;
constexpr int kExitUnknown = 20;
constexpr int kExitError = 2;

std::uint64_t parse_count(const std::string& text) {
  if (const auto caret = text.find('^'); caret != std::string::npos) {
    const auto base = std::stoull(text.substr(0, caret));
    const auto exponent = std::stoull(text.substr(caret + 1));
    if (auto v = checked_pow(base, exponent)) return *v;
    throw std::invalid_argument("count " + text + " overflows 64 bits");
  }
  std::size_t used = 0;
  const auto v = std::stoull(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad count '" + text + "'");
  return v;
}

struct Common {
  std::string file;
  std::string budget = "2^30";
  std::string method = "auto";
  unsigned workers = 0;
  std::size_t max_subsets = std::size_t{1} << 20;
  std::string out_path;

  CountOptions options() const {
    CountOptions o;
    o.brute.budget = parse_count(budget);
    o.brute.workers = workers;
    o.transfer.max_subsets = max_subsets;
    if (method == "brute") o.method = MethodChoice::BruteForce;
    else if (method == "transfer") o.method = MethodChoice::Transfer;
    else o.method = MethodChoice::Auto;
    return o;
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_method) {
  cmd->add_option("file", c.file, "CA description (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--budget", c.budget, "max input patterns per brute-force size (e.g. 2^30)")
      ->capture_default_str();
  if (with_method) {
    cmd->add_option("--method", c.method, "counting method")
        ->check(CLI::IsMember({"auto", "brute", "transfer"}))
        ->capture_default_str();
  }
  cmd->add_option("--workers", c.workers, "enumeration threads (0: all cores)");
  cmd->add_option("--max-subsets", c.max_subsets, "subset-construction limit")->capture_default_str();
  cmd->add_option("--out", c.out_path, "write output here instead of stdout");
}

/// Output is assembled in memory and emitted only after the command finished.
void emit(const Common& c, const std::string& text) {
  if (c.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out_path);
  if (!out) throw std::runtime_error("cannot write " + c.out_path);
  out << text;
}

std::vector<MultiIndex> sizes_from(const std::string& sides_list, const std::string& max_sides,
                                   std::size_t dimension) {
  if (!sides_list.empty()) return parse_schedule(sides_list, dimension);
  MultiIndex box = parse_sides(max_sides);
  if (box.dimension() == 1 && dimension > 1) box = MultiIndex::diagonal(dimension, box[0]);
  if (box.dimension() != dimension) throw std::invalid_argument("--max-sides: dimension mismatch");
  return boxes_below(box);
}

std::vector<std::uint64_t> parse_naturals(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, 'x')) out.push_back(std::stoull(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact reachable-pattern analysis of cellular automata"};
  app.require_subcommand(1);

  Common common;
  std::string sides_list, max_sides, schedule;

  auto* out_table_cmd = app.add_subcommand("out-table", "CSV of Out_f, ratio and loss per support size");
  add_common(out_table_cmd, common, true);
  auto* sides_opt = out_table_cmd->add_option("--sides-list", sides_list, "e.g. 1x1,2x2,3x3");
  out_table_cmd->add_option("--max-sides", max_sides, "all sides up to this box, e.g. 6 or 3x3")
      ->excludes(sides_opt);

  auto* decide_cmd = app.add_subcommand("decide", "surjectivity verdict with certificate");
  add_common(decide_cmd, common, false);

  auto* lambda_cmd = app.add_subcommand("lambda", "bracket the entropy ratio lambda_f");
  add_common(lambda_cmd, common, true);
  lambda_cmd->add_option("--schedule", schedule, "diag:A..B, geom:A..B or an explicit list")->required();

  double K = 0.0;
  std::string r_text, search_box;
  std::optional<double> delta;
  bool assume_nonsurjective = false;
  auto* threshold_cmd = app.add_subcommand("threshold", "search a loss-vs-boundary threshold t");
  add_common(threshold_cmd, common, true);
  threshold_cmd->add_option("--K", K, "additive constant")->capture_default_str();
  threshold_cmd->add_option("--r", r_text, "boundary sides, e.g. 2 or 1x1 (zeros allowed)")->required();
  threshold_cmd->add_option("--delta", delta, "default: midway between the ratio infimum and 1");
  threshold_cmd->add_option("--search", search_box, "search box, e.g. 64 or 3x3")->required();
  threshold_cmd->add_flag("--assume-nonsurjective", assume_nonsurjective, "skip the nonsurjectivity check");

  std::string function_name, table_path, box_text, base_text;
  std::uint64_t seed = 0;
  std::uint64_t exhaustive_limit = 1'000'000;
  auto* fekete_cmd = app.add_subcommand("fekete", "subadditivity check and limit estimate for f(x)/prod(x)");
  auto* fn_opt = fekete_cmd->add_option("--function", function_name, "3n, xy+x+y, n+ceil-log2, n^2");
  fekete_cmd->add_option("--table", table_path, "file of 'AxB value' lines")->excludes(fn_opt);
  fekete_cmd->add_option("--schedule", schedule,
                         "diag:A..B, geom:A..B or an explicit list (default with --table: every table index)");
  fekete_cmd->add_option("--box", box_text, "subadditivity check box (default: schedule maximum)");
  fekete_cmd->add_option("--base", base_text, "base box t (default: schedule maximum)");
  fekete_cmd->add_option("--exhaustive-limit", exhaustive_limit)->capture_default_str();
  fekete_cmd->add_option("--seed", seed, "sampling seed")->capture_default_str();
  fekete_cmd->add_option("--out", common.out_path, "write output here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*fekete_cmd) {
      if (function_name.empty() == table_path.empty()) {
        throw std::invalid_argument("exactly one of --function and --table is required");
      }
      std::optional<std::map<MultiIndex, double>> table;
      if (!table_path.empty()) table = load_function_table(table_path);
      const SubadditiveFn fn = table ? table_function(*table) : builtin_function(function_name);
      if (schedule.empty() && !table) throw std::invalid_argument("--schedule is required with --function");
      std::vector<MultiIndex> sched;
      if (schedule.empty()) {
        for (const auto& entry : *table) sched.push_back(entry.first);
      } else {
        sched = parse_schedule(schedule, fn.dimension());
      }
      MultiIndex top = sched.front();
      for (const auto& x : sched) top = join(top, x);
      for (const auto& x : sched) {
        if (table && !table->contains(x)) throw FormatError("table", "missing index " + x.to_string());
      }

      SubadditivityCheck check;
      if (table) {
        check = check_subadditivity_table(*table);
      } else {
        check = check_subadditivity(fn, box_text.empty() ? top : parse_sides(box_text),
                                    {exhaustive_limit, seed, 1e-9});
      }
      std::optional<FeketeBracket> bracket;
      if (check.passed()) {
        bracket = fekete_limit_estimate(fn, base_text.empty() ? top : parse_sides(base_text), sched);
      }
      std::ostringstream out;
      write_fekete_report(out, check, bracket);
      emit(common, out.str());
      return check.passed() ? 0 : 1;
    }

    const CaDescription description = load_ca_description(common.file);
    const CellularAutomaton& ca = description.ca;
    const CountOptions options = common.options();
    if (description.labeled && !*decide_cmd) {
      std::cerr << "states:";
      for (std::size_t s = 0; s < description.labels.size(); ++s) {
        std::cerr << ' ' << s << '=' << description.labels[s];
      }
      std::cerr << '\n';
    }

    std::ostringstream out;
    if (*out_table_cmd) {
      if (sides_list.empty() && max_sides.empty()) {
        throw std::invalid_argument("one of --sides-list and --max-sides is required");
      }
      write_out_table_csv(out, ca, out_table(ca, sizes_from(sides_list, max_sides, ca.dimension()), options));
      emit(common, out.str());
      return 0;
    }
    if (*decide_cmd) {
      const auto verdict = surjectivity_report(ca, options);
      write_verdict(out, description, verdict);
      emit(common, out.str());
      switch (verdict.verdict) {
        case Verdict::ProvedSurjective: return kExitSurjective;
        case Verdict::Nonsurjective: return kExitNonsurjective;
        case Verdict::Unknown: return kExitUnknown;
      }
    }
    if (*lambda_cmd) {
      write_lambda_report(out, ca, lambda_estimate(ca, parse_schedule(schedule, ca.dimension()), options));
      emit(common, out.str());
      return 0;
    }
    if (*threshold_cmd) {
      MultiIndex box = parse_sides(search_box);
      if (box.dimension() == 1 && ca.dimension() > 1) box = MultiIndex::diagonal(ca.dimension(), box[0]);
      auto r = parse_naturals(r_text);
      if (r.size() == 1 && ca.dimension() > 1) r.assign(ca.dimension(), r[0]);
      const auto report = theorem2_threshold(ca, K, r, delta, box, options, assume_nonsurjective);
      write_threshold_report(out, report);
      emit(common, out.str());
      return report.t ? 0 : 1;
    }
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
