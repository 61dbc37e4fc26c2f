#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fekete/ca.hpp"
#include "fekete/counting.hpp"
#include "fekete/subadditive.hpp"

namespace fekete {

/// log base q of a positive integer; exact when the value is a power of q.
double log_q(const BigInt& value, State q);

/// Loss of information at one size, in q-its.
struct LossRecord {
  MultiIndex sides;
  double lambda_loss = 0.0;  // volume - log_q Out_f
  double ratio = 0.0;        // log_q Out_f / volume
  double lambda_bits = 0.0;  // lambda_loss * log2 q
};

LossRecord loss(const CellularAutomaton& ca, const OutRecord& record);

enum class MethodChoice { Auto, BruteForce, Transfer };

struct CountOptions {
  MethodChoice method = MethodChoice::Auto;
  BruteForceOptions brute;
  TransferOptions transfer;
};

/// One row of an Out_f table: a record, or the reason it was refused.
struct OutRow {
  MultiIndex sides;
  std::optional<OutRecord> record;
  std::string refusal;
};

/// Out_f at every requested size. Auto uses the transfer path in dimension 1
/// (one pass up to the largest n) and brute force otherwise.
std::vector<OutRow> out_table(const CellularAutomaton& ca, const std::vector<MultiIndex>& sizes,
                              const CountOptions& options = {});

/// Out(x with x_j + y_j) <= Out(x) * Out(x with y_j) for every triple whose
/// three sizes all appear in the table. Returns the violating triples.
std::vector<Violation> check_log_subadditivity(const std::map<MultiIndex, BigInt>& table);

struct LambdaEstimate {
  FeketeBracket bracket;  // clamped to [0, 1]
  std::vector<LossRecord> table;
  std::vector<Violation> subadditivity_violations;
  std::vector<MultiIndex> refused;
  bool partial = false;
};

LambdaEstimate lambda_estimate(const CellularAutomaton& ca, const std::vector<MultiIndex>& schedule,
                               const CountOptions& options = {});

struct ThresholdReport {
  double K = 0.0;
  std::vector<std::uint64_t> r;  // boundary sides, may be 0
  double delta = 0.0;
  double lambda_upper = 1.0;     // running infimum over the search box
  std::optional<MultiIndex> t;   // <=_pi-minimal qualifying threshold, ties lexicographic
  std::vector<MultiIndex> checked_region;  // computed x >=_pi t
  std::vector<LossRecord> losses;          // every computed x in the search box
  std::vector<MultiIndex> refused;
  bool inequality_verified = false;        // Lambda(x) >= prod(x+r) - prod(x) + K on checked_region
};

/// Smallest k such that prod(k + r_i) / k^d < 1 + epsilon. The ratio is
/// decreasing in every coordinate, so it stays below 1 + epsilon for all
/// x >=_pi (k, ..., k).
MultiIndex boundary_ratio_threshold(const std::vector<std::uint64_t>& r, double epsilon);

/// Right-hand side prod(x_i + r_i) - prod(x_i) + K.
double boundary_excess(const MultiIndex& x, const std::vector<std::uint64_t>& r, double K);

/// Searches boxes x <=_pi search_box for a threshold t beyond which both
/// ratio(x) <= delta and boundary_excess(x)/prod(x) <= 1 - delta hold.
/// `delta` defaults to the midpoint of the running infimum and 1. Throws
/// std::invalid_argument when the automaton is proved surjective (d = 1), or
/// in d >= 2 when no orphan is known and `assume_nonsurjective` is false.
ThresholdReport theorem2_threshold(const CellularAutomaton& ca, double K,
                                   const std::vector<std::uint64_t>& r, std::optional<double> delta,
                                   const MultiIndex& search_box, const CountOptions& options = {},
                                   bool assume_nonsurjective = false);

enum class Verdict { ProvedSurjective, Nonsurjective, Unknown };

std::string to_string(Verdict verdict);

struct SurjectivityVerdict {
  Verdict verdict = Verdict::Unknown;
  std::optional<OrphanCertificate> certificate;
  /// Unknown only: <=_pi-maximal sizes at which F_E was shown surjective.
  std::vector<MultiIndex> cleared_frontier;
  std::string note;
};

/// d = 1: decided exactly. d >= 2: orphan search over sizes in increasing
/// cost order within the brute-force budget; never proves surjectivity.
SurjectivityVerdict surjectivity_report(const CellularAutomaton& ca, const CountOptions& options = {});

}  // namespace fekete
