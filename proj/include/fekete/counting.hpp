#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fekete/bigint.hpp"
#include "fekete/ca.hpp"
#include "fekete/multi_index.hpp"

namespace fekete {

/// Thrown instead of returning a partial answer when a computation would
/// exceed its budget. `cost` is the exact work the request would need.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, BigInt cost, BigInt budget)
      : std::runtime_error(what), cost_(std::move(cost)), budget_(std::move(budget)) {}

  const BigInt& cost() const { return cost_; }
  const BigInt& budget() const { return budget_; }

 private:
  BigInt cost_;
  BigInt budget_;
};

enum class CountMethod { BruteForce, Transfer1d };

/// Out_f at one support size.
struct OutRecord {
  MultiIndex sides;
  BigInt out_size;
  BigInt full_size;  // q^volume
  CountMethod method = CountMethod::BruteForce;
  std::string storage;  // diagnostics: "bitmap", "sorted", "subset-dfa"
};

struct BruteForceOptions {
  std::uint64_t budget = std::uint64_t{1} << 30;  // max input patterns enumerated
  unsigned workers = 0;                           // 0: hardware concurrency
  /// Outputs up to this many possible codes are tracked in a bitmap, larger
  /// ones in a sorted code list.
  std::uint64_t dense_limit = std::uint64_t{1} << 26;
};

struct TransferOptions {
  std::uint64_t max_overlap_states = std::uint64_t{1} << 16;
  std::size_t max_subsets = std::size_t{1} << 20;
};

/// q^{|E+N|}: the number of inputs brute force would enumerate.
BigInt bruteforce_cost(const CellularAutomaton& ca, const MultiIndex& sides);

/// Exact Out_f(sides) by enumerating every input over the exact cell set E+N.
OutRecord out_size_bruteforce(const CellularAutomaton& ca, const MultiIndex& sides,
                              const BruteForceOptions& options = {});

/// Out_f(n) for n = 1..n_max via the determinized image automaton (d = 1 only).
std::vector<OutRecord> out_size_transfer_1d(const CellularAutomaton& ca, std::uint64_t n_max,
                                            const TransferOptions& options = {});

/// A pattern over E(sides) with no preimage under F_E.
struct OrphanCertificate {
  MultiIndex sides;
  Pattern pattern;
  BigInt code;
};

/// The orphan with the smallest canonical code at this size, if any.
std::optional<OrphanCertificate> find_orphan(const CellularAutomaton& ca, const MultiIndex& sides,
                                             const BruteForceOptions& options = {});

/// Re-enumerates all inputs at the certificate's size and confirms the
/// pattern is never produced.
bool verify_orphan(const CellularAutomaton& ca, const OrphanCertificate& certificate,
                   const BruteForceOptions& options = {});

struct Decision1d {
  bool surjective = false;
  std::vector<State> orphan_word;  // shortest, lexicographically least; empty if surjective
  std::size_t subsets_explored = 0;
};

/// Breadth-first subset construction from the full overlap-state set; the
/// automaton is nonsurjective iff the empty subset is reachable.
Decision1d decide_surjectivity_1d(const CellularAutomaton& ca, const TransferOptions& options = {});

}  // namespace fekete
