#include "fekete/counting.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <thread>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

namespace fekete {

namespace {

// Brute force ---------------------------------------------------------------

constexpr std::size_t kSortedFlush = std::size_t{1} << 24;
constexpr std::uint64_t kParallelThreshold = std::uint64_t{1} << 16;

struct Enumerator {
  const CellularAutomaton& ca;
  Stencil stencil;
  std::uint64_t inputs = 0;   // q^{|E+N|}
  std::uint64_t outputs = 0;  // q^{|E|}
  std::vector<std::uint64_t> weights;                // q^{|E|-1-k}
  std::vector<std::vector<std::size_t>> affected;    // input cell -> output cells reading it

  Enumerator(const CellularAutomaton& automaton, const MultiIndex& sides,
             const BruteForceOptions& options)
      : ca(automaton), stencil(make_stencil(automaton, anchored_box(sides))) {
    const State q = ca.state_count();
    const auto cost = checked_pow(q, stencil.input.size());
    if (!cost || *cost > options.budget) {
      throw BudgetExceeded("brute force at " + sides.to_string() + " needs " +
                               std::to_string(q) + "^" + std::to_string(stencil.input.size()) +
                               " inputs, budget is " + std::to_string(options.budget),
                           pow_big(q, stencil.input.size()), BigInt(options.budget));
    }
    inputs = *cost;
    const std::size_t volume = stencil.taps.size();
    outputs = *checked_pow(q, volume);
    weights.resize(volume);
    std::uint64_t w = 1;
    for (std::size_t k = volume; k-- > 0;) {
      weights[k] = w;
      w *= q;
    }
    affected.resize(stencil.input.size());
    for (std::size_t k = 0; k < volume; ++k) {
      for (auto c : stencil.taps[k]) {
        auto& list = affected[c];
        if (list.empty() || list.back() != k) list.push_back(k);
      }
    }
  }

  State output_at(std::size_t k, const std::vector<State>& digits) const {
    std::size_t index = 0;
    for (auto c : stencil.taps[k]) index = index * ca.state_count() + digits[c];
    return ca.lookup(index);
  }

  // Visits the output code of every input code in [lo, hi), in order.
  template <typename Sink>
  void scan(std::uint64_t lo, std::uint64_t hi, Sink&& sink) const {
    if (lo >= hi) return;
    const State q = ca.state_count();
    const std::size_t n_cells = stencil.input.size();
    std::vector<State> digits(n_cells);
    std::uint64_t rest = lo;
    for (std::size_t c = n_cells; c-- > 0;) {
      digits[c] = static_cast<State>(rest % q);
      rest /= q;
    }
    std::vector<State> out(stencil.taps.size());
    std::uint64_t code = 0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = output_at(k, digits);
      code += out[k] * weights[k];
    }
    for (std::uint64_t i = lo;; ++i) {
      sink(code);
      if (i + 1 == hi) return;
      // Odometer step; the trailing cells that wrapped plus the one that
      // incremented are the only ones that changed.
      std::size_t c = n_cells;
      do {
        --c;
        if (++digits[c] == q) digits[c] = 0;
        for (auto k : affected[c]) {
          const State fresh = output_at(k, digits);
          code += (static_cast<std::uint64_t>(fresh) - out[k]) * weights[k];
          out[k] = fresh;
        }
      } while (digits[c] == 0);
    }
  }
};

/// The set of reachable output codes at one size.
struct ImageSet {
  std::uint64_t universe = 0;
  bool dense = true;
  std::vector<std::uint64_t> bits;    // dense
  std::vector<std::uint64_t> sorted;  // sparse, sorted unique

  bool contains(std::uint64_t code) const {
    if (dense) return bits[code >> 6] >> (code & 63) & 1;
    return std::binary_search(sorted.begin(), sorted.end(), code);
  }

  std::uint64_t count() const {
    if (!dense) return sorted.size();
    std::uint64_t total = 0;
    for (auto w : bits) total += static_cast<std::uint64_t>(std::popcount(w));
    return total;
  }

  std::optional<std::uint64_t> first_missing() const {
    if (dense) {
      for (std::size_t i = 0; i < bits.size(); ++i) {
        if (~bits[i] != 0) {
          const std::uint64_t code = i * 64 + static_cast<std::uint64_t>(std::countr_one(bits[i]));
          if (code < universe) return code;
          return std::nullopt;
        }
      }
      return std::nullopt;
    }
    for (std::uint64_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] != i) return i;
    }
    if (sorted.size() < universe) return sorted.size();
    return std::nullopt;
  }
};

void sort_unique(std::vector<std::uint64_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

ImageSet collect_images(const Enumerator& en, const BruteForceOptions& options) {
  ImageSet images;
  images.universe = en.outputs;
  images.dense = en.outputs <= options.dense_limit;

  unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  if (en.inputs < kParallelThreshold) workers = 1;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, en.inputs));

  const std::size_t words = static_cast<std::size_t>((en.outputs + 63) / 64);
  std::vector<std::vector<std::uint64_t>> partial(workers);
  auto run = [&](unsigned w) {
    const std::uint64_t lo = en.inputs / workers * w + std::min<std::uint64_t>(w, en.inputs % workers);
    const std::uint64_t hi = lo + en.inputs / workers + (w < en.inputs % workers ? 1 : 0);
    auto& local = partial[w];
    if (images.dense) {
      local.assign(words, 0);
      en.scan(lo, hi, [&](std::uint64_t code) { local[code >> 6] |= std::uint64_t{1} << (code & 63); });
    } else {
      en.scan(lo, hi, [&](std::uint64_t code) {
        local.push_back(code);
        if (local.size() >= kSortedFlush && local.size() == local.capacity()) sort_unique(local);
      });
      sort_unique(local);
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  if (images.dense) {
    images.bits = std::move(partial[0]);
    for (unsigned w = 1; w < workers; ++w) {
      for (std::size_t i = 0; i < words; ++i) images.bits[i] |= partial[w][i];
    }
  } else {
    images.sorted = std::move(partial[0]);
    for (unsigned w = 1; w < workers; ++w) {
      std::vector<std::uint64_t> merged;
      std::set_union(images.sorted.begin(), images.sorted.end(), partial[w].begin(),
                     partial[w].end(), std::back_inserter(merged));
      images.sorted = std::move(merged);
    }
  }
  return images;
}

// Transfer ------------------------------------------------------------------

/// The image automaton of a 1D rule: states are overlap words of length
/// m - 1, an edge u -c-> v labelled f(w) for each extension w = u c.
struct ImageAutomaton {
  State q = 0;
  std::size_t states = 0;
  std::vector<std::size_t> target;  // [u * q + c]
  std::vector<State> label;         // [u * q + c]

  ImageAutomaton(const CellularAutomaton& ca, const TransferOptions& options) : q(ca.state_count()) {
    if (ca.dimension() != 1) throw std::invalid_argument("transfer counting requires dimension 1");
    std::int64_t lo = ca.neighborhood().front()[0], hi = lo;
    for (const auto& v : ca.neighborhood()) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    const auto overlap = checked_pow(q, span - 1);
    if (!overlap || *overlap > options.max_overlap_states) {
      throw BudgetExceeded("image automaton needs " + std::to_string(q) + "^" +
                               std::to_string(span - 1) + " overlap states",
                           pow_big(q, span - 1), BigInt(options.max_overlap_states));
    }
    states = *overlap;
    const std::size_t n = ca.neighborhood_size();
    std::vector<std::uint64_t> place(n);  // q^(span-1-p) for each neighbour position p
    for (std::size_t i = 0; i < n; ++i) {
      place[i] = *checked_pow(q, span - 1 - static_cast<std::uint64_t>(ca.neighborhood()[i][0] - lo));
    }
    target.resize(states * q);
    label.resize(states * q);
    for (std::size_t u = 0; u < states; ++u) {
      for (State c = 0; c < q; ++c) {
        const std::uint64_t w = static_cast<std::uint64_t>(u) * q + c;
        std::size_t index = 0;
        for (std::size_t i = 0; i < n; ++i) index = index * q + (w / place[i]) % q;
        target[u * q + c] = static_cast<std::size_t>(w % states);
        label[u * q + c] = ca.lookup(index);
      }
    }
  }
};

using Subset = std::vector<std::uint64_t>;

/// Reachable part of the determinized image automaton, started from the full
/// state set and explored breadth-first with labels in increasing order.
struct SubsetDfa {
  State q = 0;
  std::vector<std::vector<std::size_t>> delta;  // [id][label]
  std::vector<std::size_t> parent;
  std::vector<State> parent_label;
  std::optional<std::size_t> dead;  // id of the empty subset, if reachable

  SubsetDfa(const ImageAutomaton& a, const TransferOptions& options) : q(a.q) {
    const std::size_t words = (a.states + 63) / 64;
    std::unordered_map<Subset, std::size_t, boost::hash<Subset>> ids;
    std::vector<Subset> subsets;

    auto intern = [&](Subset s, std::size_t from, State via) {
      auto [it, fresh] = ids.emplace(s, subsets.size());
      if (fresh) {
        if (subsets.size() >= options.max_subsets) {
          throw BudgetExceeded("subset construction exceeded " + std::to_string(options.max_subsets) +
                                   " subsets",
                               BigInt(subsets.size() + 1), BigInt(options.max_subsets));
        }
        if (std::all_of(s.begin(), s.end(), [](auto w) { return w == 0; })) dead = subsets.size();
        subsets.push_back(std::move(s));
        parent.push_back(from);
        parent_label.push_back(via);
      }
      return it->second;
    };

    Subset full(words, 0);
    for (std::size_t u = 0; u < a.states; ++u) full[u >> 6] |= std::uint64_t{1} << (u & 63);
    intern(std::move(full), 0, 0);

    for (std::size_t id = 0; id < subsets.size(); ++id) {
      std::vector<Subset> next(q, Subset(words, 0));
      const Subset current = subsets[id];
      for (std::size_t u = 0; u < a.states; ++u) {
        if (!(current[u >> 6] >> (u & 63) & 1)) continue;
        for (State c = 0; c < q; ++c) {
          const std::size_t v = a.target[u * q + c];
          next[a.label[u * q + c]][v >> 6] |= std::uint64_t{1} << (v & 63);
        }
      }
      std::vector<std::size_t> row(q);
      for (State b = 0; b < q; ++b) row[b] = intern(std::move(next[b]), id, b);
      delta.push_back(std::move(row));
    }
  }

  std::size_t size() const { return delta.size(); }

  std::vector<State> word_to(std::size_t id) const {
    std::vector<State> word;
    while (id != 0) {
      word.push_back(parent_label[id]);
      id = parent[id];
    }
    std::reverse(word.begin(), word.end());
    return word;
  }
};

}  // namespace

// ---------------------------------------------------------------------------

BigInt bruteforce_cost(const CellularAutomaton& ca, const MultiIndex& sides) {
  return pow_big(ca.state_count(), minkowski_sum(anchored_box(sides), ca.neighborhood()).size());
}

OutRecord out_size_bruteforce(const CellularAutomaton& ca, const MultiIndex& sides,
                              const BruteForceOptions& options) {
  const Enumerator en(ca, sides, options);
  const ImageSet images = collect_images(en, options);
  return {sides, BigInt(images.count()), BigInt(en.outputs), CountMethod::BruteForce,
          images.dense ? "bitmap" : "sorted"};
}

std::optional<OrphanCertificate> find_orphan(const CellularAutomaton& ca, const MultiIndex& sides,
                                             const BruteForceOptions& options) {
  const Enumerator en(ca, sides, options);
  const auto missing = collect_images(en, options).first_missing();
  if (!missing) return std::nullopt;
  const BigInt code(*missing);
  return OrphanCertificate{sides, Pattern::from_code(anchored_box(sides), ca.state_count(), code), code};
}

bool verify_orphan(const CellularAutomaton& ca, const OrphanCertificate& certificate,
                   const BruteForceOptions& options) {
  const Enumerator en(ca, certificate.sides, options);
  const BigInt code = certificate.pattern.code(ca.state_count());
  if (code != certificate.code || code >= en.outputs) return false;
  const auto target = code.convert_to<std::uint64_t>();
  bool produced = false;
  en.scan(0, en.inputs, [&](std::uint64_t c) { produced = produced || c == target; });
  return !produced;
}

std::vector<OutRecord> out_size_transfer_1d(const CellularAutomaton& ca, std::uint64_t n_max,
                                            const TransferOptions& options) {
  const ImageAutomaton automaton(ca, options);
  const SubsetDfa dfa(automaton, options);
  const State q = ca.state_count();

  // counts[id]: number of label words of the current length leading the
  // full set to subset id. The DFA is deterministic, so words are counted once.
  std::vector<BigInt> counts(dfa.size(), 0), next(dfa.size(), 0);
  counts[0] = 1;
  std::vector<OutRecord> out;
  out.reserve(n_max);
  const std::string storage = "subset-dfa:" + std::to_string(dfa.size());
  BigInt full = 1;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t id = 0; id < dfa.size(); ++id) {
      if (counts[id] == 0 || id == dfa.dead) continue;
      for (State b = 0; b < q; ++b) next[dfa.delta[id][b]] += counts[id];
    }
    counts.swap(next);
    BigInt total = 0;
    for (std::size_t id = 0; id < dfa.size(); ++id) {
      if (id != dfa.dead) total += counts[id];
    }
    full *= q;
    out.push_back({MultiIndex{n}, std::move(total), full, CountMethod::Transfer1d, storage});
  }
  return out;
}

Decision1d decide_surjectivity_1d(const CellularAutomaton& ca, const TransferOptions& options) {
  const ImageAutomaton automaton(ca, options);
  const SubsetDfa dfa(automaton, options);
  Decision1d out;
  out.subsets_explored = dfa.size();
  out.surjective = !dfa.dead.has_value();
  if (dfa.dead) out.orphan_word = dfa.word_to(*dfa.dead);
  return out;
}

}  // namespace fekete
