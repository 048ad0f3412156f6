#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdkit/graph.hpp"

namespace mdkit {

enum class ModulatorMode { kCluster, kCoCluster };

std::string to_string(ModulatorMode m);  // "cluster" / "co-cluster"
ModulatorMode parse_modulator_mode(const std::string& text);

/// X such that G - X is a cluster graph (kCluster) or the complement of one
/// (kCoCluster).
struct Modulator {
  std::vector<Vertex> vertices;  // sorted
  ModulatorMode mode = ModulatorMode::kCluster;
};

bool is_valid_modulator(const Graph& g, const Modulator& x);

/// Smallest modulator of size <= budget, found by branching three ways on
/// induced P3s (of the complement in co-cluster mode). nullopt when none
/// exists within the budget.
std::optional<Modulator> find_modulator(const Graph& g, int budget, ModulatorMode mode);

/// Cliques (cluster mode) or independent sets (co-cluster mode) of G - X.
/// Throws InputError when a part has the wrong shape.
std::vector<std::vector<Vertex>> modulator_parts(const Graph& g, const Modulator& x);

/// Parts of G - X grouped by signature: the multiset of X-neighborhoods of
/// the part's vertices.
struct EquivalenceClass {
  std::vector<std::vector<Vertex>> signature;  // sorted multiset, each entry sorted
  std::vector<std::vector<Vertex>> parts;      // ordered by smallest member
  int twin_pair_count = 0;                     // t: entries with multiplicity 2
};

/// Classes ordered by signature, parts by smallest member. Requires every
/// neighborhood to occur at most twice per part (twin rule exhausted);
/// throws InputError otherwise or when the modulator is invalid.
std::vector<EquivalenceClass> classify(const Graph& g, const Modulator& x);

/// The vertices of `target` with the same X-neighborhood as `u` (at most 2).
/// Throws InputError unless u's part and `target` share a class.
std::vector<Vertex> clone_of(const Graph& g, const Modulator& x,
                             std::span<const EquivalenceClass> classes, Vertex u,
                             std::span<const Vertex> target);

enum class Rule { kRR1, kRR2, kRR3, kRR4 };
std::string to_string(Rule r);
Rule parse_rule(const std::string& text);

struct KernelStep {
  Rule rule = Rule::kRR2;
  std::vector<Vertex> removed;  // sorted
  int decrement = 0;
};

struct KernelTrace {
  ModulatorMode mode = ModulatorMode::kCluster;
  int initial_k = 0;
  int final_k = 0;
  std::vector<KernelStep> steps;
};

struct RuleApplication {
  InducedSubgraph reduced;
  int k = 0;
  KernelStep step;  // removed ids refer to the input graph
};

/// Trivial no-instance: a non-empty graph with k <= 0.
bool apply_rr1(const Graph& g, int k);

/// Removes the highest-id vertex lying in a true- or false-twin class of size
/// at least three, decrementing k. Both twin forms are used in either mode.
std::optional<RuleApplication> apply_rr2(const Graph& g, int k);

/// Smallest number of identical parts that triggers RR3/RR4:
/// 2^(|X|+2) + |X| + 2.
std::int64_t identical_parts_threshold(int modulator_size);

/// Removes the smallest part of the first class reaching the threshold and
/// lowers k by max(1, t). Cluster mode only.
std::optional<RuleApplication> apply_rr3(const Graph& g, int k, const Modulator& x);
/// The co-cluster counterpart of apply_rr3 over independent sets.
std::optional<RuleApplication> apply_rr4(const Graph& g, int k, const Modulator& x);

/// 2^(2^(|X|+1)) * (2^(|X|+2) + |X| + 1) * 2^(|X|+1) + |X|, saturating at
/// UINT64_MAX.
std::uint64_t kernel_size_bound(int modulator_size);

enum class KernelOutcome { kReduced, kTrivialNo };

struct KernelResult {
  KernelOutcome outcome = KernelOutcome::kReduced;
  Graph kernel;
  std::vector<Vertex> original_id;  // kernel id -> input id
  int k = 0;
  Modulator modulator;  // input ids
  KernelTrace trace;    // removed ids are input ids
};

struct KernelOptions {
  std::optional<Modulator> modulator;
  int modulator_budget = 10;
};

/// RR1, then RR2 to exhaustion, then one RR3/RR4 step, repeated until no rule
/// applies; RR1 is re-checked after every step. Throws InputError when the
/// modulator is invalid or cannot be found within the budget.
KernelResult kernelize(const Graph& g, int k, ModulatorMode mode, const KernelOptions& options = {});

/// Twins are at equal distance from every other vertex. One message per
/// violation; empty when the property holds.
std::vector<std::string> twin_distance_violations(const Graph& g, const DistanceMatrix& d);

/// For parts C1 != C2 of one class and clones u in C1, v in C2: d(u, w) =
/// d(v, w) for every w outside C1 and C2, and d(u1, v2) = d(u2, v1) whenever
/// u2, v1 are clones of u1, v2. Requires classify() to succeed.
std::vector<std::string> clone_distance_violations(const Graph& g, const Modulator& x,
                                                   const DistanceMatrix& d);

/// Applies a trace's removals to the input graph.
InducedSubgraph replay_trace(const Graph& g, const KernelTrace& trace);

}  // namespace mdkit
