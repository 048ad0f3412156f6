#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdkit/graph.hpp"

namespace mdkit {

struct ResolvingCertificate {
  std::vector<Vertex> vertices;
  bool verified = false;
  // Lexicographically smallest unresolved pair, present iff !verified.
  std::optional<Edge> witness_pair;
};

/// r(S|v): entry i is d(s_i, v). Throws InputError on invalid ids.
std::vector<Dist> distance_vector(const Graph& g, std::span<const Vertex> s, Vertex v);
std::vector<Dist> distance_vector(const DistanceMatrix& d, std::span<const Vertex> s, Vertex v);

ResolvingCertificate is_resolving_set(const Graph& g, std::span<const Vertex> s);
ResolvingCertificate is_resolving_set(const DistanceMatrix& d, std::span<const Vertex> s);

/// Every true and false twin pair; each must meet every resolving set.
std::vector<Edge> mandatory_pair_constraints(const Graph& g);

/// Resolving sets recast as hitting sets: one set of resolvers per vertex pair.
struct DistinguishingInstance {
  int universe = 0;
  std::vector<Edge> pairs;                  // all u < v, lexicographic
  std::vector<int> set_of_pair;             // pairs[i] -> index into sets
  std::vector<std::vector<Vertex>> sets;    // distinct resolver sets, sorted
  std::vector<Edge> unresolvable_pairs;     // pairs whose resolver set is empty
};

DistinguishingInstance build_distinguishing_instance(const Graph& g);
DistinguishingInstance build_distinguishing_instance(const DistanceMatrix& d);

/// Greedy resolving set: repeatedly take the vertex that resolves the most
/// still-unresolved pairs, smallest id on ties. Empty for graphs with < 2
/// vertices.
std::vector<Vertex> greedy_upper_bound(const Graph& g);
std::vector<Vertex> greedy_upper_bound(const DistanceMatrix& d);

enum class MdStatus { kExact, kExceedsBound };

std::string to_string(MdStatus s);

struct MdOptions {
  std::optional<int> bound;              // decide "MD <= bound" only
  std::optional<std::uint64_t> node_cap; // ResourceLimit when exceeded
};

struct MdResult {
  MdStatus status = MdStatus::kExact;
  std::optional<int> value;
  ResolvingCertificate certificate;
  std::uint64_t explored_nodes = 0;
  std::optional<int> bound;
  // Conventions applied to degenerate inputs: "single_vertex" (value 0 by
  // convention) and "disconnected" (unreachable-sentinel semantics).
  std::vector<std::string> flags;
};

/// Exact metric dimension by branch-and-bound over the hitting-set form.
///
/// Branches on the unhit resolver set of minimum size (children in ascending
/// vertex id, earlier siblings excluded from later subtrees), prunes with a
/// greedy packing of pairwise-disjoint unhit sets, and deepens the target size
/// from that packing bound up to the greedy upper bound. With a bound, the
/// search never looks beyond it and kExceedsBound proves that no resolving
/// set of that size exists. Throws ResourceLimit when the node cap is hit.
MdResult metric_dimension_exact(const Graph& g, const MdOptions& options = {});

}  // namespace mdkit
