#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mdkit {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;
using Dist = std::int32_t;

// Distance between vertices in different components. Compares greater than
// every finite distance and equal only to itself.
inline constexpr Dist kUnreachable = std::numeric_limits<Dist>::max();

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Adjacency lists are sorted and symmetric. Labels are optional; when present
/// there is exactly one per vertex and no two vertices share a label.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Duplicate edges (in either orientation)
  /// collapse into one. Throws InputError on an out-of-range endpoint or a
  /// self-loop, naming the offending edge.
  static Graph from_edges(int n, std::span<const Edge> edges,
                          std::vector<std::string> labels = {});

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
  bool adjacent(Vertex u, Vertex v) const;

  /// Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Vertex v) const { return labels_.at(v); }
  /// Vertex carrying `label`, if any. Linear scan.
  std::optional<Vertex> find_label(const std::string& label) const;

  bool contains(Vertex v) const { return v >= 0 && v < vertex_count(); }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::string> labels_;
  std::size_t edge_count_ = 0;
};

/// All-pairs shortest path lengths, stored row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), dist_(static_cast<std::size_t>(n) * n, kUnreachable) {}

  int size() const { return n_; }
  Dist operator()(Vertex u, Vertex v) const { return dist_[index(u, v)]; }
  Dist& at(Vertex u, Vertex v) { return dist_[index(u, v)]; }
  std::span<const Dist> row(Vertex u) const {
    return {dist_.data() + static_cast<std::size_t>(u) * n_, static_cast<std::size_t>(n_)};
  }

  /// min over pairs (a, b) in A x B; kUnreachable when either side is empty
  /// or no pair is connected.
  Dist between(std::span<const Vertex> a, std::span<const Vertex> b) const;

 private:
  std::size_t index(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(u) * n_ + v;
  }
  int n_ = 0;
  std::vector<Dist> dist_;
};

struct TwinReport {
  std::vector<Edge> true_twin_pairs;   // N[u] = N[v]
  std::vector<Edge> false_twin_pairs;  // N(u) = N(v), uv not an edge
};

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> original_id;  // new id -> id in the source graph
};

/// Single-source BFS distances; unreached vertices get kUnreachable.
std::vector<Dist> bfs_distances(const Graph& g, Vertex source);

DistanceMatrix all_pairs_distances(const Graph& g);

TwinReport twins(const Graph& g);

/// Every (a, b, c) with ab, bc edges and ac a non-edge, a < c, sorted.
std::vector<std::array<Vertex, 3>> induced_p3s(const Graph& g);

/// First induced P3 in the order used by induced_p3s, if any. Cheaper than
/// materializing the full list.
std::optional<std::array<Vertex, 3>> first_induced_p3(const Graph& g);

Graph complement(const Graph& g);

bool is_acyclic(const Graph& g);

/// Number of connected components (an empty graph has zero).
int component_count(const Graph& g);

/// Connected components, each sorted, ordered by smallest member.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

/// Deletes `removed` and compacts ids, preserving relative order and labels.
/// Throws InputError for ids outside the graph.
InducedSubgraph remove_vertices(const Graph& g, std::span<const Vertex> removed);

/// Induced subgraph on `kept` (any order; duplicates rejected), ids assigned
/// in ascending order of the kept vertices.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> kept);

bool is_clique(const Graph& g, std::span<const Vertex> vertices);
bool is_independent(const Graph& g, std::span<const Vertex> vertices);

}  // namespace mdkit
