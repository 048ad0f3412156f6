#include "mdkit/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "mdkit/error.hpp"

namespace mdkit {

namespace {

std::string edge_text(const Edge& e) {
  return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

}  // namespace

Graph Graph::from_edges(int n, std::span<const Edge> edges, std::vector<std::string> labels) {
  if (n < 0) throw InputError("negative vertex count");
  Graph g;
  g.adjacency_.resize(n);
  for (const Edge& e : edges) {
    auto [u, v] = e;
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw InputError("edge " + edge_text(e) + " has an endpoint outside 0.." +
                       std::to_string(n - 1));
    }
    if (u == v) throw InputError("edge " + edge_text(e) + " is a self-loop");
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  std::size_t degree_sum = 0;
  for (auto& nbrs : g.adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    degree_sum += nbrs.size();
  }
  g.edge_count_ = degree_sum / 2;

  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != n) {
      throw InputError("label count " + std::to_string(labels.size()) +
                       " does not match vertex count " + std::to_string(n));
    }
    std::set<std::string_view> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) throw InputError("duplicate vertex label '" + l + "'");
    }
    g.labels_ = std::move(labels);
  }
  return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::optional<Vertex> Graph::find_label(const std::string& label) const {
  for (Vertex v = 0; v < static_cast<Vertex>(labels_.size()); ++v) {
    if (labels_[v] == label) return v;
  }
  return std::nullopt;
}

Dist DistanceMatrix::between(std::span<const Vertex> a, std::span<const Vertex> b) const {
  Dist best = kUnreachable;
  for (Vertex u : a) {
    for (Vertex v : b) best = std::min(best, (*this)(u, v));
  }
  return best;
}

std::vector<Dist> bfs_distances(const Graph& g, Vertex source) {
  std::vector<Dist> dist(g.vertex_count(), kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(g.vertex_count());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    for (Vertex v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

DistanceMatrix all_pairs_distances(const Graph& g) {
  const int n = g.vertex_count();
  DistanceMatrix m(n);
  for (Vertex s = 0; s < n; ++s) {
    auto row = bfs_distances(g, s);
    for (Vertex v = 0; v < n; ++v) m.at(s, v) = row[v];
  }
  return m;
}

TwinReport twins(const Graph& g) {
  TwinReport report;
  const int n = g.vertex_count();
  // Closed neighborhoods are compared as sorted vectors; O(n^2 * deg).
  std::vector<std::vector<Vertex>> closed(n);
  for (Vertex v = 0; v < n; ++v) {
    auto nbrs = g.neighbors(v);
    closed[v].assign(nbrs.begin(), nbrs.end());
    closed[v].insert(std::lower_bound(closed[v].begin(), closed[v].end(), v), v);
  }
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (g.adjacent(u, v)) {
        if (closed[u] == closed[v]) report.true_twin_pairs.emplace_back(u, v);
      } else {
        auto nu = g.neighbors(u);
        auto nv = g.neighbors(v);
        if (std::equal(nu.begin(), nu.end(), nv.begin(), nv.end())) {
          report.false_twin_pairs.emplace_back(u, v);
        }
      }
    }
  }
  return report;
}

std::vector<std::array<Vertex, 3>> induced_p3s(const Graph& g) {
  std::vector<std::array<Vertex, 3>> out;
  for (Vertex b = 0; b < g.vertex_count(); ++b) {
    auto nbrs = g.neighbors(b);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        if (!g.adjacent(nbrs[i], nbrs[j])) out.push_back({nbrs[i], b, nbrs[j]});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::array<Vertex, 3>> first_induced_p3(const Graph& g) {
  // Smallest (a, b, c) lexicographically: scan a, then b in N(a), then c in N(b).
  for (Vertex a = 0; a < g.vertex_count(); ++a) {
    for (Vertex b : g.neighbors(a)) {
      for (Vertex c : g.neighbors(b)) {
        if (c > a && !g.adjacent(a, c)) return std::array<Vertex, 3>{a, b, c};
      }
    }
  }
  return std::nullopt;
}

Graph complement(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!g.adjacent(u, v)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges, g.labels());
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    std::vector<Vertex> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (Vertex v : g.neighbors(members[head])) {
        if (comp[v] == -1) {
          comp[v] = comp[s];
          members.push_back(v);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

int component_count(const Graph& g) {
  return static_cast<int>(connected_components(g).size());
}

bool is_acyclic(const Graph& g) {
  // A forest has exactly |V| - (#components) edges.
  return g.edge_count() + component_count(g) == static_cast<std::size_t>(g.vertex_count());
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> kept) {
  const int n = g.vertex_count();
  std::vector<Vertex> sorted(kept.begin(), kept.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!g.contains(sorted[i])) throw InputError("unknown vertex id " + std::to_string(sorted[i]));
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw InputError("vertex " + std::to_string(sorted[i]) + " listed twice");
    }
  }
  std::vector<Vertex> new_id(n, -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) new_id[sorted[i]] = static_cast<Vertex>(i);

  std::vector<Edge> edges;
  for (Vertex u : sorted) {
    for (Vertex v : g.neighbors(u)) {
      if (u < v && new_id[v] != -1) edges.emplace_back(new_id[u], new_id[v]);
    }
  }
  std::vector<std::string> labels;
  if (g.has_labels()) {
    labels.reserve(sorted.size());
    for (Vertex v : sorted) labels.push_back(g.label(v));
  }
  return {Graph::from_edges(static_cast<int>(sorted.size()), edges, std::move(labels)),
          std::move(sorted)};
}

InducedSubgraph remove_vertices(const Graph& g, std::span<const Vertex> removed) {
  std::vector<bool> drop(g.vertex_count(), false);
  for (Vertex v : removed) {
    if (!g.contains(v)) throw InputError("unknown vertex id " + std::to_string(v));
    drop[v] = true;
  }
  std::vector<Vertex> kept;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!drop[v]) kept.push_back(v);
  }
  return induced_subgraph(g, kept);
}

bool is_clique(const Graph& g, std::span<const Vertex> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (!g.adjacent(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

bool is_independent(const Graph& g, std::span<const Vertex> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (g.adjacent(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

}  // namespace mdkit
