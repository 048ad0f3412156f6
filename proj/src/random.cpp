#include "mdkit/random.hpp"

#include <algorithm>
#include <set>

#include "mdkit/error.hpp"

namespace mdkit {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
  // Largest multiple of bound that fits; draws above it are rejected.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % bound;
}

int Rng::between(int lo, int hi) {
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Graph random_connected_graph(Rng& rng, int n, int percent) {
  std::set<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    Vertex u = static_cast<Vertex>(rng.below(v));
    edges.emplace(u, v);
  }
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.chance(percent)) edges.emplace(u, v);
    }
  }
  std::vector<Edge> list(edges.begin(), edges.end());
  return Graph::from_edges(n, list);
}

Graph random_twin_triple_graph(Rng& rng, int n) {
  if (n < 3) throw InputError("twin triple graphs need at least 3 vertices");
  // Base graph on n - 2 vertices; vertex `seed` gets two twins.
  const int base = n - 2;
  Graph g = random_connected_graph(rng, base, rng.between(10, 50));
  const Vertex seed = static_cast<Vertex>(rng.below(base));
  const bool true_twins = rng.chance(50);
  std::vector<Edge> edges = g.edges();
  const Vertex a = base;
  const Vertex b = base + 1;
  for (Vertex w : g.neighbors(seed)) {
    edges.emplace_back(w, a);
    edges.emplace_back(w, b);
  }
  if (true_twins) {
    edges.emplace_back(seed, a);
    edges.emplace_back(seed, b);
    edges.emplace_back(a, b);
  }
  // Relabel randomly so the twins are not always the highest ids.
  std::vector<Vertex> perm(n);
  for (Vertex v = 0; v < n; ++v) perm[v] = v;
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
  for (auto& [u, v] : edges) {
    u = perm[u];
    v = perm[v];
  }
  return Graph::from_edges(n, edges);
}

CnfFormula random_cnf(Rng& rng, int n, int m_max) {
  CnfFormula f;
  f.var_count = n;
  const int m = rng.between(1, m_max);
  for (int j = 0; j < m; ++j) {
    std::vector<int> clause;
    while (clause.empty()) {
      for (int i = 1; i <= n; ++i) {
        switch (rng.below(3)) {
          case 0: clause.push_back(i); break;
          case 1: clause.push_back(-i); break;
          default: break;
        }
      }
    }
    f.clauses.push_back(std::move(clause));
  }
  return normalize(std::move(f));
}

namespace {
void draw_nae_clauses(Rng& rng, NaeInstance& inst, int clauses);
}

NaeInstance random_nae(Rng& rng, int d, int vars, int clauses) {
  if (vars < 3 && clauses > 0) throw InputError("clauses need at least 3 variables");
  NaeInstance inst;
  inst.d = d;
  inst.var_count = vars;
  // Redraw until every variable occurs, when that is possible at all.
  const bool cover = 3 * clauses >= vars;
  do {
    inst.clauses.clear();
    draw_nae_clauses(rng, inst, clauses);
  } while (cover && !all_variables_used(inst));
  return inst;
}

namespace {
void draw_nae_clauses(Rng& rng, NaeInstance& inst, int clauses) {
  const int vars = inst.var_count;
  const int d = inst.d;
  for (int c = 0; c < clauses; ++c) {
    std::vector<int> pool(vars);
    for (int i = 0; i < vars; ++i) pool[i] = i;
    NaeClause clause;
    for (int i = 0; i < 3; ++i) {
      const auto pick = rng.below(pool.size());
      clause[i].var = pool[pick];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
      clause[i].bound = rng.between(1, d);
    }
    std::sort(clause.begin(), clause.end(),
              [](const NaeLiteral& a, const NaeLiteral& b) { return a.var < b.var; });
    inst.clauses.push_back(clause);
  }
}
}  // namespace

PlantedKernelInstance planted_kernel_instance(Rng& rng, int x_size, ModulatorMode mode) {
  if (x_size < 0 || x_size > 1) throw InputError("planted instances support |X| in {0, 1}");
  std::vector<Edge> edges;
  int n = x_size;
  const Vertex x = 0;
  // Part template: for each vertex, whether it is adjacent to x.
  std::vector<bool> shape;
  if (x_size == 1) {
    switch (rng.below(3)) {
      case 0: shape = {true, false}; break;
      case 1: shape = {true, false, false}; break;
      default: shape = {true, true, false}; break;
    }
  } else {
    shape = {false, false};
  }
  auto add_part = [&](const std::vector<bool>& adj) {
    const Vertex first = n;
    for (std::size_t i = 0; i < adj.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) edges.emplace_back(first + static_cast<Vertex>(j), n);
      if (adj[i]) edges.emplace_back(x, n);
      ++n;
    }
  };
  PlantedKernelInstance out;
  out.planted_parts = static_cast<int>(identical_parts_threshold(x_size));
  for (int i = 0; i < out.planted_parts; ++i) add_part(shape);
  // Extra parts with other signatures; each touches x so the graph stays
  // connected when |X| = 1.
  const int extra = rng.between(0, 2);
  for (int i = 0; i < extra; ++i) {
    std::vector<bool> adj;
    if (x_size == 1) {
      adj = {true};
      const int more = rng.between(0, 2);
      for (int j = 0; j < more; ++j) adj.push_back(rng.chance(50));
      if (adj == shape) adj.push_back(true);
      // At most two vertices per X-neighborhood inside a part.
      if (std::count(adj.begin(), adj.end(), true) > 2) adj = {true, true};
      if (std::count(adj.begin(), adj.end(), false) > 2) adj = {true, false, false};
      if (adj == shape) adj = {true};
    } else {
      adj = {false};
    }
    add_part(adj);
  }
  out.graph = Graph::from_edges(n, edges);
  out.modulator = {x_size == 1 ? std::vector<Vertex>{x} : std::vector<Vertex>{}, mode};
  if (mode == ModulatorMode::kCoCluster) out.graph = complement(out.graph);
  return out;
}

}  // namespace mdkit
