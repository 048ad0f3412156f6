#include "mdkit/kernel.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

#include "mdkit/error.hpp"

namespace mdkit {

namespace {

std::vector<Vertex> x_neighborhood(const Graph& g, const std::vector<bool>& in_x, Vertex v) {
  std::vector<Vertex> out;
  for (Vertex w : g.neighbors(v)) {
    if (in_x[w]) out.push_back(w);
  }
  return out;
}

std::vector<bool> membership(int n, std::span<const Vertex> xs) {
  std::vector<bool> in(n, false);
  for (Vertex v : xs) in[v] = true;
  return in;
}

void check_modulator_ids(const Graph& g, const Modulator& x) {
  for (Vertex v : x.vertices) {
    if (!g.contains(v)) throw InputError("modulator vertex " + std::to_string(v) + " not in graph");
  }
}

// First induced P3 of g restricted to vertices not in `gone`.
std::optional<std::array<Vertex, 3>> first_p3_avoiding(const Graph& g, const std::vector<bool>& gone) {
  for (Vertex a = 0; a < g.vertex_count(); ++a) {
    if (gone[a]) continue;
    for (Vertex b : g.neighbors(a)) {
      if (gone[b]) continue;
      for (Vertex c : g.neighbors(b)) {
        if (c > a && !gone[c] && !g.adjacent(a, c)) return std::array<Vertex, 3>{a, b, c};
      }
    }
  }
  return std::nullopt;
}

bool hit_all_p3s(const Graph& g, std::vector<bool>& gone, std::vector<Vertex>& picked, int room) {
  auto p3 = first_p3_avoiding(g, gone);
  if (!p3) return true;
  if (room == 0) return false;
  for (Vertex v : *p3) {
    gone[v] = true;
    picked.push_back(v);
    if (hit_all_p3s(g, gone, picked, room - 1)) return true;
    picked.pop_back();
    gone[v] = false;
  }
  return false;
}

std::optional<RuleApplication> apply_identical_parts(const Graph& g, int k, const Modulator& x,
                                                     Rule rule) {
  const auto classes = classify(g, x);
  const std::int64_t threshold = identical_parts_threshold(static_cast<int>(x.vertices.size()));
  for (const auto& cls : classes) {
    if (static_cast<std::int64_t>(cls.parts.size()) < threshold) continue;
    // Parts are disjoint, so ordering by smallest member is the
    // lexicographic order on their sorted vertex lists.
    const auto& victim = cls.parts.front();
    RuleApplication app;
    app.step.rule = rule;
    app.step.removed = victim;
    app.step.decrement = std::max(1, cls.twin_pair_count);
    app.k = k - app.step.decrement;
    app.reduced = remove_vertices(g, victim);
    return app;
  }
  return std::nullopt;
}

Modulator remap_modulator(const Modulator& x, const InducedSubgraph& sub, int old_n) {
  std::vector<Vertex> new_id(old_n, -1);
  for (Vertex i = 0; i < static_cast<Vertex>(sub.original_id.size()); ++i) {
    new_id[sub.original_id[i]] = i;
  }
  Modulator out{{}, x.mode};
  for (Vertex v : x.vertices) {
    if (new_id[v] != -1) out.vertices.push_back(new_id[v]);
  }
  return out;
}

}  // namespace

std::string to_string(ModulatorMode m) {
  return m == ModulatorMode::kCluster ? "cluster" : "co-cluster";
}

ModulatorMode parse_modulator_mode(const std::string& text) {
  if (text == "cluster") return ModulatorMode::kCluster;
  if (text == "co-cluster") return ModulatorMode::kCoCluster;
  throw InputError("unknown mode '" + text + "' (expected cluster or co-cluster)");
}

std::string to_string(Rule r) {
  switch (r) {
    case Rule::kRR1: return "RR1";
    case Rule::kRR2: return "RR2";
    case Rule::kRR3: return "RR3";
    case Rule::kRR4: return "RR4";
  }
  return "?";
}

Rule parse_rule(const std::string& text) {
  for (Rule r : {Rule::kRR1, Rule::kRR2, Rule::kRR3, Rule::kRR4}) {
    if (to_string(r) == text) return r;
  }
  throw InputError("unknown rule '" + text + "'");
}

bool is_valid_modulator(const Graph& g, const Modulator& x) {
  for (Vertex v : x.vertices) {
    if (!g.contains(v)) return false;
  }
  Graph rest = remove_vertices(g, x.vertices).graph;
  if (x.mode == ModulatorMode::kCoCluster) rest = complement(rest);
  return !first_induced_p3(rest).has_value();
}

std::optional<Modulator> find_modulator(const Graph& g, int budget, ModulatorMode mode) {
  if (budget < 0) throw InputError("modulator budget must be non-negative");
  const Graph target = mode == ModulatorMode::kCluster ? g : complement(g);
  for (int size = 0; size <= budget; ++size) {
    std::vector<bool> gone(g.vertex_count(), false);
    std::vector<Vertex> picked;
    if (hit_all_p3s(target, gone, picked, size)) {
      std::sort(picked.begin(), picked.end());
      return Modulator{std::move(picked), mode};
    }
  }
  return std::nullopt;
}

std::vector<std::vector<Vertex>> modulator_parts(const Graph& g, const Modulator& x) {
  check_modulator_ids(g, x);
  const InducedSubgraph rest = remove_vertices(g, x.vertices);
  const Graph shape = x.mode == ModulatorMode::kCluster ? rest.graph : complement(rest.graph);
  std::vector<std::vector<Vertex>> parts;
  for (const auto& comp : connected_components(shape)) {
    std::vector<Vertex> part;
    for (Vertex v : comp) part.push_back(rest.original_id[v]);
    const bool ok = x.mode == ModulatorMode::kCluster ? is_clique(g, part) : is_independent(g, part);
    if (!ok) {
      throw InputError(std::string("invalid modulator: G - X has a part that is not ") +
                       (x.mode == ModulatorMode::kCluster ? "a clique" : "an independent set") +
                       " (contains vertex " + std::to_string(part.front()) + ")");
    }
    parts.push_back(std::move(part));
  }
  return parts;
}

std::vector<EquivalenceClass> classify(const Graph& g, const Modulator& x) {
  const auto parts = modulator_parts(g, x);
  const auto in_x = membership(g.vertex_count(), x.vertices);

  std::map<std::vector<std::vector<Vertex>>, EquivalenceClass> by_signature;
  for (const auto& part : parts) {
    std::vector<std::vector<Vertex>> sig;
    for (Vertex v : part) sig.push_back(x_neighborhood(g, in_x, v));
    std::sort(sig.begin(), sig.end());
    int doubles = 0;
    for (std::size_t i = 0; i < sig.size();) {
      std::size_t j = i;
      while (j < sig.size() && sig[j] == sig[i]) ++j;
      if (j - i > 2) {
        throw InputError("part containing vertex " + std::to_string(part.front()) +
                         " has a neighborhood of multiplicity " + std::to_string(j - i) +
                         "; apply RR2 first");
      }
      if (j - i == 2) ++doubles;
      i = j;
    }
    auto& cls = by_signature[sig];
    cls.signature = sig;
    cls.twin_pair_count = doubles;
    cls.parts.push_back(part);
  }
  std::vector<EquivalenceClass> out;
  for (auto& [sig, cls] : by_signature) out.push_back(std::move(cls));
  return out;
}

std::vector<Vertex> clone_of(const Graph& g, const Modulator& x,
                             std::span<const EquivalenceClass> classes, Vertex u,
                             std::span<const Vertex> target) {
  const EquivalenceClass* home = nullptr;
  const EquivalenceClass* there = nullptr;
  for (const auto& cls : classes) {
    for (const auto& part : cls.parts) {
      if (std::find(part.begin(), part.end(), u) != part.end()) home = &cls;
      if (std::equal(part.begin(), part.end(), target.begin(), target.end())) there = &cls;
    }
  }
  if (home == nullptr || there == nullptr || home != there) {
    throw InputError("vertex " + std::to_string(u) + " and the target part are not in the same class");
  }
  const auto in_x = membership(g.vertex_count(), x.vertices);
  const auto nu = x_neighborhood(g, in_x, u);
  std::vector<Vertex> out;
  for (Vertex v : target) {
    if (x_neighborhood(g, in_x, v) == nu) out.push_back(v);
  }
  return out;
}

bool apply_rr1(const Graph& g, int k) { return g.vertex_count() > 0 && k <= 0; }

std::optional<RuleApplication> apply_rr2(const Graph& g, int k) {
  const int n = g.vertex_count();
  // Twin relations are equivalences; key each vertex by N[v] and by N(v).
  std::map<std::vector<Vertex>, int> closed_size, open_size;
  std::vector<std::vector<Vertex>> closed(n), open(n);
  for (Vertex v = 0; v < n; ++v) {
    auto nbrs = g.neighbors(v);
    open[v].assign(nbrs.begin(), nbrs.end());
    closed[v] = open[v];
    closed[v].insert(std::lower_bound(closed[v].begin(), closed[v].end(), v), v);
    ++closed_size[closed[v]];
    ++open_size[open[v]];
  }
  for (Vertex v = n - 1; v >= 0; --v) {
    if (closed_size[closed[v]] >= 3 || open_size[open[v]] >= 3) {
      RuleApplication app;
      app.step = {Rule::kRR2, {v}, 1};
      app.k = k - 1;
      app.reduced = remove_vertices(g, std::span<const Vertex>(&v, 1));
      return app;
    }
  }
  return std::nullopt;
}

std::int64_t identical_parts_threshold(int modulator_size) {
  if (modulator_size > 60) return std::numeric_limits<std::int64_t>::max();
  return (std::int64_t{1} << (modulator_size + 2)) + modulator_size + 2;
}

std::optional<RuleApplication> apply_rr3(const Graph& g, int k, const Modulator& x) {
  if (x.mode != ModulatorMode::kCluster) throw InputError("RR3 needs a cluster modulator");
  return apply_identical_parts(g, k, x, Rule::kRR3);
}

std::optional<RuleApplication> apply_rr4(const Graph& g, int k, const Modulator& x) {
  if (x.mode != ModulatorMode::kCoCluster) throw InputError("RR4 needs a co-cluster modulator");
  return apply_identical_parts(g, k, x, Rule::kRR4);
}

std::uint64_t kernel_size_bound(int modulator_size) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const auto x = static_cast<std::uint64_t>(modulator_size);
  // 2^(2^(x+1)) alone overflows once 2^(x+1) >= 64.
  if (x + 1 >= 6) return kMax;
  auto mul = [&](std::uint64_t a, std::uint64_t b) {
    return (a != 0 && b > kMax / a) ? kMax : a * b;
  };
  const std::uint64_t classes = std::uint64_t{1} << (std::uint64_t{1} << (x + 1));
  const std::uint64_t per_class = (std::uint64_t{1} << (x + 2)) + x + 1;
  const std::uint64_t part_size = std::uint64_t{1} << (x + 1);
  const std::uint64_t body = mul(mul(classes, per_class), part_size);
  return body > kMax - x ? kMax : body + x;
}

KernelResult kernelize(const Graph& g, int k, ModulatorMode mode, const KernelOptions& options) {
  KernelResult result;
  if (options.modulator) {
    if (options.modulator->mode != mode) throw InputError("modulator mode does not match kernel mode");
    result.modulator = *options.modulator;
    std::sort(result.modulator.vertices.begin(), result.modulator.vertices.end());
    if (!is_valid_modulator(g, result.modulator)) {
      throw InputError("invalid modulator: G - X is not a " +
                       std::string(mode == ModulatorMode::kCluster ? "cluster" : "co-cluster") + " graph");
    }
  } else {
    auto found = find_modulator(g, options.modulator_budget, mode);
    if (!found) {
      throw InputError("no " + to_string(mode) + " modulator of size <= " +
                       std::to_string(options.modulator_budget));
    }
    result.modulator = *found;
  }

  result.trace.mode = mode;
  result.trace.initial_k = k;

  Graph cur = g;
  std::vector<Vertex> orig(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) orig[v] = v;
  Modulator x = result.modulator;
  int cur_k = k;

  auto record = [&](RuleApplication&& app) {
    KernelStep step = app.step;
    for (Vertex& v : step.removed) v = orig[v];
    std::sort(step.removed.begin(), step.removed.end());
    result.trace.steps.push_back(std::move(step));
    x = remap_modulator(x, app.reduced, cur.vertex_count());
    std::vector<Vertex> next_orig;
    for (Vertex v : app.reduced.original_id) next_orig.push_back(orig[v]);
    orig = std::move(next_orig);
    cur = std::move(app.reduced.graph);
    cur_k = app.k;
  };
  auto trivial_no = [&] {
    if (!apply_rr1(cur, cur_k)) return false;
    result.trace.steps.push_back({Rule::kRR1, {}, 0});
    result.outcome = KernelOutcome::kTrivialNo;
    return true;
  };

  bool stopped = trivial_no();
  while (!stopped) {
    while (!stopped) {
      auto app = apply_rr2(cur, cur_k);
      if (!app) break;
      record(std::move(*app));
      stopped = trivial_no();
    }
    if (stopped) break;
    auto app = mode == ModulatorMode::kCluster ? apply_rr3(cur, cur_k, x) : apply_rr4(cur, cur_k, x);
    if (!app) break;
    record(std::move(*app));
    stopped = trivial_no();
  }

  result.kernel = std::move(cur);
  result.original_id = std::move(orig);
  result.k = cur_k;
  result.trace.final_k = cur_k;
  if (result.outcome == KernelOutcome::kReduced &&
      static_cast<std::uint64_t>(result.kernel.vertex_count()) >
          kernel_size_bound(static_cast<int>(x.vertices.size()))) {
    throw std::logic_error("kernel exceeds the size bound");
  }
  return result;
}

std::vector<std::string> twin_distance_violations(const Graph& g, const DistanceMatrix& d) {
  std::vector<std::string> out;
  const TwinReport t = twins(g);
  for (const auto* pairs : {&t.true_twin_pairs, &t.false_twin_pairs}) {
    for (const auto& [u, v] : *pairs) {
      for (Vertex w = 0; w < g.vertex_count(); ++w) {
        if (w != u && w != v && d(u, w) != d(v, w)) {
          out.push_back("twins " + std::to_string(u) + "," + std::to_string(v) + " differ at " +
                        std::to_string(w));
        }
      }
    }
  }
  return out;
}

std::vector<std::string> clone_distance_violations(const Graph& g, const Modulator& x,
                                                   const DistanceMatrix& d) {
  std::vector<std::string> out;
  const auto classes = classify(g, x);
  for (const auto& cls : classes) {
    for (std::size_t a = 0; a < cls.parts.size(); ++a) {
      for (std::size_t b = 0; b < cls.parts.size(); ++b) {
        if (a == b) continue;
        const auto& c1 = cls.parts[a];
        const auto& c2 = cls.parts[b];
        std::vector<bool> inside(g.vertex_count(), false);
        for (Vertex v : c1) inside[v] = true;
        for (Vertex v : c2) inside[v] = true;
        for (Vertex u : c1) {
          const auto u_clones = clone_of(g, x, classes, u, c2);
          for (Vertex v : u_clones) {
            for (Vertex w = 0; w < g.vertex_count(); ++w) {
              if (!inside[w] && d(u, w) != d(v, w)) {
                out.push_back("clones " + std::to_string(u) + "," + std::to_string(v) +
                              " differ at " + std::to_string(w));
              }
            }
          }
          for (Vertex v2 : c2) {
            for (Vertex v1 : clone_of(g, x, classes, v2, c1)) {
              for (Vertex u2 : u_clones) {
                if (d(u, v2) != d(u2, v1)) {
                  out.push_back("clone swap " + std::to_string(u) + "," + std::to_string(v2) +
                                " vs " + std::to_string(u2) + "," + std::to_string(v1));
                }
              }
            }
          }
        }
      }
    }
  }
  return out;
}

InducedSubgraph replay_trace(const Graph& g, const KernelTrace& trace) {
  std::vector<Vertex> removed;
  for (const auto& step : trace.steps) {
    removed.insert(removed.end(), step.removed.begin(), step.removed.end());
  }
  std::sort(removed.begin(), removed.end());
  if (std::adjacent_find(removed.begin(), removed.end()) != removed.end()) {
    throw InputError("trace removes a vertex twice");
  }
  return remove_vertices(g, removed);
}

}  // namespace mdkit
