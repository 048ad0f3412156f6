#include "mdkit/nae.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "mdkit/error.hpp"

namespace mdkit {

namespace {

std::string var_tag(int x) { return "x" + std::to_string(x); }
std::string side_tag(int c, bool bar) { return (bar ? "cbar" : "c") + std::to_string(c); }
std::string clause_vertex(int c, bool bar) {
  return std::string(bar ? "cbar" : "c") + "[" + std::to_string(c) + "]";
}
std::string at(const std::string& role, const std::string& a) { return role + "[" + a + "]"; }
std::string at(const std::string& role, const std::string& a, const std::string& b) {
  return role + "[" + a + "][" + b + "]";
}
// v^x_i with v_0 = u1 and v_{d+1} = u2.
std::string cycle_v(int x, int i, int d) {
  if (i == 0) return at("u1", var_tag(x));
  if (i == d + 1) return at("u2", var_tag(x));
  return at("v", var_tag(x), std::to_string(i));
}

class GadgetBuilder {
 public:
  Vertex add(std::string label) {
    labels_.push_back(std::move(label));
    return static_cast<Vertex>(labels_.size() - 1);
  }
  void connect(Vertex a, Vertex b) { edges_.emplace_back(a, b); }
  Vertex next_id() const { return static_cast<Vertex>(labels_.size()); }

  // Path of `length` edges from `from` to `to`; interior vertices are created
  // in order from `from`, named by `name(j)` for j = 1..length-1.
  template <typename Name>
  void path(Vertex from, Vertex to, int length, Name name) {
    Vertex prev = from;
    for (int j = 1; j < length; ++j) {
      Vertex cur = add(name(j));
      connect(prev, cur);
      prev = cur;
    }
    connect(prev, to);
  }

  // K_{1,3} with `leaf` as one of the leaves: adds the centre and two leaves.
  void claw(Vertex leaf, const std::string& suffix) {
    Vertex hub = add("h" + suffix);
    Vertex t1 = add("t1" + suffix);
    Vertex t2 = add("t2" + suffix);
    connect(leaf, hub);
    connect(hub, t1);
    connect(hub, t2);
  }

  Graph build() {
    const int n = static_cast<int>(labels_.size());
    return Graph::from_edges(n, edges_, std::move(labels_));
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
};

// Labels of the forced part of the canonical solution.
std::vector<std::string> forced_labels(const NaeInstance& inst) {
  std::vector<std::string> out{"t1"};
  for (int c = 0; c < static_cast<int>(inst.clauses.size()); ++c) {
    for (bool bar : {false, true}) {
      const std::string s = side_tag(c, bar);
      out.push_back(at("p1", s));
      out.push_back(at("t1", s));
      for (const auto& lit : inst.clauses[c]) out.push_back(at("t1", var_tag(lit.var), s));
    }
  }
  return out;
}

}  // namespace

void validate(const NaeInstance& inst) {
  if (inst.d < 1) throw InputError("d must be at least 1");
  if (inst.var_count < 0) throw InputError("variable count must be non-negative");
  for (std::size_t c = 0; c < inst.clauses.size(); ++c) {
    const auto& cl = inst.clauses[c];
    std::set<int> vars;
    for (const auto& lit : cl) {
      if (lit.var < 0 || lit.var >= inst.var_count) {
        throw InputError("clause " + std::to_string(c) + " references unknown variable " +
                         std::to_string(lit.var));
      }
      if (lit.bound < 1 || lit.bound > inst.d) {
        throw InputError("clause " + std::to_string(c) + " has bound " + std::to_string(lit.bound) +
                         " outside 1.." + std::to_string(inst.d));
      }
      vars.insert(lit.var);
    }
    if (vars.size() != 3) {
      throw InputError("clause " + std::to_string(c) + " must use three distinct variables");
    }
  }
}

bool all_variables_used(const NaeInstance& inst) {
  std::vector<bool> used(inst.var_count, false);
  for (const auto& cl : inst.clauses) {
    for (const auto& lit : cl) used[lit.var] = true;
  }
  return std::all_of(used.begin(), used.end(), [](bool u) { return u; });
}

bool satisfies(const NaeInstance& inst, const std::vector<int>& assignment) {
  if (static_cast<int>(assignment.size()) != inst.var_count) return false;
  for (int v : assignment) {
    if (v < 1 || v > inst.d) return false;
  }
  for (const auto& cl : inst.clauses) {
    int true_count = 0;
    for (const auto& lit : cl) true_count += assignment[lit.var] <= lit.bound ? 1 : 0;
    if (true_count == 0 || true_count == 3) return false;
  }
  return true;
}

std::optional<std::vector<int>> nae_brute_force(const NaeInstance& inst, std::uint64_t cap) {
  validate(inst);
  std::uint64_t total = 1;
  for (int i = 0; i < inst.var_count; ++i) {
    if (total > cap / static_cast<std::uint64_t>(inst.d)) {
      throw ResourceLimit("d^vars exceeds the enumeration cap of " + std::to_string(cap));
    }
    total *= static_cast<std::uint64_t>(inst.d);
  }
  if (total > cap) throw ResourceLimit("d^vars exceeds the enumeration cap of " + std::to_string(cap));

  // Odometer over 1..d, last variable fastest: lexicographic order.
  std::vector<int> a(inst.var_count, 1);
  while (true) {
    if (satisfies(inst, a)) return a;
    int i = inst.var_count - 1;
    while (i >= 0 && a[i] == inst.d) a[i--] = 1;
    if (i < 0) return std::nullopt;
    ++a[i];
  }
}

Vertex GadgetArtifact::vertex(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw InputError("no gadget vertex labelled '" + label + "'");
  return it->second;
}

void GadgetArtifact::reindex() {
  index_.clear();
  if (!graph.has_labels()) return;
  for (Vertex v = 0; v < graph.vertex_count(); ++v) index_.emplace(graph.label(v), v);
}

GadgetArtifact build_nae_gadget(const NaeInstance& inst) {
  validate(inst);
  const int d = inst.d;
  const int m = static_cast<int>(inst.clauses.size());
  GadgetBuilder b;

  // Variable cycles: u1, v1..vd, u2, wd..w1.
  std::vector<Vertex> u1(inst.var_count), u2(inst.var_count);
  for (int x = 0; x < inst.var_count; ++x) {
    const std::string xt = var_tag(x);
    u1[x] = b.add(at("u1", xt));
    Vertex prev = u1[x];
    for (int i = 1; i <= d; ++i) {
      Vertex v = b.add(at("v", xt, std::to_string(i)));
      b.connect(prev, v);
      prev = v;
    }
    u2[x] = b.add(at("u2", xt));
    b.connect(prev, u2[x]);
    prev = u2[x];
    for (int i = d; i >= 1; --i) {
      Vertex w = b.add(at("w", xt, std::to_string(i)));
      b.connect(prev, w);
      prev = w;
    }
    b.connect(prev, u1[x]);
  }

  // Clause halves H_c then H_cbar: the claw core plus the path to b.
  struct Half {
    Vertex ell, centre, b;
  };
  std::vector<std::array<Half, 2>> halves(m);
  for (int c = 0; c < m; ++c) {
    for (bool bar : {false, true}) {
      const std::string s = side_tag(c, bar);
      Half h{};
      h.ell = b.add(clause_vertex(c, bar));
      h.centre = b.add(at("v", s));
      Vertex p1 = b.add(at("p1", s));
      Vertex p2 = b.add(at("p2", s));
      b.connect(h.ell, h.centre);
      b.connect(h.centre, p1);
      b.connect(h.centre, p2);
      Vertex prev = h.ell;
      for (int j = 1; j < d; ++j) {
        Vertex v = b.add(at("Pb", s) + "#" + std::to_string(j));
        b.connect(prev, v);
        prev = v;
      }
      h.b = b.add(at("b", s));
      b.connect(prev, h.b);
      halves[c][bar ? 1 : 0] = h;
    }
  }

  // Connection paths by variable, clause, side. The claw hangs off the path
  // vertex next to v^l, which is labelled w[x][side] instead of its path name.
  for (int x = 0; x < inst.var_count; ++x) {
    const std::string xt = var_tag(x);
    for (int c = 0; c < m; ++c) {
      const auto& cl = inst.clauses[c];
      auto lit = std::find_if(cl.begin(), cl.end(), [&](const NaeLiteral& l) { return l.var == x; });
      if (lit == cl.end()) continue;
      const int a = lit->bound;
      for (bool bar : {false, true}) {
        const std::string s = side_tag(c, bar);
        const Half& h = halves[c][bar ? 1 : 0];
        auto plain = [&](const std::string& role) {
          return [&, role](int j) { return at(role, xt, s) + "#" + std::to_string(j); };
        };
        auto with_attach = [&](const std::string& role) {
          return [&, role](int j) {
            return j == 1 ? at("w", xt, s) : at(role, xt, s) + "#" + std::to_string(j);
          };
        };
        Vertex w = -1;
        if (!bar) {
          b.path(h.b, u1[x], 4 * d - a, plain("P1"));
          w = b.next_id();
          b.path(h.centre, u2[x], 4 * d + a - 1, with_attach("P2"));
        } else {
          w = b.next_id();
          b.path(h.centre, u1[x], 5 * d - a, with_attach("P1"));
          b.path(h.b, u2[x], 3 * d + a, plain("P2"));
        }
        b.claw(w, "[" + xt + "][" + s + "]");
      }
    }
  }

  // Central path t1 - p - t2 and the paths P_l from p to every v^l.
  b.add("t1");
  const Vertex p = b.add("p");
  b.add("t2");
  b.connect(p - 1, p);
  b.connect(p, p + 1);
  for (int c = 0; c < m; ++c) {
    for (bool bar : {false, true}) {
      const std::string s = side_tag(c, bar);
      const Half& h = halves[c][bar ? 1 : 0];
      // Interior named from the clause end: Pl[s]#1 next to v^l, w[s] next to p.
      Vertex prev = h.centre;
      for (int j = 1; j < 2 * d; ++j) {
        Vertex v = b.add(j == 2 * d - 1 ? at("w", s) : at("Pl", s) + "#" + std::to_string(j));
        b.connect(prev, v);
        prev = v;
      }
      b.connect(prev, p);
      b.claw(prev, "[" + s + "]");
    }
  }

  GadgetArtifact art;
  art.graph = b.build();
  art.k = inst.var_count + 10 * m + 1;
  art.reindex();
  return art;
}

std::int64_t nae_gadget_vertex_count(const NaeInstance& inst) {
  const std::int64_t d = inst.d;
  std::int64_t total = 3;                         // t1, p, t2
  total += inst.var_count * (2 * d + 2);          // cycles
  for (const auto& cl : inst.clauses) {
    total += 2 * (4 + d);                         // cores and P_b
    total += 2 * (2 * d - 1 + 3);                 // P_l interiors and claws
    for (const auto& lit : cl) {
      const std::int64_t a = lit.bound;
      total += (4 * d - a - 1) + (4 * d + a - 2) + 3;  // side c
      total += (3 * d + a - 1) + (5 * d - a - 1) + 3;  // side cbar
    }
  }
  return total;
}

std::vector<Vertex> fvs_witness(const GadgetArtifact& art, const NaeInstance& inst) {
  std::vector<Vertex> out{art.vertex("p")};
  for (int x = 0; x < inst.var_count; ++x) {
    out.push_back(art.vertex(at("u1", var_tag(x))));
    out.push_back(art.vertex(at("u2", var_tag(x))));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ResolvingCertificate resolving_set_from_assignment(const GadgetArtifact& art,
                                                   const NaeInstance& inst,
                                                   const std::vector<int>& assignment) {
  if (!satisfies(inst, assignment)) throw InputError("assignment does not satisfy the instance");
  std::vector<Vertex> s;
  for (const auto& label : forced_labels(inst)) s.push_back(art.vertex(label));
  for (int x = 0; x < inst.var_count; ++x) {
    s.push_back(art.vertex(at("v", var_tag(x), std::to_string(assignment[x]))));
  }
  std::sort(s.begin(), s.end());
  return is_resolving_set(art.graph, s);
}

SweepReport reverse_candidate_sweep(const GadgetArtifact& art, const NaeInstance& inst,
                                    std::uint64_t cap) {
  validate(inst);
  const int d = inst.d;
  const int vars = inst.var_count;
  std::uint64_t total = 1;
  for (int x = 0; x < vars; ++x) {
    if (total > cap / static_cast<std::uint64_t>(2 * d)) {
      throw ResourceLimit("(2d)^vars exceeds the sweep cap of " + std::to_string(cap));
    }
    total *= static_cast<std::uint64_t>(2 * d);
  }
  if (total > cap) throw ResourceLimit("(2d)^vars exceeds the sweep cap of " + std::to_string(cap));

  const Graph& g = art.graph;
  const int n = g.vertex_count();

  // Partition V by distance vectors to the forced part.
  std::vector<std::int64_t> cls(n, 0);
  for (const auto& label : forced_labels(inst)) {
    const auto dist = bfs_distances(g, art.vertex(label));
    std::map<std::pair<std::int64_t, Dist>, std::int64_t> relabel;
    for (Vertex v = 0; v < n; ++v) {
      auto [it, _] = relabel.try_emplace({cls[v], dist[v]}, static_cast<std::int64_t>(relabel.size()));
      cls[v] = it->second;
    }
  }
  // Only vertices sharing a class with another vertex still need separating.
  std::map<std::int64_t, int> class_size;
  for (Vertex v = 0; v < n; ++v) ++class_size[cls[v]];
  std::vector<Vertex> open;
  for (Vertex v = 0; v < n; ++v) {
    if (class_size[cls[v]] > 1) open.push_back(v);
  }

  // Candidates per variable: v1..vd then w1..wd, with distances to open vertices.
  struct Candidate {
    Vertex id;
    int index;
    std::vector<Dist> to_open;
  };
  std::vector<std::vector<Candidate>> cands(vars);
  for (int x = 0; x < vars; ++x) {
    for (const char* side : {"v", "w"}) {
      for (int i = 1; i <= d; ++i) {
        Candidate cand{art.vertex(at(side, var_tag(x), std::to_string(i))), i, {}};
        const auto dist = bfs_distances(g, cand.id);
        for (Vertex v : open) cand.to_open.push_back(dist[v]);
        cands[x].push_back(std::move(cand));
      }
    }
  }

  SweepReport report;
  std::vector<int> pick(vars, 0);
  std::vector<std::pair<std::vector<std::int64_t>, Vertex>> keys(open.size());
  while (true) {
    ++report.choices;
    for (std::size_t o = 0; o < open.size(); ++o) {
      auto& key = keys[o].first;
      key.assign(1, cls[open[o]]);
      for (int x = 0; x < vars; ++x) key.push_back(cands[x][pick[x]].to_open[o]);
      keys[o].second = open[o];
    }
    std::sort(keys.begin(), keys.end());
    bool resolving = true;
    for (std::size_t o = 1; o < keys.size() && resolving; ++o) {
      resolving = keys[o].first != keys[o - 1].first;
    }
    if (resolving) {
      SweepChoice choice;
      for (int x = 0; x < vars; ++x) {
        choice.picks.push_back(cands[x][pick[x]].id);
        choice.assignment.push_back(cands[x][pick[x]].index);
      }
      choice.satisfies = satisfies(inst, choice.assignment);
      report.resolving.push_back(std::move(choice));
    }
    int x = vars - 1;
    while (x >= 0 && pick[x] == 2 * d - 1) pick[x--] = 0;
    if (x < 0) break;
    ++pick[x];
  }
  return report;
}

namespace {

std::vector<Dist> multi_source_bfs(const Graph& g, std::span<const Vertex> sources) {
  std::vector<Dist> dist(g.vertex_count(), kUnreachable);
  std::vector<Vertex> queue;
  for (Vertex s : sources) {
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

Dist set_distance(const std::vector<Dist>& from, std::span<const Vertex> to) {
  Dist best = kUnreachable;
  for (Vertex v : to) best = std::min(best, from[v]);
  return best;
}

}  // namespace

ClaimReport check_distance_claims(const GadgetArtifact& art, const NaeInstance& inst) {
  validate(inst);
  const Graph& g = art.graph;
  const int d = inst.d;
  const int m = static_cast<int>(inst.clauses.size());
  ClaimReport report;
  auto record = [&](std::string claim, std::string subject, bool at_least, Dist expected,
                    Dist actual) {
    ClaimEntry e{std::move(claim), std::move(subject), at_least ? ">=" : "=", expected, actual,
                 at_least ? actual >= expected : actual == expected};
    if (!e.ok) ++report.mismatches;
    report.entries.push_back(std::move(e));
  };

  // Vertex sets of the variable gadgets and clause halves.
  std::vector<std::vector<Vertex>> gx(inst.var_count);
  for (int x = 0; x < inst.var_count; ++x) {
    for (int i = 0; i <= d + 1; ++i) gx[x].push_back(art.vertex(cycle_v(x, i, d)));
    for (int i = 1; i <= d; ++i) gx[x].push_back(art.vertex(at("w", var_tag(x), std::to_string(i))));
  }
  struct Side {
    int clause;
    bool bar;
    std::string tag;
    std::vector<Vertex> vertices;
  };
  std::vector<Side> sides;
  for (int c = 0; c < m; ++c) {
    for (bool bar : {false, true}) {
      Side s{c, bar, side_tag(c, bar), {}};
      s.vertices = {art.vertex(clause_vertex(c, bar)), art.vertex(at("v", s.tag)),
                    art.vertex(at("p1", s.tag)), art.vertex(at("p2", s.tag)),
                    art.vertex(at("b", s.tag))};
      for (int j = 1; j < d; ++j) s.vertices.push_back(art.vertex(at("Pb", s.tag) + "#" + std::to_string(j)));
      sides.push_back(std::move(s));
    }
  }
  auto member = [&](int x, int c) {
    const auto& cl = inst.clauses[c];
    return std::any_of(cl.begin(), cl.end(), [&](const NaeLiteral& l) { return l.var == x; });
  };

  // Separation between gadget pieces.
  for (std::size_t s = 0; s < sides.size(); ++s) {
    const auto from = multi_source_bfs(g, sides[s].vertices);
    for (std::size_t t = s + 1; t < sides.size(); ++t) {
      record("1(i)", sides[s].tag + " " + sides[t].tag, false, 4 * d,
             set_distance(from, sides[t].vertices));
    }
  }
  const Vertex p = art.vertex("p");
  for (int x = 0; x < inst.var_count; ++x) {
    const auto from = multi_source_bfs(g, gx[x]);
    const std::string xt = var_tag(x);
    for (int y = x + 1; y < inst.var_count; ++y) {
      record("1(ii)", xt + " " + var_tag(y), true, 6 * d, set_distance(from, gx[y]));
    }
    for (const Side& s : sides) {
      const Dist actual = set_distance(from, s.vertices);
      if (member(x, s.clause)) {
        record("1(iii)", xt + " " + s.tag, true, 3 * d, actual);
      } else {
        record("1(iv)", xt + " " + s.tag, true, 8 * d, actual);
        const Dist via_p = from[p] == kUnreachable ? kUnreachable : from[p] + 2 * d;
        record("1(iv)", xt + " " + s.tag + " via p", false, via_p, actual);
      }
    }
  }

  // Distances from v_i of a member variable.
  for (int c = 0; c < m; ++c) {
    for (const auto& lit : inst.clauses[c]) {
      const int x = lit.var;
      const int a = lit.bound;
      const std::string xt = var_tag(x);
      const std::string sc = side_tag(c, false);
      const std::string sb = side_tag(c, true);
      const Vertex c_v = art.vertex(clause_vertex(c, false));
      const Vertex vc = art.vertex(at("v", sc));
      const Vertex tc = art.vertex(at("t1", xt, sc));
      const Vertex cb_v = art.vertex(clause_vertex(c, true));
      const Vertex vcb = art.vertex(at("v", sb));
      const Vertex tcb = art.vertex(at("t1", xt, sb));
      for (int i = 0; i <= d + 1; ++i) {
        const auto dist = bfs_distances(g, art.vertex(cycle_v(x, i, d)));
        const std::string subj = xt + " c" + std::to_string(c) + " i=" + std::to_string(i);
        record("2(i)", subj, false, i <= a ? 5 * d + i - a : 5 * d + 1 + a - i, dist[c_v]);
        record("2(ii)", subj, false, i <= a - 1 ? 5 * d + 1 + i - a : 5 * d + a - i, dist[vc]);
        record("2(iii)", subj, false, i <= a - 2 ? 5 * d + 4 + i - a : 5 * d + 1 + a - i, dist[tc]);
        record("3(i)", subj, false, i <= a ? 5 * d + 1 + i - a : 5 * d + 1 + a - i, dist[cb_v]);
        record("3(ii)", subj, false, i <= a + 1 ? 5 * d + i - a : 5 * d + 2 + a - i, dist[vcb]);
        record("3(iii)", subj, false, i <= a + 2 ? 5 * d + 1 + i - a : 5 * d + 5 + a - i, dist[tcb]);
      }
    }
  }
  return report;
}

}  // namespace mdkit
