#include "mdkit/sat.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mdkit/error.hpp"

namespace mdkit {

namespace {

std::string idx(const std::string& role, int i) { return role + "[" + std::to_string(i) + "]"; }

bool literal_less(int a, int b) {
  if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
  return a < b;
}

}  // namespace

void validate(const CnfFormula& f) {
  if (f.var_count < 0) throw InputError("variable count must be non-negative");
  std::set<std::vector<int>> seen;
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    const auto& cl = f.clauses[j];
    const std::string where = "clause " + std::to_string(j + 1);
    if (cl.empty()) throw InputError(where + " is empty");
    std::set<int> lits;
    for (int lit : cl) {
      if (lit == 0 || std::abs(lit) > f.var_count) {
        throw InputError(where + " has literal " + std::to_string(lit) + " out of range");
      }
      if (lits.count(-lit)) throw InputError(where + " is tautological");
      lits.insert(lit);
    }
    std::vector<int> key(lits.begin(), lits.end());
    if (!seen.insert(key).second) throw InputError(where + " is a duplicate");
  }
}

CnfFormula normalize(CnfFormula f) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> kept;
  for (auto& cl : f.clauses) {
    std::sort(cl.begin(), cl.end(), literal_less);
    cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
    if (seen.insert(cl).second) kept.push_back(std::move(cl));
  }
  f.clauses = std::move(kept);
  validate(f);
  return f;
}

CnfFormula parse_dimacs_cnf(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_header = false;
  int declared = 0;
  CnfFormula f;
  std::vector<int> current;
  int current_line = 0;
  auto fail = [&](const std::string& msg) {
    throw InputError("line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;
    if (first == "%") break;
    if (first == "p") {
      if (have_header) fail("second header");
      std::string fmt;
      long long n = -1, m = -1;
      if (!(ls >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0) fail("malformed header");
      std::string extra;
      if (ls >> extra) fail("malformed header");
      f.var_count = static_cast<int>(n);
      declared = static_cast<int>(m);
      have_header = true;
      continue;
    }
    if (!have_header) fail("clause before header");
    ls.clear();
    ls.str(line);
    std::string tok;
    while (ls >> tok) {
      int lit = 0;
      std::size_t used = 0;
      try {
        lit = std::stoi(tok, &used);
      } catch (const std::exception&) {
        fail("invalid literal '" + tok + "'");
      }
      if (used != tok.size()) fail("invalid literal '" + tok + "'");
      if (lit == 0) {
        if (current.empty()) fail("empty clause");
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (std::abs(lit) > f.var_count) fail("literal " + tok + " out of range");
      if (current.empty()) current_line = line_no;
      if (std::find(current.begin(), current.end(), -lit) != current.end()) {
        fail("tautological clause");
      }
      current.push_back(lit);
    }
  }
  if (!have_header) throw InputError("missing 'p cnf' header");
  if (!current.empty()) {
    throw InputError("line " + std::to_string(current_line) + ": clause not terminated by 0");
  }
  if (static_cast<int>(f.clauses.size()) != declared) {
    throw InputError("header declares " + std::to_string(declared) + " clauses, found " +
                     std::to_string(f.clauses.size()));
  }
  return normalize(std::move(f));
}

std::string write_dimacs_cnf(const CnfFormula& f) {
  std::string out = "p cnf " + std::to_string(f.var_count) + " " + std::to_string(f.clauses.size()) + "\n";
  for (const auto& cl : f.clauses) {
    for (int lit : cl) out += std::to_string(lit) + " ";
    out += "0\n";
  }
  return out;
}

bool satisfies(const CnfFormula& f, const std::vector<bool>& assignment) {
  if (static_cast<int>(assignment.size()) != f.var_count) return false;
  return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const std::vector<int>& cl) {
    return std::any_of(cl.begin(), cl.end(), [&](int lit) {
      return assignment[std::abs(lit) - 1] == (lit > 0);
    });
  });
}

std::optional<std::vector<bool>> sat_brute_force(const CnfFormula& f, std::uint64_t cap) {
  validate(f);
  if (f.var_count >= 63 || (std::uint64_t{1} << f.var_count) > cap) {
    throw ResourceLimit("2^" + std::to_string(f.var_count) + " exceeds the enumeration cap of " +
                        std::to_string(cap));
  }
  const std::uint64_t total = std::uint64_t{1} << f.var_count;
  std::vector<bool> a(f.var_count);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int i = 0; i < f.var_count; ++i) a[i] = (mask >> (f.var_count - 1 - i)) & 1;
    if (satisfies(f, a)) return a;
  }
  return std::nullopt;
}

int sat_alpha(int n) {
  if (n < 0) throw InputError("variable count must be non-negative");
  // Compare 2^a with 3^n digit by digit on little-endian base-2^32 limbs.
  std::vector<std::uint64_t> three{1};
  for (int i = 0; i < n; ++i) {
    std::uint64_t carry = 0;
    for (auto& limb : three) {
      const std::uint64_t v = limb * 3 + carry;
      limb = v & 0xffffffffu;
      carry = v >> 32;
    }
    if (carry) three.push_back(carry);
  }
  // bit length of 3^n; 3^n is odd and > 1 for n >= 1, so never a power of two.
  int bits = 32 * static_cast<int>(three.size() - 1);
  for (std::uint64_t top = three.back(); top; top >>= 1) ++bits;
  return n == 0 ? 0 : bits;
}

std::string to_string(SatVariant v) { return v == SatVariant::kVc ? "vc" : "clique"; }

SatVariant parse_sat_variant(const std::string& text) {
  if (text == "vc") return SatVariant::kVc;
  if (text == "clique") return SatVariant::kClique;
  throw InputError("unknown variant '" + text + "' (expected vc or clique)");
}

SatGadgetArtifact build_sat_gadget(const CnfFormula& f, SatVariant variant) {
  validate(f);
  const int n = f.var_count;
  const int m = static_cast<int>(f.clauses.size());
  const int alpha = sat_alpha(n);
  if (alpha < 31 && m > (1 << alpha) - 1) {
    throw InputError("more clauses than 2^alpha - 1; clause indices would not fit");
  }

  std::vector<std::string> labels;
  std::vector<Edge> edges;
  auto add = [&](std::string label) {
    labels.push_back(std::move(label));
    return static_cast<Vertex>(labels.size() - 1);
  };

  std::vector<Vertex> t(n + 1), f_(n + 1);
  for (int i = 1; i <= n; ++i) {
    t[i] = add(idx("t", i));
    const Vertex a1 = add(idx("a1", i));
    const Vertex b1 = add(idx("b1", i));
    f_[i] = add(idx("f", i));
    const Vertex b2 = add(idx("b2", i));
    const Vertex a2 = add(idx("a2", i));
    const Vertex cyc[] = {t[i], a1, b1, f_[i], b2, a2};
    for (int s = 0; s < 6; ++s) edges.emplace_back(cyc[s], cyc[(s + 1) % 6]);
  }
  const Vertex g1 = add("g1");
  const Vertex g = add("g");
  const Vertex g2 = add("g2");
  edges.emplace_back(g1, g);
  edges.emplace_back(g, g2);
  for (int i = 1; i <= n; ++i) {
    edges.emplace_back(t[i], g);
    edges.emplace_back(f_[i], g);
  }

  std::vector<Vertex> c1(m + 1), c2(m + 1);
  for (int j = 1; j <= m; ++j) {
    c1[j] = add(idx("c1", j));
    c2[j] = add(idx("c2", j));
    const auto& cl = f.clauses[j - 1];
    for (int i = 1; i <= n; ++i) {
      edges.emplace_back(c2[j], t[i]);
      edges.emplace_back(c2[j], f_[i]);
      const bool true_satisfies = std::find(cl.begin(), cl.end(), i) != cl.end();
      const bool false_satisfies = std::find(cl.begin(), cl.end(), -i) != cl.end();
      if (!true_satisfies) edges.emplace_back(c1[j], t[i]);
      if (!false_satisfies) edges.emplace_back(c1[j], f_[i]);
    }
  }

  std::vector<Vertex> z(alpha + 1);
  for (int l = 1; l <= alpha; ++l) {
    const Vertex z1 = add(idx("z1", l));
    z[l] = add(idx("z", l));
    const Vertex z2 = add(idx("z2", l));
    edges.emplace_back(z1, z[l]);
    edges.emplace_back(z[l], z2);
  }
  for (int j = 1; j <= m; ++j) {
    for (int l = 1; l <= alpha; ++l) {
      if ((j >> (l - 1)) & 1) {
        edges.emplace_back(c1[j], z[l]);
        edges.emplace_back(c2[j], z[l]);
      }
    }
  }
  std::vector<Vertex> top(z.begin() + 1, z.end());
  top.push_back(g);
  for (std::size_t a = 0; a < top.size(); ++a) {
    for (std::size_t b = a + 1; b < top.size(); ++b) edges.emplace_back(top[a], top[b]);
  }

  if (variant == SatVariant::kClique) {
    std::vector<Vertex> k;
    for (int j = 1; j <= m; ++j) {
      k.push_back(c1[j]);
      k.push_back(c2[j]);
    }
    for (std::size_t a = 0; a < k.size(); ++a) {
      for (std::size_t b = a + 1; b < k.size(); ++b) edges.emplace_back(k[a], k[b]);
    }
  }

  SatGadgetArtifact art;
  const int vertex_count = static_cast<int>(labels.size());
  art.graph = Graph::from_edges(vertex_count, edges, std::move(labels));
  art.k = n + alpha + 1;
  art.variant = variant;
  art.n = n;
  art.m = m;
  art.alpha = alpha;
  art.reindex();
  return art;
}

SatGadgetArtifact build_vc_gadget(const CnfFormula& f) { return build_sat_gadget(f, SatVariant::kVc); }

SatGadgetArtifact build_clique_gadget(const CnfFormula& f) {
  return build_sat_gadget(f, SatVariant::kClique);
}

std::vector<Vertex> sat_r1(const SatGadgetArtifact& art) {
  std::vector<Vertex> r{art.vertex("g1")};
  for (int l = 1; l <= art.alpha; ++l) r.push_back(art.vertex(idx("z1", l)));
  return r;
}

ResolvingCertificate resolving_set_from_sat_assignment(const SatGadgetArtifact& art,
                                                       const CnfFormula& f,
                                                       const std::vector<bool>& assignment) {
  if (!satisfies(f, assignment)) throw InputError("assignment does not satisfy the formula");
  std::vector<Vertex> r = sat_r1(art);
  for (int i = 1; i <= art.n; ++i) r.push_back(art.vertex(idx(assignment[i - 1] ? "a1" : "b1", i)));
  std::sort(r.begin(), r.end());
  return is_resolving_set(art.graph, r);
}

Table1Report check_table1(const SatGadgetArtifact& art) {
  const std::vector<Vertex> r1 = sat_r1(art);
  std::vector<std::vector<Dist>> from;
  for (Vertex s : r1) from.push_back(bfs_distances(art.graph, s));
  const int alpha = art.alpha;

  Table1Report report;
  auto check = [&](const std::string& row, const std::string& label, std::vector<Dist> expected) {
    const Vertex v = art.vertex(label);
    Table1Entry e{row, label, std::move(expected), {}, false};
    for (const auto& d : from) e.actual.push_back(d[v]);
    e.ok = e.actual == e.expected;
    if (!e.ok) ++report.mismatches;
    report.entries.push_back(std::move(e));
  };
  auto flat = [&](Dist first, Dist rest) {
    std::vector<Dist> out(alpha + 1, rest);
    out[0] = first;
    return out;
  };

  check("g2", "g2", flat(2, 3));
  check("g", "g", flat(1, 2));
  for (int i = 1; i <= art.n; ++i) {
    for (const char* role : {"t", "f"}) check("T", idx(role, i), flat(2, 3));
    for (const char* role : {"a1", "a2", "b1", "b2"}) check("I", idx(role, i), flat(3, 4));
  }
  for (int j = 1; j <= art.m; ++j) {
    std::vector<Dist> expected{3};
    for (int l = 1; l <= alpha; ++l) expected.push_back(3 - ((j >> (l - 1)) & 1));
    check("C", idx("c1", j), expected);
    check("C", idx("c2", j), expected);
  }
  for (int l = 1; l <= alpha; ++l) {
    auto ez = flat(2, 2);
    ez[l] = 1;
    check("z", idx("z", l), ez);
    auto ez2 = flat(3, 3);
    ez2[l] = 2;
    check("z2", idx("z2", l), ez2);
  }
  return report;
}

std::vector<Vertex> vc_witness(const SatGadgetArtifact& art) {
  std::vector<Vertex> out{art.vertex("g")};
  for (int i = 1; i <= art.n; ++i) {
    for (const char* role : {"t", "f", "a1", "a2"}) out.push_back(art.vertex(idx(role, i)));
  }
  for (int l = 1; l <= art.alpha; ++l) out.push_back(art.vertex(idx("z", l)));
  std::sort(out.begin(), out.end());
  std::vector<bool> in(art.graph.vertex_count(), false);
  for (Vertex v : out) in[v] = true;
  for (const auto& [u, v] : art.graph.edges()) {
    if (!in[u] && !in[v]) {
      throw std::logic_error("vertex cover witness misses edge " + art.graph.label(u) + " " +
                             art.graph.label(v));
    }
  }
  return out;
}

std::vector<Vertex> clique_modulator_witness(const SatGadgetArtifact& art) {
  if (art.variant != SatVariant::kClique) throw InputError("clique modulator needs the clique variant");
  std::vector<bool> in_k(art.graph.vertex_count(), false);
  std::vector<Vertex> k;
  for (int j = 1; j <= art.m; ++j) {
    for (const char* role : {"c1", "c2"}) {
      const Vertex v = art.vertex(idx(role, j));
      in_k[v] = true;
      k.push_back(v);
    }
  }
  if (!is_clique(art.graph, k)) throw std::logic_error("clause vertices do not form a clique");
  std::vector<Vertex> out;
  for (Vertex v = 0; v < art.graph.vertex_count(); ++v) {
    if (!in_k[v]) out.push_back(v);
  }
  return out;
}

std::optional<std::string> forced_structure_violation(const SatGadgetArtifact& art,
                                                      std::span<const Vertex> set) {
  auto meets = [&](std::initializer_list<std::string> labels) {
    return std::any_of(labels.begin(), labels.end(), [&](const std::string& l) {
      return std::find(set.begin(), set.end(), art.vertex(l)) != set.end();
    });
  };
  if (!meets({"g1", "g2"})) return "misses {g1, g2}";
  for (int l = 1; l <= art.alpha; ++l) {
    if (!meets({idx("z1", l), idx("z2", l)})) return "misses {z1, z2}[" + std::to_string(l) + "]";
  }
  for (int i = 1; i <= art.n; ++i) {
    if (!meets({idx("a1", i), idx("a2", i), idx("b1", i), idx("b2", i)})) {
      return "misses I_" + std::to_string(i);
    }
  }
  return std::nullopt;
}

}  // namespace mdkit
