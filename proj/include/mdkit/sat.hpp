#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdkit/graph.hpp"
#include "mdkit/nae.hpp"
#include "mdkit/resolve.hpp"

namespace mdkit {

/// Literals are signed 1-based variable indices. Clauses are stored with their
/// literals sorted by variable and deduplicated; duplicate clauses are dropped
/// keeping the first occurrence.
struct CnfFormula {
  int var_count = 0;
  std::vector<std::vector<int>> clauses;
  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// Throws InputError on an empty or tautological clause, a literal out of
/// range or a duplicate clause.
void validate(const CnfFormula& f);

/// Sorts literals, drops repeated literals and repeated clauses, then validates.
CnfFormula normalize(CnfFormula f);

/// DIMACS CNF: `c` comment lines, one `p cnf n m` header, 0-terminated
/// clauses that may span lines. Errors carry the line number.
CnfFormula parse_dimacs_cnf(std::string_view text);
std::string write_dimacs_cnf(const CnfFormula& f);

/// assignment[i] is the value of x_{i+1}.
bool satisfies(const CnfFormula& f, const std::vector<bool>& assignment);

/// Lexicographically smallest satisfying assignment (False < True, x1 most
/// significant), or nullopt. Throws ResourceLimit when 2^n exceeds `cap`.
std::optional<std::vector<bool>> sat_brute_force(const CnfFormula& f,
                                                 std::uint64_t cap = std::uint64_t{1} << 20);

/// Smallest a with 2^a >= 3^n, i.e. ceil(n log2 3) in exact arithmetic.
int sat_alpha(int n);

enum class SatVariant { kVc, kClique };
std::string to_string(SatVariant v);  // "vc" / "clique"
SatVariant parse_sat_variant(const std::string& text);

struct SatGadgetArtifact : GadgetArtifact {
  SatVariant variant = SatVariant::kVc;
  int n = 0;
  int m = 0;
  int alpha = 0;
};

/// k = n + alpha + 1. Labels (1-based): t[i] a1[i] b1[i] f[i] b2[i] a2[i],
/// g1 g g2, c1[j] c2[j], z1[l] z[l] z2[l], in that id order.
SatGadgetArtifact build_vc_gadget(const CnfFormula& f);
/// build_vc_gadget plus every edge among the clause vertices.
SatGadgetArtifact build_clique_gadget(const CnfFormula& f);
SatGadgetArtifact build_sat_gadget(const CnfFormula& f, SatVariant variant);

/// R1 = (g1, z1[1..alpha]) in that order.
std::vector<Vertex> sat_r1(const SatGadgetArtifact& art);

/// R1 plus a1[i] for true variables and b1[i] for false ones, sorted.
/// Throws InputError when `assignment` does not satisfy `f`.
ResolvingCertificate resolving_set_from_sat_assignment(const SatGadgetArtifact& art,
                                                       const CnfFormula& f,
                                                       const std::vector<bool>& assignment);

struct Table1Entry {
  std::string row;     // "g2", "g", "T", "I", "C", "z", "z2"
  std::string vertex;  // label
  std::vector<Dist> expected;
  std::vector<Dist> actual;
  bool ok = false;
};

struct Table1Report {
  std::vector<Table1Entry> entries;
  std::size_t mismatches = 0;
};

/// BFS distance vectors of R1 against every vertex of every Table 1 row.
Table1Report check_table1(const SatGadgetArtifact& art);

/// {g} + T + {a1[i], a2[i]} + {z[l]}, sorted; size 4n + alpha + 1. Throws
/// std::logic_error if it misses an edge.
std::vector<Vertex> vc_witness(const SatGadgetArtifact& art);

/// Every non-clause vertex, sorted; size 6n + 3alpha + 3. CLIQUE variant only;
/// throws std::logic_error if the clause vertices are not a clique.
std::vector<Vertex> clique_modulator_witness(const SatGadgetArtifact& art);

/// Description of the first forced-structure violation of a resolving set:
/// it must meet {g1, g2}, every {z1[l], z2[l]} and every I_i.
std::optional<std::string> forced_structure_violation(const SatGadgetArtifact& art,
                                                      std::span<const Vertex> set);

}  // namespace mdkit
