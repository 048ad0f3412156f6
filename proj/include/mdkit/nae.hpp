#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mdkit/graph.hpp"
#include "mdkit/resolve.hpp"

namespace mdkit {

/// One inequality `x_var <= bound` of an NAE-Integer-3-SAT clause.
struct NaeLiteral {
  int var = 0;
  int bound = 1;
  friend bool operator==(const NaeLiteral&, const NaeLiteral&) = default;
};

using NaeClause = std::array<NaeLiteral, 3>;

/// Variables take values in 1..d. A clause is satisfied when its three
/// inequalities are neither all true nor all false.
struct NaeInstance {
  int d = 1;
  int var_count = 0;
  std::vector<NaeClause> clauses;
  friend bool operator==(const NaeInstance&, const NaeInstance&) = default;
};

/// Throws InputError unless d >= 1, every bound is in 1..d, every variable
/// index is in range and each clause uses three distinct variables.
void validate(const NaeInstance& inst);

/// True when every variable occurs in some clause. Otherwise the gadget has
/// a variable cycle as a separate component.
bool all_variables_used(const NaeInstance& inst);

/// assignment[x] in 1..d.
bool satisfies(const NaeInstance& inst, const std::vector<int>& assignment);

/// Lexicographically smallest satisfying assignment, or nullopt when the
/// instance is unsatisfiable. Throws ResourceLimit if d^vars exceeds `cap`.
std::optional<std::vector<int>> nae_brute_force(const NaeInstance& inst,
                                                std::uint64_t cap = 1'000'000);

/// The generated graph plus target size. Every vertex carries a role label;
/// see README for the label grammar.
struct GadgetArtifact {
  Graph graph;
  int k = 0;

  Vertex vertex(const std::string& label) const;  // throws InputError if absent
  bool has(const std::string& label) const { return index_.contains(label); }
  void reindex();

 private:
  std::unordered_map<std::string, Vertex> index_;
};

/// k = |X| + 10|C| + 1.
GadgetArtifact build_nae_gadget(const NaeInstance& inst);

/// Vertex count of the gadget, summed piece by piece:
/// |X|(2d+2) + |C|(54d+15) + 3.
std::int64_t nae_gadget_vertex_count(const NaeInstance& inst);

/// {p} together with both anchors of every variable cycle, sorted.
std::vector<Vertex> fvs_witness(const GadgetArtifact& art, const NaeInstance& inst);

/// The resolving set built from a satisfying assignment: t1, v[x][phi(x)],
/// per clause side p1 and t1, and per (member variable, side) the claw leaf
/// t1. Throws InputError when `assignment` does not satisfy `inst`.
ResolvingCertificate resolving_set_from_assignment(const GadgetArtifact& art,
                                                   const NaeInstance& inst,
                                                   const std::vector<int>& assignment);

struct SweepChoice {
  std::vector<Vertex> picks;    // one cycle vertex per variable
  std::vector<int> assignment;  // index of each pick on its cycle side
  bool satisfies = false;
};

struct SweepReport {
  std::uint64_t choices = 0;
  std::vector<SweepChoice> resolving;
};

/// Tries every way of completing the forced part of a size-k solution (the
/// index-1 twin of every forced pair) with one of v[x][i], w[x][i] per
/// variable, recording which completions resolve G. Throws ResourceLimit when
/// (2d)^vars exceeds `cap`.
SweepReport reverse_candidate_sweep(const GadgetArtifact& art, const NaeInstance& inst,
                                    std::uint64_t cap = 100'000);

struct ClaimEntry {
  std::string claim;    // e.g. "2(iii)"
  std::string subject;  // e.g. "x1 c0 i=3"
  std::string relation; // "=" or ">="
  Dist expected = 0;
  Dist actual = 0;
  bool ok = false;
};

struct ClaimReport {
  std::vector<ClaimEntry> entries;
  std::size_t mismatches = 0;
};

/// BFS check of the distance formulas of the three gadget claims: gadget
/// separation (core-to-core 4d, variable-to-variable >= 6d, member >= 3d,
/// non-member >= 8d through p) and the piecewise distances from every v_i
/// (i = 0..d+1) of a member variable to c, v^c, t1^{t,c} and their cbar
/// counterparts.
ClaimReport check_distance_claims(const GadgetArtifact& art, const NaeInstance& inst);

}  // namespace mdkit
