#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdkit/io.hpp"
#include "mdkit/kernel.hpp"
#include "mdkit/nae.hpp"
#include "mdkit/sat.hpp"

namespace mdkit {

inline constexpr std::uint64_t kDefaultNodeCap = 100'000'000;

/// Node cap from MDKIT_NODE_CAP, else `fallback`. Throws InputError when the
/// variable is set but not a positive integer.
std::uint64_t node_cap_from_env(std::uint64_t fallback = kDefaultNodeCap);

struct SatCheck {
  bool satisfiable = false;
  bool md_within_k = false;
  bool forced_structure_ok = true;
  MdResult md;
  bool ok() const { return satisfiable == md_within_k && forced_structure_ok; }
};

/// Brute-force SAT against the exact solver at bound k on the gadget.
/// Throws ResourceLimit when the solver hits `node_cap`.
SatCheck check_sat_equivalence(const CnfFormula& f, SatVariant variant, std::uint64_t node_cap);

struct NaeCheck {
  // False when some variable occurs in no clause; the gadget is then
  // disconnected and the constructive and sweep checks are skipped.
  bool all_variables_used = true;
  bool satisfiable = false;
  bool constructive_ok = true;  // vacuous when unsatisfiable
  bool sweep_run = false;
  std::uint64_t sweep_choices = 0;
  std::size_t sweep_resolving = 0;
  bool sweep_ok = true;
  std::size_t claim_mismatches = 0;
  bool fvs_ok = true;
  bool ok() const { return constructive_ok && sweep_ok && claim_mismatches == 0 && fvs_ok; }
};

/// Constructive direction, reverse sweep when (2d)^vars <= sweep_cap, claim
/// suite and FVS witness on one instance.
NaeCheck check_nae_instance(const NaeInstance& inst, std::uint64_t sweep_cap = 10'000);

struct KernelCheck {
  int vertex_count = 0;
  int md = 0;
  std::vector<std::string> violations;  // empty when safe for every k
  int kernel_vertices = 0;              // at k = vertex_count
  std::size_t steps = 0;                // at k = vertex_count
  bool ok() const { return violations.empty(); }
};

/// For every k in [0, n]: MD(G) <= k iff kernelize(G, k) is not trivially no
/// and MD(kernel) <= k'. Also checks the size bound and trace replay.
KernelCheck check_kernel_safeness(const Graph& g, const Modulator& x, std::uint64_t node_cap);

/// One RR2 application checked for every k in [0, n]. nullopt when RR2 does
/// not apply.
std::optional<KernelCheck> check_rr2_safeness(const Graph& g, std::uint64_t node_cap);

struct XvalOutcome {
  Json samples = Json::array();  // sorted by sample index
  int passed = 0;
  int failed = 0;
  int indeterminate = 0;
  Json summary() const;
};

struct XvalSatOptions {
  int n = 2;
  int m_max = 3;
  int samples = 100;
  std::uint64_t seed = 0;
  SatVariant variant = SatVariant::kVc;
  std::uint64_t node_cap = kDefaultNodeCap;
  std::optional<std::string> failure_dir;
};
XvalOutcome xval_sat(const XvalSatOptions& opt);

struct XvalNaeOptions {
  int d = 2;
  int vars = 3;
  int clauses = 1;
  int samples = 50;
  std::uint64_t seed = 0;
  std::optional<std::string> failure_dir;
};
XvalOutcome xval_nae(const XvalNaeOptions& opt);

struct XvalKernelOptions {
  int planted_x = 1;
  int samples = 20;
  std::uint64_t seed = 0;
  ModulatorMode mode = ModulatorMode::kCluster;
  std::uint64_t node_cap = kDefaultNodeCap;
  std::optional<std::string> failure_dir;
};
XvalOutcome xval_kernel(const XvalKernelOptions& opt);

}  // namespace mdkit
