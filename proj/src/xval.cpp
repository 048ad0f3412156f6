#include "mdkit/xval.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>

#include "mdkit/error.hpp"
#include "mdkit/random.hpp"

namespace mdkit {

namespace {

void write_bundle(const std::optional<std::string>& dir, int index,
                  const std::vector<std::pair<std::string, std::string>>& files) {
  if (!dir) return;
  std::filesystem::create_directories(*dir);
  for (const auto& [suffix, data] : files) {
    write_file((std::filesystem::path(*dir) / ("sample-" + std::to_string(index) + suffix)).string(), data);
  }
}

void tally(XvalOutcome& out, Json record, bool ok, bool indeterminate) {
  record["verdict"] = indeterminate ? "INDETERMINATE" : ok ? "PASS" : "FAIL";
  if (indeterminate) {
    ++out.indeterminate;
  } else if (ok) {
    ++out.passed;
  } else {
    ++out.failed;
  }
  out.samples.push_back(std::move(record));
}

Json formula_json(const CnfFormula& f) {
  return Json{{"vars", f.var_count}, {"clauses", f.clauses}};
}

// Exact MD with memoisation on the canonical graph text.
class MdCache {
 public:
  explicit MdCache(std::uint64_t node_cap) : node_cap_(node_cap) {}
  int operator()(const Graph& g) {
    const std::string key = write_graph(g);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    MdOptions opt;
    opt.node_cap = node_cap_;
    const int value = *metric_dimension_exact(g, opt).value;
    memo_.emplace(key, value);
    return value;
  }

 private:
  std::uint64_t node_cap_;
  std::map<std::string, int> memo_;
};

}  // namespace

std::uint64_t node_cap_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("MDKIT_NODE_CAP");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0 || env[0] == '-') {
    throw InputError(std::string("MDKIT_NODE_CAP must be a positive integer, got '") + env + "'");
  }
  return v;
}

Json XvalOutcome::summary() const {
  return Json{{"samples", passed + failed + indeterminate},
              {"passed", passed},
              {"failed", failed},
              {"indeterminate", indeterminate}};
}

SatCheck check_sat_equivalence(const CnfFormula& f, SatVariant variant, std::uint64_t node_cap) {
  SatCheck check;
  check.satisfiable = sat_brute_force(f).has_value();
  const SatGadgetArtifact art = build_sat_gadget(f, variant);
  MdOptions opt;
  opt.bound = art.k;
  opt.node_cap = node_cap;
  check.md = metric_dimension_exact(art.graph, opt);
  check.md_within_k = check.md.status == MdStatus::kExact;
  if (check.md_within_k) {
    check.forced_structure_ok = check.md.certificate.verified &&
                                !forced_structure_violation(art, check.md.certificate.vertices);
  }
  return check;
}

NaeCheck check_nae_instance(const NaeInstance& inst, std::uint64_t sweep_cap) {
  NaeCheck check;
  const GadgetArtifact art = build_nae_gadget(inst);
  const auto assignment = nae_brute_force(inst);
  check.satisfiable = assignment.has_value();
  check.all_variables_used = all_variables_used(inst);
  if (assignment && check.all_variables_used) {
    const auto cert = resolving_set_from_assignment(art, inst, *assignment);
    check.constructive_ok = cert.verified && static_cast<int>(cert.vertices.size()) == art.k;
  }
  std::uint64_t choices = 1;
  bool small = true;
  for (int x = 0; x < inst.var_count && small; ++x) {
    choices *= static_cast<std::uint64_t>(2 * inst.d);
    small = choices <= sweep_cap;
  }
  if (small && check.all_variables_used) {
    const SweepReport sweep = reverse_candidate_sweep(art, inst, sweep_cap);
    check.sweep_run = true;
    check.sweep_choices = sweep.choices;
    check.sweep_resolving = sweep.resolving.size();
    for (const auto& choice : sweep.resolving) {
      if (!choice.satisfies) check.sweep_ok = false;
    }
    if (!check.satisfiable && !sweep.resolving.empty()) check.sweep_ok = false;
  }
  check.claim_mismatches = check_distance_claims(art, inst).mismatches;
  const auto fvs = fvs_witness(art, inst);
  check.fvs_ok = static_cast<int>(fvs.size()) == 2 * inst.var_count + 1 &&
                 is_acyclic(remove_vertices(art.graph, fvs).graph);
  return check;
}

KernelCheck check_kernel_safeness(const Graph& g, const Modulator& x, std::uint64_t node_cap) {
  MdCache md(node_cap);
  KernelCheck check;
  const int n = g.vertex_count();
  check.vertex_count = n;
  check.md = md(g);
  KernelOptions options;
  options.modulator = x;
  for (int k = 0; k <= n; ++k) {
    const KernelResult r = kernelize(g, k, x.mode, options);
    const std::string at = "k=" + std::to_string(k) + ": ";
    const bool original = check.md <= k;
    const bool reduced = r.outcome == KernelOutcome::kReduced && md(r.kernel) <= r.k;
    if (original != reduced) {
      check.violations.push_back(at + "MD(G) <= k is " + (original ? "true" : "false") +
                                 " but the kernel answers " + (reduced ? "yes" : "no"));
    }
    if (r.outcome == KernelOutcome::kReduced) {
      // The bound is stated for the modulator that survives in the kernel.
      int x_left = 0;
      for (Vertex v : r.original_id) {
        x_left += std::binary_search(x.vertices.begin(), x.vertices.end(), v) ? 1 : 0;
      }
      if (static_cast<std::uint64_t>(r.kernel.vertex_count()) > kernel_size_bound(x_left)) {
        check.violations.push_back(at + "kernel exceeds the size bound");
      }
    }
    const InducedSubgraph replayed = replay_trace(g, r.trace);
    if (!(replayed.graph == r.kernel) || replayed.original_id != r.original_id) {
      check.violations.push_back(at + "trace replay does not reproduce the kernel");
    }
    if (k == n) {
      check.kernel_vertices = r.kernel.vertex_count();
      check.steps = r.trace.steps.size();
    }
  }
  return check;
}

std::optional<KernelCheck> check_rr2_safeness(const Graph& g, std::uint64_t node_cap) {
  const int n = g.vertex_count();
  auto app = apply_rr2(g, n);
  if (!app) return std::nullopt;
  MdCache md(node_cap);
  KernelCheck check;
  check.vertex_count = n;
  check.md = md(g);
  const int reduced_md = md(app->reduced.graph);
  check.kernel_vertices = app->reduced.graph.vertex_count();
  check.steps = 1;
  for (int k = 0; k <= n; ++k) {
    const bool original = check.md <= k;
    const bool reduced = reduced_md <= k - app->step.decrement;
    if (original != reduced) {
      check.violations.push_back("k=" + std::to_string(k) + ": RR2 changes the answer");
    }
  }
  return check;
}

XvalOutcome xval_sat(const XvalSatOptions& opt) {
  Rng rng(opt.seed);
  XvalOutcome out;
  for (int i = 0; i < opt.samples; ++i) {
    const CnfFormula f = random_cnf(rng, opt.n, opt.m_max);
    Json record{{"index", i}, {"formula", formula_json(f)}, {"variant", to_string(opt.variant)}};
    bool ok = false;
    bool indeterminate = false;
    try {
      const SatCheck c = check_sat_equivalence(f, opt.variant, opt.node_cap);
      record["satisfiable"] = c.satisfiable;
      record["md_within_k"] = c.md_within_k;
      record["md"] = to_json(c.md);
      record["forced_structure_ok"] = c.forced_structure_ok;
      ok = c.ok();
    } catch (const ResourceLimit& e) {
      record["error"] = e.what();
      indeterminate = true;
    }
    if (!ok) {
      const SatGadgetArtifact art = build_sat_gadget(f, opt.variant);
      write_bundle(opt.failure_dir, i,
                   {{".cnf", write_dimacs_cnf(f)},
                    {".graph", write_graph(art.graph)},
                    {".labels.json", write_labels(art.graph)},
                    {".record.json", canonical(record)}});
    }
    tally(out, std::move(record), ok, indeterminate);
  }
  return out;
}

XvalOutcome xval_nae(const XvalNaeOptions& opt) {
  Rng rng(opt.seed);
  XvalOutcome out;
  for (int i = 0; i < opt.samples; ++i) {
    const NaeInstance inst = random_nae(rng, opt.d, opt.vars, opt.clauses);
    Json record{{"index", i}, {"instance", parse_json(write_nae(inst), "NAE instance")}};
    bool ok = false;
    bool indeterminate = false;
    try {
      const NaeCheck c = check_nae_instance(inst);
      record["satisfiable"] = c.satisfiable;
      record["all_variables_used"] = c.all_variables_used;
      record["constructive_ok"] = c.constructive_ok;
      record["sweep"] = c.sweep_run ? Json{{"choices", c.sweep_choices},
                                           {"resolving", c.sweep_resolving},
                                           {"ok", c.sweep_ok}}
                                    : Json(nullptr);
      record["claim_mismatches"] = c.claim_mismatches;
      record["fvs_ok"] = c.fvs_ok;
      ok = c.ok();
    } catch (const ResourceLimit& e) {
      record["error"] = e.what();
      indeterminate = true;
    }
    if (!ok) {
      write_bundle(opt.failure_dir, i, {{".nae.json", write_nae(inst)}, {".record.json", canonical(record)}});
    }
    tally(out, std::move(record), ok, indeterminate);
  }
  return out;
}

XvalOutcome xval_kernel(const XvalKernelOptions& opt) {
  Rng rng(opt.seed);
  XvalOutcome out;
  for (int i = 0; i < opt.samples; ++i) {
    const PlantedKernelInstance planted = planted_kernel_instance(rng, opt.planted_x, opt.mode);
    Json record{{"index", i},
                {"vertices", planted.graph.vertex_count()},
                {"modulator", ids_to_json(planted.modulator.vertices)},
                {"mode", to_string(opt.mode)},
                {"planted_parts", planted.planted_parts}};
    bool ok = false;
    bool indeterminate = false;
    try {
      const KernelCheck c = check_kernel_safeness(planted.graph, planted.modulator, opt.node_cap);
      record["md"] = c.md;
      record["kernel_vertices"] = c.kernel_vertices;
      record["steps"] = c.steps;
      record["violations"] = c.violations;
      ok = c.ok();
    } catch (const ResourceLimit& e) {
      record["error"] = e.what();
      indeterminate = true;
    }
    if (!ok) {
      write_bundle(opt.failure_dir, i,
                   {{".graph", write_graph(planted.graph)}, {".record.json", canonical(record)}});
    }
    tally(out, std::move(record), ok, indeterminate);
  }
  return out;
}

}  // namespace mdkit
