// Command-line front end. stdout carries exactly one JSON run record;
// diagnostics go to stderr.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mdkit/error.hpp"
#include "mdkit/io.hpp"
#include "mdkit/kernel.hpp"
#include "mdkit/nae.hpp"
#include "mdkit/resolve.hpp"
#include "mdkit/sat.hpp"
#include "mdkit/xval.hpp"

namespace {

using namespace mdkit;

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kIndeterminate = 3 };

struct Run {
  std::string command;
  Json input_hashes = Json::object();
  std::optional<std::uint64_t> seed;
  Json outcome = Json::object();
  int exit_code = kOk;

  // Reads a file and records its hash under `name`.
  std::string input(const std::string& name, const std::string& path) {
    std::string data = read_file(path);
    input_hashes[name] = sha256_hex(data);
    return data;
  }
};

Graph load_graph(Run& run, const std::string& path) {
  ParsedGraph parsed = read_graph(run.input("graph", path));
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << path << ": " << w << "\n";
  return std::move(parsed.graph);
}

std::filesystem::path prepare_dir(const std::string& dir) {
  std::filesystem::create_directories(dir);
  return dir;
}

void emit_files(Run& run, const std::filesystem::path& dir,
                const std::vector<std::pair<std::string, std::string>>& files) {
  Json written = Json::array();
  for (const auto& [name, data] : files) {
    write_file((dir / name).string(), data);
    written.push_back((dir / name).string());
  }
  run.outcome["files"] = written;
}

void gen_nae(Run& run, const std::string& in, const std::string& out_dir) {
  const std::string text = run.input("instance", in);
  const NaeInstance inst = read_nae(text);
  const GadgetArtifact art = build_nae_gadget(inst);
  const auto fvs = fvs_witness(art, inst);
  Json meta{{"k", art.k},
            {"fvs_witness", ids_to_json(fvs)},
            {"generator_version", kGeneratorVersion},
            {"input_sha256", sha256_hex(text)},
            {"reduction", "nae"}};
  run.outcome = {{"k", art.k}, {"vertices", art.graph.vertex_count()}, {"edges", art.graph.edge_count()}};
  emit_files(run, prepare_dir(out_dir),
             {{"graph.txt", write_graph(art.graph)},
              {"labels.json", write_labels(art.graph)},
              {"metadata.json", canonical(meta)}});
}

void gen_sat(Run& run, const std::string& cnf, const std::string& out_dir, SatVariant variant) {
  const std::string text = run.input("cnf", cnf);
  const CnfFormula f = parse_dimacs_cnf(text);
  const SatGadgetArtifact art = build_sat_gadget(f, variant);
  Json meta{{"k", art.k},
            {"alpha", art.alpha},
            {"variant", to_string(variant)},
            {"generator_version", kGeneratorVersion},
            {"input_sha256", sha256_hex(text)},
            {"reduction", "sat"}};
  if (variant == SatVariant::kVc) {
    meta["vc_witness"] = ids_to_json(vc_witness(art));
  } else {
    meta["clique_modulator"] = ids_to_json(clique_modulator_witness(art));
  }
  run.outcome = {{"k", art.k}, {"alpha", art.alpha}, {"vertices", art.graph.vertex_count()},
                 {"edges", art.graph.edge_count()}};
  emit_files(run, prepare_dir(out_dir),
             {{"graph.txt", write_graph(art.graph)},
              {"labels.json", write_labels(art.graph)},
              {"metadata.json", canonical(meta)}});
}

void md(Run& run, const std::string& graph, std::optional<int> k, std::optional<std::uint64_t> cap) {
  const Graph g = load_graph(run, graph);
  MdOptions opt;
  opt.bound = k;
  opt.node_cap = cap ? *cap : node_cap_from_env();
  run.outcome = to_json(metric_dimension_exact(g, opt));
}

void verify(Run& run, const std::string& graph, const std::string& set) {
  const Graph g = load_graph(run, graph);
  const auto ids = parse_id_list(set, g.vertex_count());
  const ResolvingCertificate cert = is_resolving_set(g, ids);
  run.outcome = to_json(cert);
  if (!cert.verified) run.exit_code = kCheckFailed;
}

void kernelize_cmd(Run& run, const std::string& graph, int k, const std::optional<std::string>& mod,
                   int budget, const std::string& mode_text, const std::string& out_dir) {
  const Graph g = load_graph(run, graph);
  const ModulatorMode mode = parse_modulator_mode(mode_text);
  KernelOptions opt;
  opt.modulator_budget = budget;
  if (mod) opt.modulator = Modulator{parse_id_list(*mod, g.vertex_count()), mode};
  const KernelResult r = kernelize(g, k, mode, opt);
  const bool trivial = r.outcome == KernelOutcome::kTrivialNo;
  run.outcome = {{"outcome", trivial ? "TRIVIAL_NO" : "REDUCED"},
                 {"k", r.k},
                 {"vertices", r.kernel.vertex_count()},
                 {"modulator", ids_to_json(r.modulator.vertices)},
                 {"steps", r.trace.steps.size()}};
  Json meta{{"k", r.k},
            {"mode", to_string(mode)},
            {"modulator", ids_to_json(r.modulator.vertices)},
            {"original_ids", ids_to_json(r.original_id)},
            {"outcome", trivial ? "TRIVIAL_NO" : "REDUCED"},
            {"generator_version", kGeneratorVersion},
            {"input_sha256", run.input_hashes["graph"]}};
  emit_files(run, prepare_dir(out_dir),
             {{"kernel.txt", write_graph(r.kernel)},
              {"trace.json", write_trace(r.trace)},
              {"metadata.json", canonical(meta)}});
}

void modulator_cmd(Run& run, const std::string& graph, int budget, const std::string& mode_text) {
  const Graph g = load_graph(run, graph);
  const auto found = find_modulator(g, budget, parse_modulator_mode(mode_text));
  run.outcome = {{"found", found.has_value()}, {"budget", budget}, {"mode", mode_text}};
  run.outcome["modulator"] = found ? ids_to_json(found->vertices) : Json(nullptr);
}

void claims_nae(Run& run, const std::string& in) {
  const NaeInstance inst = read_nae(run.input("instance", in));
  const ClaimReport report = check_distance_claims(build_nae_gadget(inst), inst);
  Json failing = Json::array();
  for (const auto& e : report.entries) {
    if (!e.ok) {
      failing.push_back({{"claim", e.claim}, {"subject", e.subject}, {"relation", e.relation},
                         {"expected", e.expected}, {"actual", e.actual}});
    }
  }
  run.outcome = {{"checked", report.entries.size()}, {"mismatches", report.mismatches}, {"failing", failing}};
  if (report.mismatches) run.exit_code = kCheckFailed;
}

void table1(Run& run, const std::string& cnf, const std::string& variant) {
  const CnfFormula f = parse_dimacs_cnf(run.input("cnf", cnf));
  const Table1Report report = check_table1(build_sat_gadget(f, parse_sat_variant(variant)));
  Json failing = Json::array();
  for (const auto& e : report.entries) {
    if (!e.ok) {
      failing.push_back({{"row", e.row}, {"vertex", e.vertex}, {"expected", e.expected}, {"actual", e.actual}});
    }
  }
  run.outcome = {{"checked", report.entries.size()}, {"mismatches", report.mismatches}, {"failing", failing}};
  if (report.mismatches) run.exit_code = kCheckFailed;
}

void finish_xval(Run& run, const XvalOutcome& out) {
  run.outcome = {{"samples", out.samples}, {"summary", out.summary()}};
  if (out.failed) {
    run.exit_code = kCheckFailed;
  } else if (out.indeterminate) {
    run.exit_code = kIndeterminate;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace mdkit;
  const auto start = std::chrono::steady_clock::now();
  Run run;
  std::optional<std::string> out_path;

  CLI::App app{"mdkit: metric dimension toolkit"};
  app.require_subcommand(1);
  app.add_option("--out", out_path, "Write the run record here instead of stdout");

  // Shared option storage; each subcommand binds what it needs.
  std::string in, cnf, graph, out_dir, set, mode = "cluster", variant = "vc";
  std::string failure_dir = "xval-failures";
  std::optional<int> k_opt;
  std::optional<std::uint64_t> node_cap;
  std::optional<std::string> modulator;
  int k = 0, budget = 10, n = 2, m_max = 3, samples = 0, d = 2, vars = 3, clauses = 1, planted_x = 1;
  std::uint64_t seed = 0;

  auto* gen = app.add_subcommand("gen", "Generate a reduction gadget");
  gen->require_subcommand(1);
  auto* gen_nae_cmd = gen->add_subcommand("nae", "NAE-Integer-3-SAT gadget");
  gen_nae_cmd->add_option("--in", in, "NAE instance JSON")->required();
  gen_nae_cmd->add_option("--out-dir", out_dir)->required();
  auto* gen_vc = gen->add_subcommand("sat-vc", "SAT gadget, vertex cover variant");
  auto* gen_clique = gen->add_subcommand("sat-clique", "SAT gadget, distance-to-clique variant");
  for (auto* c : {gen_vc, gen_clique}) {
    c->add_option("--cnf", cnf, "DIMACS CNF")->required();
    c->add_option("--out-dir", out_dir)->required();
  }

  auto* md_cmd = app.add_subcommand("md", "Exact metric dimension");
  md_cmd->add_option("--graph", graph)->required();
  md_cmd->add_option("--k", k_opt, "Decide MD <= K only");
  md_cmd->add_option("--node-cap", node_cap);

  auto* verify_cmd = app.add_subcommand("verify", "Check a resolving set");
  verify_cmd->add_option("--graph", graph)->required();
  verify_cmd->add_option("--set", set, "Comma-separated 1-based ids")->required();

  auto* kern_cmd = app.add_subcommand("kernelize", "Apply the reduction rules");
  kern_cmd->add_option("--graph", graph)->required();
  kern_cmd->add_option("--k", k)->required();
  auto* mod_opt = kern_cmd->add_option("--modulator", modulator, "Comma-separated 1-based ids");
  kern_cmd->add_option("--modulator-budget", budget)->excludes(mod_opt);
  kern_cmd->add_option("--mode", mode)->required()->check(CLI::IsMember({"cluster", "co-cluster"}));
  kern_cmd->add_option("--out-dir", out_dir)->required();

  auto* modl_cmd = app.add_subcommand("modulator", "Find a small modulator");
  modl_cmd->add_option("--graph", graph)->required();
  modl_cmd->add_option("--budget", budget)->required();
  modl_cmd->add_option("--mode", mode)->required()->check(CLI::IsMember({"cluster", "co-cluster"}));

  auto* check = app.add_subcommand("check", "Distance claim checks");
  check->require_subcommand(1);
  auto* claims_cmd = check->add_subcommand("claims-nae", "Gadget distance claims");
  claims_cmd->add_option("--in", in)->required();
  auto* table_cmd = check->add_subcommand("table1", "R1 distance vectors");
  table_cmd->add_option("--cnf", cnf)->required();
  table_cmd->add_option("--variant", variant)->check(CLI::IsMember({"vc", "clique"}));

  auto* xval = app.add_subcommand("xval", "Randomised cross-validation");
  xval->require_subcommand(1);
  auto* xsat = xval->add_subcommand("sat", "SAT reduction equivalence");
  xsat->add_option("--n", n)->required();
  xsat->add_option("--m-max", m_max)->required();
  xsat->add_option("--variant", variant)->check(CLI::IsMember({"vc", "clique"}));
  auto* xnae = xval->add_subcommand("nae", "NAE constructive and reverse checks");
  xnae->add_option("--d", d)->required();
  xnae->add_option("--vars", vars)->required();
  xnae->add_option("--clauses", clauses)->required();
  auto* xkern = xval->add_subcommand("kernel", "Kernel safeness on planted instances");
  xkern->add_option("--planted-x", planted_x)->required()->check(CLI::Range(0, 1));
  xkern->add_option("--mode", mode)->required()->check(CLI::IsMember({"cluster", "co-cluster"}));
  for (auto* c : {xsat, xnae, xkern}) {
    c->add_option("--samples", samples)->required()->check(CLI::NonNegativeNumber);
    c->add_option("--seed", seed)->required();
    c->add_option("--failure-dir", failure_dir, "Where failing samples are written");
  }

  auto emit = [&]() -> int {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start).count();
    Json record{{"command", run.command},
                {"input_hashes", run.input_hashes},
                {"outcome", run.outcome},
                {"wall_time_ms", ms}};
    record["seed"] = run.seed ? Json(*run.seed) : Json(nullptr);
    const std::string text = canonical(record);
    if (out_path) {
      try {
        write_file(*out_path, text);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << text;
        return kUsage;
      }
    } else {
      std::cout << text;
    }
    return run.exit_code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cerr << app.help();
    run.command = "help";
    return emit();
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    run.command = "usage";
    run.outcome = {{"error", e.what()}};
    run.exit_code = kUsage;
    return emit();
  }

  try {
    if (gen_nae_cmd->parsed()) {
      run.command = "gen nae";
      gen_nae(run, in, out_dir);
    } else if (gen_vc->parsed() || gen_clique->parsed()) {
      run.command = gen_vc->parsed() ? "gen sat-vc" : "gen sat-clique";
      gen_sat(run, cnf, out_dir, gen_vc->parsed() ? SatVariant::kVc : SatVariant::kClique);
    } else if (md_cmd->parsed()) {
      run.command = "md";
      md(run, graph, k_opt, node_cap);
    } else if (verify_cmd->parsed()) {
      run.command = "verify";
      verify(run, graph, set);
    } else if (kern_cmd->parsed()) {
      run.command = "kernelize";
      kernelize_cmd(run, graph, k, modulator, budget, mode, out_dir);
    } else if (modl_cmd->parsed()) {
      run.command = "modulator";
      modulator_cmd(run, graph, budget, mode);
    } else if (claims_cmd->parsed()) {
      run.command = "check claims-nae";
      claims_nae(run, in);
    } else if (table_cmd->parsed()) {
      run.command = "check table1";
      table1(run, cnf, variant);
    } else if (xsat->parsed()) {
      run.command = "xval sat";
      run.seed = seed;
      XvalSatOptions opt;
      opt.n = n;
      opt.m_max = m_max;
      opt.samples = samples;
      opt.seed = seed;
      opt.variant = parse_sat_variant(variant);
      opt.node_cap = node_cap_from_env();
      opt.failure_dir = failure_dir;
      finish_xval(run, xval_sat(opt));
    } else if (xnae->parsed()) {
      run.command = "xval nae";
      run.seed = seed;
      XvalNaeOptions opt;
      opt.d = d;
      opt.vars = vars;
      opt.clauses = clauses;
      opt.samples = samples;
      opt.seed = seed;
      opt.failure_dir = failure_dir;
      finish_xval(run, xval_nae(opt));
    } else if (xkern->parsed()) {
      run.command = "xval kernel";
      run.seed = seed;
      XvalKernelOptions opt;
      opt.planted_x = planted_x;
      opt.samples = samples;
      opt.seed = seed;
      opt.mode = parse_modulator_mode(mode);
      opt.node_cap = node_cap_from_env();
      opt.failure_dir = failure_dir;
      finish_xval(run, xval_kernel(opt));
    }
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    run.outcome = {{"status", "INDETERMINATE"}, {"error", e.what()}};
    run.exit_code = kIndeterminate;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    run.outcome = {{"error", e.what()}};
    run.exit_code = kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    run.outcome = {{"error", e.what()}};
    run.exit_code = kCheckFailed;
  }
  return emit();
}
