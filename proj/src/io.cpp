#include "mdkit/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <openssl/sha.h>

#include "mdkit/error.hpp"

namespace mdkit {

namespace {

[[noreturn]] void schema_error(const Json::json_pointer& at, const std::string& msg) {
  const std::string where = at.to_string().empty() ? "/" : at.to_string();
  throw InputError("schema error at " + where + ": " + msg);
}

void expect_object(const Json& j, const Json::json_pointer& at,
                   std::initializer_list<const char*> keys) {
  if (!j.is_object()) schema_error(at, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
      schema_error(at / key, "unknown field");
    }
  }
  for (const char* k : keys) {
    if (!j.contains(k)) schema_error(at / k, "missing field");
  }
}

const Json& expect_array(const Json& j, const Json::json_pointer& at) {
  if (!j.is_array()) schema_error(at, "expected an array");
  return j;
}

long long expect_int(const Json& j, const Json::json_pointer& at) {
  if (!j.is_number_integer()) schema_error(at, "expected an integer");
  return j.get<long long>();
}

int expect_int_in(const Json& j, const Json::json_pointer& at, long long lo, long long hi) {
  const long long v = expect_int(j, at);
  if (v < lo || v > hi) {
    schema_error(at, std::to_string(v) + " outside " + std::to_string(lo) + ".." + std::to_string(hi));
  }
  return static_cast<int>(v);
}

const std::string& expect_string(const Json& j, const Json::json_pointer& at) {
  if (!j.is_string()) schema_error(at, "expected a string");
  return j.get_ref<const std::string&>();
}

int parse_positive(const std::string& tok, int line_no, const char* what) {
  std::size_t used = 0;
  long long v = -1;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || v < 0 || v > 100'000'000) {
    throw InputError("line " + std::to_string(line_no) + ": invalid " + what + " '" + tok + "'");
  }
  return static_cast<int>(v);
}

}  // namespace

ParsedGraph read_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_header = false;
  int n = 0;
  int m = 0;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  ParsedGraph out;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "c") continue;
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (kind == "p") {
      if (have_header) throw InputError(where + "second header");
      if (toks.size() != 3 || toks[0] != "graph") throw InputError(where + "malformed header");
      n = parse_positive(toks[1], line_no, "vertex count");
      m = parse_positive(toks[2], line_no, "edge count");
      have_header = true;
    } else if (kind == "e") {
      if (!have_header) throw InputError(where + "edge before header");
      if (toks.size() != 2) throw InputError(where + "malformed edge");
      int u = parse_positive(toks[0], line_no, "vertex id");
      int v = parse_positive(toks[1], line_no, "vertex id");
      if (u < 1 || u > n || v < 1 || v > n) {
        throw InputError(where + "vertex id out of range 1.." + std::to_string(n));
      }
      if (u == v) throw InputError(where + "self-loop at " + std::to_string(u));
      Edge e = std::minmax(u - 1, v - 1);
      edges.push_back(e);
      if (!seen.insert(e).second) {
        out.warnings.push_back(where + "duplicate edge " + std::to_string(u) + " " +
                               std::to_string(v) + " merged");
      }
    } else {
      throw InputError(where + "unknown line type '" + kind + "'");
    }
  }
  if (!have_header) throw InputError("missing 'p graph' header");
  if (static_cast<int>(edges.size()) != m) {
    throw InputError("edge count mismatch: header declares " + std::to_string(m) + ", found " +
                     std::to_string(edges.size()));
  }
  out.graph = Graph::from_edges(n, edges);
  return out;
}

std::string write_graph(const Graph& g) {
  std::string out = "p graph " + std::to_string(g.vertex_count()) + " " +
                    std::to_string(g.edge_count()) + "\n";
  for (const auto& [u, v] : g.edges()) {
    out += "e " + std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
  }
  return out;
}

std::vector<std::string> read_labels(std::string_view text, int vertex_count) {
  const Json j = parse_json(text, "label map");
  const Json::json_pointer root;
  expect_object(j, root, {"labels"});
  const Json& map = j["labels"];
  const auto at = root / "labels";
  if (!map.is_object()) schema_error(at, "expected an object");
  std::vector<std::string> labels(vertex_count);
  std::vector<bool> have(vertex_count, false);
  std::map<std::string, std::string> owner;
  for (const auto& [key, value] : map.items()) {
    std::size_t used = 0;
    long long id = 0;
    try {
      id = std::stoll(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || key.empty() || key[0] == '0' || id < 1 || id > vertex_count) {
      schema_error(at / key, "key must be a vertex id in 1.." + std::to_string(vertex_count));
    }
    const std::string& role = expect_string(value, at / key);
    if (role.empty()) schema_error(at / key, "empty role");
    auto [it, fresh] = owner.emplace(role, key);
    if (!fresh) schema_error(at / key, "duplicate role '" + role + "' (also vertex " + it->second + ")");
    labels[id - 1] = role;
    have[id - 1] = true;
  }
  for (int v = 0; v < vertex_count; ++v) {
    if (!have[v]) schema_error(at / std::to_string(v + 1), "vertex has no label");
  }
  return labels;
}

std::string write_labels(const Graph& g) {
  Json map = Json::object();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    map[std::to_string(v + 1)] = g.has_labels() ? g.label(v) : std::string();
  }
  return canonical(Json{{"labels", map}});
}

Graph with_labels(const Graph& g, std::vector<std::string> labels) {
  const auto edges = g.edges();
  return Graph::from_edges(g.vertex_count(), edges, std::move(labels));
}

std::string canonical(const Json& j) { return j.dump() + "\n"; }

Json parse_json(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed " + what + " JSON: " + e.what());
  }
}

NaeInstance read_nae(std::string_view text) {
  const Json j = parse_json(text, "NAE instance");
  const Json::json_pointer root;
  expect_object(j, root, {"clauses", "d", "vars"});
  NaeInstance inst;
  inst.d = expect_int_in(j["d"], root / "d", 1, 1'000'000);
  inst.var_count = expect_int_in(j["vars"], root / "vars", 0, 1'000'000);
  const auto cl_at = root / "clauses";
  const Json& clauses = expect_array(j["clauses"], cl_at);
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const auto c_at = cl_at / c;
    const Json& lits = expect_array(clauses[c], c_at);
    if (lits.size() != 3) schema_error(c_at, "a clause needs exactly 3 literals, got " + std::to_string(lits.size()));
    NaeClause clause;
    std::set<int> vars;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto l_at = c_at / i;
      const Json& lit = expect_array(lits[i], l_at);
      if (lit.size() != 2) schema_error(l_at, "a literal is [variable, bound]");
      clause[i].var = expect_int_in(lit[0], l_at / 0, 0, inst.var_count - 1);
      clause[i].bound = expect_int_in(lit[1], l_at / 1, 1, inst.d);
      if (!vars.insert(clause[i].var).second) schema_error(l_at / 0, "repeated variable in clause");
    }
    inst.clauses.push_back(clause);
  }
  return inst;
}

std::string write_nae(const NaeInstance& inst) {
  Json clauses = Json::array();
  for (const auto& cl : inst.clauses) {
    Json c = Json::array();
    for (const auto& lit : cl) c.push_back(Json::array({lit.var, lit.bound}));
    clauses.push_back(c);
  }
  return canonical(Json{{"clauses", clauses}, {"d", inst.d}, {"vars", inst.var_count}});
}

KernelTrace read_trace(std::string_view text) {
  const Json j = parse_json(text, "kernel trace");
  const Json::json_pointer root;
  expect_object(j, root, {"final_k", "initial_k", "mode", "steps"});
  KernelTrace t;
  try {
    t.mode = parse_modulator_mode(expect_string(j["mode"], root / "mode"));
  } catch (const InputError& e) {
    schema_error(root / "mode", e.what());
  }
  t.initial_k = static_cast<int>(expect_int(j["initial_k"], root / "initial_k"));
  t.final_k = static_cast<int>(expect_int(j["final_k"], root / "final_k"));
  const auto s_at = root / "steps";
  const Json& steps = expect_array(j["steps"], s_at);
  long long total = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto at = s_at / i;
    expect_object(steps[i], at, {"decrement", "removed", "rule"});
    KernelStep step;
    try {
      step.rule = parse_rule(expect_string(steps[i]["rule"], at / "rule"));
    } catch (const InputError& e) {
      schema_error(at / "rule", e.what());
    }
    step.decrement = expect_int_in(steps[i]["decrement"], at / "decrement", 0, 1'000'000'000);
    const Json& removed = expect_array(steps[i]["removed"], at / "removed");
    for (std::size_t r = 0; r < removed.size(); ++r) {
      step.removed.push_back(expect_int_in(removed[r], at / "removed" / r, 1, 1'000'000'000) - 1);
    }
    if (!std::is_sorted(step.removed.begin(), step.removed.end())) {
      schema_error(at / "removed", "ids must be sorted");
    }
    total += step.decrement;
    t.steps.push_back(std::move(step));
  }
  if (t.final_k != t.initial_k - total) {
    schema_error(root / "final_k", "expected initial_k - sum of decrements = " +
                                       std::to_string(t.initial_k - total) + ", got " +
                                       std::to_string(t.final_k));
  }
  return t;
}

std::string write_trace(const KernelTrace& trace) {
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    steps.push_back({{"decrement", s.decrement}, {"removed", ids_to_json(s.removed)}, {"rule", to_string(s.rule)}});
  }
  return canonical(Json{{"final_k", trace.final_k},
                        {"initial_k", trace.initial_k},
                        {"mode", to_string(trace.mode)},
                        {"steps", steps}});
}

Json ids_to_json(const std::vector<Vertex>& ids) {
  Json out = Json::array();
  for (Vertex v : ids) out.push_back(v + 1);
  return out;
}

Json to_json(const ResolvingCertificate& cert) {
  Json j{{"vertices", ids_to_json(cert.vertices)}, {"verified", cert.verified}};
  j["witness_pair"] = cert.witness_pair
                          ? Json::array({cert.witness_pair->first + 1, cert.witness_pair->second + 1})
                          : Json(nullptr);
  return j;
}

Json to_json(const MdResult& result) {
  Json j{{"status", to_string(result.status)},
         {"explored_nodes", result.explored_nodes},
         {"flags", result.flags}};
  j["value"] = result.value ? Json(*result.value) : Json(nullptr);
  j["bound"] = result.bound ? Json(*result.bound) : Json(nullptr);
  j["certificate"] = result.status == MdStatus::kExact ? ids_to_json(result.certificate.vertices) : Json(nullptr);
  return j;
}

std::vector<Vertex> parse_id_list(const std::string& text, int vertex_count) {
  std::vector<Vertex> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok.empty()) {
      if (text.find_first_not_of(" \t,") == std::string::npos) continue;
      throw InputError("empty entry in id list '" + text + "'");
    }
    std::size_t used = 0;
    long long id = 0;
    try {
      id = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || id < 1 || id > vertex_count) {
      throw InputError("invalid vertex id '" + tok + "' (expected 1.." + std::to_string(vertex_count) + ")");
    }
    out.push_back(static_cast<Vertex>(id - 1));
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw InputError("repeated vertex id in '" + text + "'");
  }
  return out;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned char b : digest) {
    out += hex[b >> 4];
    out += hex[b & 15];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << data;
  if (!out) throw InputError("write to '" + path + "' failed");
}

}  // namespace mdkit
