#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mdkit/graph.hpp"
#include "mdkit/kernel.hpp"
#include "mdkit/nae.hpp"
#include "mdkit/resolve.hpp"

namespace mdkit {

using Json = nlohmann::json;

inline constexpr const char* kGeneratorVersion = "mdkit 1.0.0";

struct ParsedGraph {
  Graph graph;
  std::vector<std::string> warnings;  // e.g. duplicate edges that were merged
};

/// `p graph n m` then `e u v` lines with 1-based ids; `c` lines are comments.
ParsedGraph read_graph(std::string_view text);
/// Canonical text: header, then edges u < v in lexicographic order.
std::string write_graph(const Graph& g);

/// `{"labels":{"<1-based id>":"<role>"}}`; every vertex must be labelled once
/// and roles must be unique.
std::vector<std::string> read_labels(std::string_view text, int vertex_count);
std::string write_labels(const Graph& g);
/// Copy of g carrying `labels`.
Graph with_labels(const Graph& g, std::vector<std::string> labels);

/// Sorted keys, no insignificant whitespace, trailing newline.
std::string canonical(const Json& j);
/// Throws InputError on malformed JSON.
Json parse_json(std::string_view text, const std::string& what);

/// `{"clauses":[[[var,bound],...],...],"d":int,"vars":int}`, 0-based vars.
NaeInstance read_nae(std::string_view text);
std::string write_nae(const NaeInstance& inst);

/// `{"final_k","initial_k","mode","steps":[{"decrement","removed","rule"}]}`
/// with 1-based removed ids. final_k must equal initial_k minus the summed
/// decrements.
KernelTrace read_trace(std::string_view text);
std::string write_trace(const KernelTrace& trace);

/// 1-based vertex ids throughout.
Json to_json(const ResolvingCertificate& cert);
/// {"bound","certificate":[ids]|null,"explored_nodes","flags","status","value"}
Json to_json(const MdResult& result);
Json ids_to_json(const std::vector<Vertex>& ids);
/// Parses "1,5,9" (1-based) into sorted 0-based ids; empty text is the empty set.
std::vector<Vertex> parse_id_list(const std::string& text, int vertex_count);

std::string sha256_hex(std::string_view data);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

}  // namespace mdkit
