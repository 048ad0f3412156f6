#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "mdkit/error.hpp"
#include "mdkit/io.hpp"
#include "mdkit/random.hpp"
#include "mdkit/resolve.hpp"
#include "mdkit/sat.hpp"
#include "oracle.hpp"

using namespace mdkit;

namespace {

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

bool mentions(const std::string& text, const std::string& part) {
  return text.find(part) != std::string::npos;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("graph text format") {
  ParsedGraph k2 = read_graph("c a comment\np graph 2 1\ne 1 2\n");
  CHECK(k2.graph == oracle::clique(2));
  CHECK(k2.warnings.empty());
  CHECK(write_graph(k2.graph) == "p graph 2 1\ne 1 2\n");

  ParsedGraph dup = read_graph("p graph 2 2\ne 1 2\ne 2 1\n");
  CHECK(dup.graph.edge_count() == 1);
  CHECK(dup.warnings.size() == 1);

  const std::string mismatch = error_of([] { read_graph("p graph 3 2\ne 1 2\n"); });
  CHECK(mentions(mismatch, "declares 2"));
  CHECK(mentions(mismatch, "found 1"));
  CHECK(mentions(error_of([] { read_graph("p graph 2 1\ne 1 3\n"); }), "line 2"));
  CHECK_THROWS_AS(read_graph("p graph 2 1\ne 2 2\n"), InputError);
  CHECK_THROWS_AS(read_graph("e 1 2\n"), InputError);
  CHECK_THROWS_AS(read_graph("p graph 2 1\ne 1 x\n"), InputError);
  CHECK_THROWS_AS(read_graph("p graph 2 1\nq 1 2\n"), InputError);
}

TEST_CASE("graph round trip is canonical") {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = random_connected_graph(rng, rng.between(1, 25), 20);
    const std::string text = write_graph(g);
    Graph back = read_graph(text).graph;
    CHECK(back == g);
    CHECK(write_graph(back) == text);
  }
}

TEST_CASE("labels") {
  Graph g = Graph::from_edges(2, std::vector<Edge>{{0, 1}}, {"g1", "g"});
  const std::string text = write_labels(g);
  CHECK(text == "{\"labels\":{\"1\":\"g1\",\"2\":\"g\"}}\n");
  CHECK(read_labels(text, 2) == g.labels());

  const std::string dup = error_of([] { read_labels(R"({"labels":{"1":"a","2":"a"}})", 2); });
  CHECK(mentions(dup, "schema error at /labels/"));
  CHECK(mentions(dup, "duplicate role"));
  CHECK(mentions(error_of([] { read_labels(R"({"labels":{"1":"a"}})", 2); }), "/labels/2"));
  CHECK(mentions(error_of([] { read_labels(R"({"labels":{"3":"a"}})", 2); }), "/labels/3"));
  CHECK_THROWS_AS(read_labels("{", 2), InputError);
  CHECK(with_labels(oracle::clique(2), {"x", "y"}).label(1) == "y");
}

TEST_CASE("NAE instances") {
  NaeInstance inst{2, 3, {{NaeLiteral{0, 1}, NaeLiteral{1, 2}, NaeLiteral{2, 1}}}};
  const std::string text = write_nae(inst);
  CHECK(text == "{\"clauses\":[[[0,1],[1,2],[2,1]]],\"d\":2,\"vars\":3}\n");
  CHECK(read_nae(text) == inst);

  CHECK(mentions(error_of([] { read_nae(R"({"clauses":[[]],"d":2,"vars":3})"); }), "/clauses/0"));
  CHECK(mentions(error_of([] { read_nae(R"({"clauses":[[[0,3],[1,1],[2,1]]],"d":2,"vars":3})"); }),
                 "/clauses/0/0/1"));
  CHECK_THROWS_AS(read_nae(R"({"clauses":[],"d":2,"vars":3,"extra":1})"), InputError);
  CHECK_THROWS_AS(read_nae(R"({"clauses":[],"d":2})"), InputError);
}

TEST_CASE("traces") {
  KernelTrace t;
  t.mode = ModulatorMode::kCoCluster;
  t.initial_k = 5;
  t.final_k = 3;
  t.steps = {{Rule::kRR2, {3}, 1}, {Rule::kRR4, {0, 1}, 1}};
  const std::string text = write_trace(t);
  KernelTrace back = read_trace(text);
  CHECK(back.mode == t.mode);
  CHECK(back.final_k == 3);
  REQUIRE(back.steps.size() == 2);
  CHECK(back.steps[1].removed == std::vector<Vertex>{0, 1});
  CHECK(back.steps[1].rule == Rule::kRR4);
  CHECK(write_trace(back) == text);
  CHECK(mentions(text, "\"removed\":[1,2]"));

  Json j = Json::parse(text);
  j["final_k"] = 4;
  CHECK(mentions(error_of([&] { read_trace(j.dump()); }), "/final_k"));
}

TEST_CASE("result records") {
  Json cert = to_json(is_resolving_set(oracle::clique(3), std::vector<Vertex>{0}));
  CHECK(cert["verified"] == false);
  CHECK(cert["witness_pair"] == Json::array({2, 3}));
  CHECK(cert["vertices"] == Json::array({1}));

  Json md = to_json(metric_dimension_exact(oracle::path(5)));
  CHECK(md["status"] == "EXACT");
  CHECK(md["value"] == 1);
  CHECK(md["certificate"].is_array());
  CHECK(md["bound"].is_null());

  Json over = to_json(metric_dimension_exact(oracle::clique(4), {.bound = 2}));
  CHECK(over["status"] == "EXCEEDS_BOUND");
  CHECK(over["value"].is_null());
  CHECK(over["certificate"].is_null());
  CHECK(over["bound"] == 2);
}

TEST_CASE("canonical JSON and helpers") {
  Json j = {{"b", 1}, {"a", {{"d", 2}, {"c", 3}}}};
  CHECK(canonical(j) == "{\"a\":{\"c\":3,\"d\":2},\"b\":1}\n");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(parse_id_list("3,1", 4) == std::vector<Vertex>{0, 2});
  CHECK(parse_id_list("", 4).empty());
  CHECK_THROWS_AS(parse_id_list("5", 4), InputError);
  CHECK_THROWS_AS(parse_id_list("1,,2", 4), InputError);
  CHECK_THROWS_AS(parse_id_list("2,2", 4), InputError);
  CHECK_THROWS_AS(parse_json("[1,", "test"), InputError);
}

TEST_CASE("files") {
  const auto path = std::filesystem::temp_directory_path() / "mdkit_io_test.txt";
  write_file(path.string(), "hello\n");
  CHECK(read_file(path.string()) == "hello\n");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_file(path.string()), InputError);
}

TEST_CASE("DIMACS output") {
  CnfFormula f{2, {{1, -2}, {2}}};
  CHECK(write_dimacs_cnf(f) == "p cnf 2 2\n1 -2 0\n2 0\n");
}

}  // TEST_SUITE
