#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "fsw/digraph.hpp"
#include "fsw/error.hpp"
#include "fsw/json_io.hpp"
#include "fsw/sk.hpp"
#include "fsw/synthesis.hpp"

using namespace fsw;

namespace {

bool file_exists(const std::string& path) {
  std::ifstream in(path);
  return static_cast<bool>(in);
}

}  // namespace

TEST_CASE("semigroup json round trip without optional fields") {
  FiniteSemigroup s = build_sk(2, SkVariant::Sk).sg;
  REQUIRE(!s.has_order);
  nlohmann::json j = semigroup_to_json(s);
  REQUIRE(!j.contains("order"));
  REQUIRE(j.contains("generators"));
  FiniteSemigroup back = semigroup_from_json(j);
  REQUIRE(back.names == s.names);
  REQUIRE(back.table == s.table);
  REQUIRE(back.generators == s.generators);
  REQUIRE(back.identity == s.identity);
  REQUIRE(back.has_order == s.has_order);
  REQUIRE(semigroup_to_json(back) == j);
}

TEST_CASE("semigroup json round trip with order and identity") {
  TransMonoid tm = transition_monoid(gamma_graph(1));
  nlohmann::json j = semigroup_to_json(tm.sg);
  REQUIRE(j.contains("order"));
  REQUIRE(j.contains("identity"));
  FiniteSemigroup back = semigroup_from_json(j);
  REQUIRE(back.names == tm.sg.names);
  REQUIRE(back.table == tm.sg.table);
  REQUIRE(back.identity == tm.sg.identity);
  REQUIRE(back.has_order);
  REQUIRE(back.order == tm.sg.order);
  for (int i = 0; i < back.size(); ++i)
    for (int k = 0; k < back.size(); ++k) REQUIRE(back.leq(i, k) == tm.sg.leq(i, k));
  REQUIRE(semigroup_to_json(back) == j);
}

TEST_CASE("semigroup json rejects malformed shapes") {
  CHECK_THROWS_WITH_AS(semigroup_from_json(nlohmann::json::array()),
                       "semigroup json needs 'elements' and 'table'", Error);
  CHECK_THROWS_WITH_AS(semigroup_from_json(nlohmann::json{{"elements", {"x"}}}),
                       "semigroup json needs 'elements' and 'table'", Error);

  nlohmann::json j{{"elements", {"x", "y"}}, {"table", {{0, 0}}}};
  CHECK_THROWS_WITH_AS(semigroup_from_json(j), "semigroup json: table must have one row per element",
                       Error);
  j["table"] = {{0, 0}, {0}};
  CHECK_THROWS_WITH_AS(semigroup_from_json(j),
                       "semigroup json: table rows must match the element count", Error);
  j["table"] = {{0, 0}, {0, "x"}};
  CHECK_THROWS_WITH_AS(semigroup_from_json(j), "semigroup json: table entries must be integers",
                       Error);
  j["table"] = {{0, 0}, {0, 1}};
  j["order"] = {{0, 1, 2}};
  CHECK_THROWS_WITH_AS(semigroup_from_json(j), "semigroup json: order entries must be pairs", Error);
  j.erase("order");
  j["elements"] = {"x", 3};
  CHECK_THROWS_WITH_AS(semigroup_from_json(j), "semigroup json: element names must be strings",
                       Error);

  // shape is fine but the table is not associative, so validation trips
  nlohmann::json bad{{"elements", {"x", "y"}}, {"table", {{1, 0}, {0, 0}}}};
  CHECK_THROWS_AS(semigroup_from_json(bad), NonAssociative);
}

TEST_CASE("digraph json round trip") {
  LabeledDigraph g = gamma_graph(2);
  nlohmann::json j = digraph_to_json(g);
  LabeledDigraph back = digraph_from_json(j);
  REQUIRE(back.vertex_names == g.vertex_names);
  REQUIRE(back.edges == g.edges);
  REQUIRE(back.basepoints == g.basepoints);
  REQUIRE(digraph_to_json(back) == j);
}

TEST_CASE("digraph json rejects malformed shapes") {
  CHECK_THROWS_WITH_AS(digraph_from_json(nlohmann::json::array()),
                       "digraph json needs 'vertices' and 'edges'", Error);
  nlohmann::json j{{"vertices", {"0", "1"}}, {"edges", {{0, "a"}}}};
  CHECK_THROWS_WITH_AS(digraph_from_json(j), "digraph json: edges must be [src,label,dst] triples",
                       Error);
  j["edges"] = {{0, "ab", 1}};
  CHECK_THROWS_WITH_AS(digraph_from_json(j), "digraph json: labels must be single characters",
                       Error);
  j["edges"] = {{0, "a", 5}};
  CHECK_THROWS_WITH_AS(digraph_from_json(j), "digraph json: edge endpoint out of range", Error);
  j["edges"] = {{0, "a", 1}};
  j["basepoints"] = {{"0", 9}};
  CHECK_THROWS_WITH_AS(digraph_from_json(j), "digraph json: basepoint out of range", Error);
  j["basepoints"] = {{"0", 0}};
  LabeledDigraph ok = digraph_from_json(j);
  REQUIRE(ok.size() == 2);
  REQUIRE(ok.basepoints.at("0") == 0);
}

TEST_CASE("json files load and save atomically") {
  const std::string path = "fsw_test_roundtrip.json";
  const std::string tmp = path + ".tmp";
  FiniteSemigroup s = cyclic_group(4);
  save_text_file(path, semigroup_to_json(s).dump(2) + "\n");
  REQUIRE(file_exists(path));
  REQUIRE(!file_exists(tmp));
  FiniteSemigroup back = semigroup_from_json(load_json_file(path));
  REQUIRE(back.table == s.table);
  REQUIRE(back.names == s.names);

  save_text_file(path, "not json");
  CHECK_THROWS_AS(load_json_file(path), Error);
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_json_file("no_such_file_anywhere.json"), IoError);
}
