#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "fsw/digraph.hpp"
#include "fsw/error.hpp"
#include "fsw/semigroup.hpp"
#include "fsw/words.hpp"

using namespace fsw;

namespace {

// walk one vertex through the edge list, letter by letter
int walk(const LabeledDigraph& g, int v, const std::string& w) {
  for (char c : w) {
    int next = -1;
    for (const auto& [s, lab, d] : g.edges)
      if (s == v && lab == c) next = d;
    v = next;
    if (v == -1) return -1;
  }
  return v;
}

// independent monoid closure: grow a set of maps until nothing new appears
std::set<PartialMap> brute_action_monoid(const LabeledDigraph& g) {
  PartialMap id(static_cast<std::size_t>(g.size()));
  std::iota(id.begin(), id.end(), 0);
  std::vector<PartialMap> gens;
  for (char c : g.alphabet()) gens.push_back(letter_action(g, c));
  std::set<PartialMap> out(gens.begin(), gens.end());
  out.insert(id);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<PartialMap> cur(out.begin(), out.end());
    for (const auto& x : cur)
      for (const auto& s : gens)
        if (out.insert(compose(x, s)).second) grew = true;
  }
  return out;
}

std::string random_ab_word(std::mt19937& rng, int maxlen) {
  std::uniform_int_distribution<int> len(0, maxlen);
  std::uniform_int_distribution<int> pick(0, 1);
  std::string w;
  int n = len(rng);
  for (int i = 0; i < n; ++i) w += (pick(rng) == 0 ? 'a' : 'b');
  return w;
}

}  // namespace

TEST_CASE("flower builds one basepoint and a cycle per petal") {
  LabeledDigraph g = flower({"abc"});
  REQUIRE(g.size() == 3);
  REQUIRE(g.vertex_names[0] == "0");
  REQUIRE(g.basepoints.at("0") == 0);
  std::set<std::tuple<int, char, int>> es(g.edges.begin(), g.edges.end());
  REQUIRE(es == std::set<std::tuple<int, char, int>>{{0, 'a', 1}, {1, 'b', 2}, {2, 'c', 0}});

  LabeledDigraph g2 = flower({"ab", "ba"});
  REQUIRE(g2.size() == 3);
  std::set<std::tuple<int, char, int>> es2(g2.edges.begin(), g2.edges.end());
  REQUIRE(es2 ==
          std::set<std::tuple<int, char, int>>{{0, 'a', 1}, {1, 'b', 0}, {0, 'b', 2}, {2, 'a', 0}});

  LabeledDigraph loop = flower({"a"});
  REQUIRE(loop.size() == 1);
  REQUIRE(loop.edges == std::vector<std::tuple<int, char, int>>{{0, 'a', 0}});

  REQUIRE_THROWS_AS(flower({}), Error);
  REQUIRE_THROWS_AS(flower({"ab", ""}), Error);
}

TEST_CASE("flower keeps repeated prefix names apart") {
  LabeledDigraph g = flower({"ab", "ab"});
  REQUIRE(g.vertex_names == std::vector<std::string>{"0", "a", "a#1"});
  REQUIRE(g.size() == 3);
}

TEST_CASE("alphabet lists the distinct labels sorted") {
  REQUIRE(flower({"ba", "c"}).alphabet() == "abc");
  REQUIRE(flower({"aaaa"}).alphabet() == "a");
  REQUIRE(gamma_graph(2).alphabet() == "ab");
}

TEST_CASE("determinism flags ignore duplicate identical edges") {
  REQUIRE(flower({"ab", "ba"}).deterministic());
  REQUIRE(flower({"ab", "ba"}).codeterministic());

  LabeledDigraph split;
  split.vertex_names = {"0", "1", "2"};
  split.edges = {{0, 'a', 1}, {0, 'a', 2}};
  REQUIRE(!split.deterministic());
  REQUIRE(split.codeterministic());

  LabeledDigraph merge;
  merge.vertex_names = {"0", "1", "2"};
  merge.edges = {{0, 'a', 1}, {2, 'a', 1}};
  REQUIRE(merge.deterministic());
  REQUIRE(!merge.codeterministic());

  LabeledDigraph dup;
  dup.vertex_names = {"0", "1"};
  dup.edges = {{0, 'a', 1}, {0, 'a', 1}, {0, 'a', 1}};
  REQUIRE(dup.deterministic());
  REQUIRE(dup.codeterministic());
}

TEST_CASE("letter actions read the unique out edges") {
  LabeledDigraph g = flower({"ab", "ba"});
  REQUIRE(letter_action(g, 'a') == PartialMap{1, -1, 0});
  REQUIRE(letter_action(g, 'b') == PartialMap{2, 0, -1});
  REQUIRE(letter_action(g, 'c') == PartialMap{-1, -1, -1});

  LabeledDigraph bad;
  bad.vertex_names = {"0", "1", "2"};
  bad.edges = {{0, 'a', 1}, {0, 'a', 2}};
  REQUIRE_THROWS_AS(letter_action(bad, 'a'), NotDeterministic);
}

TEST_CASE("partial map helpers") {
  REQUIRE(is_injective({1, -1, 0}));
  REQUIRE(!is_injective({0, 0, -1}));
  REQUIRE(is_injective({-1, -1, -1}));

  REQUIRE(is_partial_identity({0, -1, 2}));
  REQUIRE(is_partial_identity({-1, -1, -1}));
  REQUIRE(!is_partial_identity({1, -1, -1}));

  REQUIRE(compose(PartialMap{1, -1, 0}, PartialMap{2, 0, -1}) == PartialMap{0, -1, 2});
  REQUIRE(compose(PartialMap{-1, -1, -1}, PartialMap{0, 1, 2}) == PartialMap{-1, -1, -1});

  REQUIRE(map_contains({0, 1, 2}, {0, -1, 2}));
  REQUIRE(!map_contains({0, -1, 2}, {0, 1, 2}));
  REQUIRE(map_contains({0, -1, 2}, {-1, -1, -1}));
  REQUIRE(map_contains({2, 1, 0}, {2, 1, 0}));
  REQUIRE(!map_contains({0, 1}, {0, 1, 2}));
}

TEST_CASE("act composes letter actions left to right") {
  LabeledDigraph g1 = flower({"ab", "ba"});
  REQUIRE(act(g1, "") == PartialMap{0, 1, 2});
  REQUIRE(act(g1, "ab") == PartialMap{0, -1, 2});
  REQUIRE(act(g1, "aaa") == PartialMap{-1, -1, -1});

  LabeledDigraph g2 = gamma_graph(2);
  std::mt19937 rng(20260819);
  for (int t = 0; t < 60; ++t) {
    std::string w = random_ab_word(rng, 12);
    PartialMap m = act(g2, w);
    for (int v = 0; v < g2.size(); ++v) REQUIRE(m[static_cast<std::size_t>(v)] == walk(g2, v, w));
  }
  for (int t = 0; t < 40; ++t) {
    std::string u = random_ab_word(rng, 8);
    std::string v = random_ab_word(rng, 8);
    REQUIRE(act(g2, u + v) == compose(act(g2, u), act(g2, v)));
  }
}

TEST_CASE("transition monoid of the one vertex flower") {
  TransMonoid tm = transition_monoid(gamma_graph(0));
  REQUIRE(tm.sg.size() == 1);
  REQUIRE(tm.sg.convention == "monoid");
  REQUIRE(tm.sg.identity.has_value());
  REQUIRE(*tm.sg.identity == 0);
  REQUIRE(tm.words[0] == "");
  REQUIRE(tm.identity_by_nonempty_word);
  REQUIRE(!tm.empty_map_present);
}

TEST_CASE("transition monoid equals the brute force closure") {
  for (int n : {1, 2}) {
    TransMonoid tm = transition_monoid(gamma_graph(n));
    std::set<PartialMap> want = brute_action_monoid(tm.graph);
    std::set<PartialMap> got(tm.maps.begin(), tm.maps.end());
    REQUIRE(got.size() == tm.maps.size());
    REQUIRE(got == want);
  }
  REQUIRE(transition_monoid(gamma_graph(1)).sg.size() == 15);
  REQUIRE(transition_monoid(gamma_graph(2)).sg.size() == 73);
  REQUIRE(transition_monoid(gamma_graph(3)).sg.size() == 313);
}

TEST_CASE("transition monoid of the two petal flower is aperiodic and inverse") {
  TransMonoid tm = transition_monoid(gamma_graph(1));
  for (const auto& m : tm.maps) REQUIRE(is_injective(m));
  Predicates p = predicates(tm.sg);
  REQUIRE(p.is_aperiodic);
  REQUIRE(p.is_inverse);
  REQUIRE(!tm.identity_by_nonempty_word);
  REQUIRE(tm.empty_map_present);
  REQUIRE(act(tm.graph, "aaa") == PartialMap{-1, -1, -1});

  // two letter actions plus the adjoined identity
  REQUIRE(tm.sg.generators.size() == 3);
  REQUIRE(tm.words[static_cast<std::size_t>(tm.sg.generators[0])] == "a");
  REQUIRE(tm.words[static_cast<std::size_t>(tm.sg.generators[1])] == "b");
  REQUIRE(tm.sg.generators[2] == *tm.sg.identity);
  PartialMap id{0, 1, 2};
  REQUIRE(tm.maps[static_cast<std::size_t>(*tm.sg.identity)] == id);
}

TEST_CASE("transition monoid order is containment of map graphs") {
  TransMonoid tm = transition_monoid(gamma_graph(2));
  REQUIRE(tm.sg.has_order);
  int n = tm.sg.size();
  int idid = *tm.sg.identity;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      REQUIRE(tm.sg.leq(i, j) ==
              map_contains(tm.maps[static_cast<std::size_t>(i)], tm.maps[static_cast<std::size_t>(j)]));
    REQUIRE(tm.sg.leq(idid, i) == is_partial_identity(tm.maps[static_cast<std::size_t>(i)]));
  }
}

TEST_CASE("recorded words act as their elements") {
  TransMonoid tm = transition_monoid(gamma_graph(2));
  REQUIRE(tm.words[static_cast<std::size_t>(*tm.sg.identity)] == "");
  for (int i = 0; i < tm.sg.size(); ++i)
    REQUIRE(act(tm.graph, tm.words[static_cast<std::size_t>(i)]) ==
            tm.maps[static_cast<std::size_t>(i)]);
}

TEST_CASE("find_map round trips and rejects outsiders") {
  TransMonoid tm = transition_monoid(gamma_graph(1));
  for (int i = 0; i < tm.sg.size(); ++i) {
    auto idx = find_map(tm, tm.maps[static_cast<std::size_t>(i)]);
    REQUIRE(idx.has_value());
    REQUIRE(*idx == i);
  }
  REQUIRE(!find_map(tm, PartialMap{2, 2, 2}).has_value());
}

TEST_CASE("transition monoid respects its budget") {
  REQUIRE_THROWS_AS(transition_monoid(gamma_graph(2), 10), ClosureBudgetExceeded);
}

TEST_CASE("gamma graphs and their disjoint unions") {
  REQUIRE(gamma_graph(0).size() == 1);
  REQUIRE(gamma_graph(1).size() == 3);
  REQUIRE(gamma_graph(2).size() == 7);
  REQUIRE(gamma_graph(3).size() == 15);
  REQUIRE_THROWS_AS(gamma_graph(-1), Error);

  LabeledDigraph u2 = gamma_union(2);
  REQUIRE(u2.size() == 11);
  REQUIRE(u2.basepoints.at("0_0") == 0);
  REQUIRE(u2.basepoints.at("0_1") == 1);
  REQUIRE(u2.basepoints.at("0_2") == 4);

  // lower union sits as the leading block of the next one
  LabeledDigraph u1 = gamma_union(1);
  REQUIRE(std::equal(u1.vertex_names.begin(), u1.vertex_names.end(), u2.vertex_names.begin()));
  std::set<std::tuple<int, char, int>> e2(u2.edges.begin(), u2.edges.end());
  for (const auto& e : u1.edges) REQUIRE(e2.count(e) == 1);
}

TEST_CASE("union monoid tower restricts level by level") {
  MnTower tw = build_mn_tower(4);
  REQUIRE(tw.levels.size() == 5);
  std::vector<int> sizes;
  for (const auto& lv : tw.levels) sizes.push_back(lv.sg.size());
  REQUIRE(sizes == std::vector<int>{1, 15, 88, 401, 1706});
  REQUIRE(tw.phis.size() == 4);
  for (const auto& hc : tw.phi_checks) {
    REQUIRE(hc.ok);
    REQUIRE(hc.onto);
  }

  std::mt19937 rng(7);
  for (int i = 0; i < 4; ++i) {
    const TransMonoid& hi = tw.levels[static_cast<std::size_t>(i) + 1];
    const TransMonoid& lo = tw.levels[static_cast<std::size_t>(i)];
    for (int t = 0; t < 20; ++t) {
      std::string w = random_ab_word(rng, 10);
      auto up = find_map(hi, act(hi.graph, w));
      auto down = find_map(lo, act(lo.graph, w));
      REQUIRE(up.has_value());
      REQUIRE(down.has_value());
      REQUIRE(tw.phis[static_cast<std::size_t>(i)][static_cast<std::size_t>(*up)] == *down);
    }
  }
}

TEST_CASE("graph homomorphism onto the previous flower") {
  for (int n = 0; n <= 3; ++n) {
    GammaHom gh = graph_hom_gamma(n);
    REQUIRE(gh.edges_ok);
    REQUIRE(gh.preimage_ok);
    REQUIRE(static_cast<int>(gh.vertex_map.size()) == gamma_graph(n + 1).size());
    REQUIRE(gh.vertex_map[0] == 0);
    REQUIRE(gh.basepoint_preimage.size() == 3);
    REQUIRE(gh.basepoint_preimage[0] == 0);
  }
}

TEST_CASE("lifting words agree below and split above") {
  LiftPair lp = lifting_words(1, "a");
  REQUIRE(lp.c == 'a');
  REQUIRE(lp.d == 'b');
  REQUIRE(lp.u == "abbabaaba");
  REQUIRE(lp.v == "abbabaabbaa");
  REQUIRE(lp.same_on_level);
  REQUIRE(lp.level_domain_ok);
  REQUIRE(lp.next_domains_ok);
  REQUIRE(lp.distinct_on_next);
  REQUIRE(lp.ok);

  LiftPair lq = lifting_words(1, "b");
  REQUIRE(lq.c == 'b');
  REQUIRE(lq.d == 'a');
  REQUIRE(lq.u == "abbabaabb");
  REQUIRE(lq.v == "abbabaababb");
  REQUIRE(lq.ok);

  REQUIRE_THROWS_AS(lifting_words(1, "aa"), NotAPrefix);
  REQUIRE_THROWS_AS(lifting_words(1, "ab"), NotAPrefix);  // the full iterate
  REQUIRE_THROWS_AS(lifting_words(2, "bb"), NotAPrefix);
  REQUIRE_THROWS_AS(lifting_words(-1, "a"), Error);
}

TEST_CASE("tree witness doubles on every level") {
  TreeWitnessReport tw = tree_witness(0, 3);
  REQUIRE(tw.ok);
  REQUIRE(tw.levels.size() == 4);
  for (int t = 0; t <= 3; ++t) {
    REQUIRE(tw.levels[static_cast<std::size_t>(t)].level == t);
    REQUIRE(tw.levels[static_cast<std::size_t>(t)].count == (1 << t));
    REQUIRE(tw.levels[static_cast<std::size_t>(t)].distinct_ok);
    REQUIRE(tw.levels[static_cast<std::size_t>(t)].restriction_ok);
  }

  TreeWitnessReport tv = tree_witness(1, 2);
  REQUIRE(tv.ok);
  REQUIRE(tv.levels.size() == 3);
  REQUIRE(tv.levels[0].level == 1);
  REQUIRE(tv.levels.back().count == 4);
}

TEST_CASE("folding merges equal petals into one cycle") {
  LabeledDigraph folded = stallings_fold(flower({"ab", "ab"}));
  REQUIRE(folded.size() == 2);
  REQUIRE(folded.deterministic());
  REQUIRE(folded.codeterministic());
  REQUIRE(digraph_isomorphic(folded, flower({"ab"})));
}

TEST_CASE("folding is idempotent and seed independent") {
  Substitution sf = squarefree_substitution();
  auto lam = [&](int n, unsigned seed) {
    return stallings_fold(
        flower({iterate(sf, 'a', n), iterate(sf, 'b', n), iterate(sf, 'c', n)}), seed);
  };
  LabeledDigraph l2 = lam(2, 0);
  LabeledDigraph again = stallings_fold(l2);
  REQUIRE(again.size() == l2.size());
  REQUIRE(digraph_isomorphic(again, l2));

  LabeledDigraph l3 = lam(3, 0);
  for (unsigned seed = 1; seed <= 50; ++seed) REQUIRE(digraph_isomorphic(lam(3, seed), l3));
}

TEST_CASE("folded square free flowers double in size") {
  Substitution sf = squarefree_substitution();
  std::vector<int> sizes;
  for (int n = 1; n <= 5; ++n) {
    LabeledDigraph folded =
        stallings_fold(flower({iterate(sf, 'a', n), iterate(sf, 'b', n), iterate(sf, 'c', n)}));
    REQUIRE(folded.deterministic());
    REQUIRE(folded.codeterministic());
    sizes.push_back(folded.size());
  }
  REQUIRE(sizes == std::vector<int>{2, 4, 8, 16, 32});
}

TEST_CASE("canonical relabeling decides based isomorphism") {
  LabeledDigraph g = flower({"ab", "ba"});
  LabeledDigraph perm;
  perm.vertex_names = {"x", "0", "y"};
  perm.basepoints["0"] = 1;
  perm.edges = {{1, 'a', 2}, {2, 'b', 1}, {1, 'b', 0}, {0, 'a', 1}};
  REQUIRE(digraph_isomorphic(perm, g));

  REQUIRE(!digraph_isomorphic(flower({"ab"}), flower({"ba"})));
  REQUIRE(!digraph_isomorphic(flower({"ab"}), flower({"abc"})));

  LabeledDigraph c = canonical_digraph(g);
  REQUIRE(c.vertex_names == std::vector<std::string>{"v0", "v1", "v2"});
  LabeledDigraph cc = canonical_digraph(c);
  REQUIRE(cc.edges == c.edges);
  REQUIRE(cc.basepoints == c.basepoints);

  LabeledDigraph bad;
  bad.vertex_names = {"0", "1", "2"};
  bad.edges = {{0, 'a', 1}, {0, 'a', 2}};
  REQUIRE_THROWS_AS(canonical_digraph(bad), Error);
}

TEST_CASE("dot export names the digraph") {
  std::string dot = to_dot(gamma_graph(1));
  REQUIRE(dot.find("digraph") != std::string::npos);
  REQUIRE(dot.find("->") != std::string::npos);
}
