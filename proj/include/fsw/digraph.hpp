// Labeled digraphs and partial-map actions: flower graphs, transition
// monoids with the containment order, the tower of monoids on disjoint
// unions with restriction homomorphisms, level homomorphisms between
// consecutive flowers, the lifting construction with its binary-tree
// witness, and Stallings folding.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fsw/semigroup.hpp"

namespace fsw {

struct LabeledDigraph {
  std::vector<std::string> vertex_names;
  std::vector<std::tuple<int, char, int>> edges;    // (src, label, dst)
  std::map<std::string, int> basepoints;

  int size() const { return static_cast<int>(vertex_names.size()); }
  std::string alphabet() const;                     // sorted distinct labels
  bool deterministic() const;
  bool codeterministic() const;
};

// vertex -> vertex with -1 for undefined; index is the vertex universe
using PartialMap = std::vector<int>;

struct PartialMapHash {
  std::size_t operator()(const PartialMap& m) const;
};

bool is_injective(const PartialMap& m);
bool is_partial_identity(const PartialMap& m);
PartialMap compose(const PartialMap& first, const PartialMap& then);
// graph containment: every pair of sub is a pair of super
bool map_contains(const PartialMap& super, const PartialMap& sub);

// disjoint label paths for the words, all endpoints glued to one
// basepoint named "0"
LabeledDigraph flower(const std::vector<std::string>& words);

// flower of the two PTM iterates of length 2^n, basepoint "0"
LabeledDigraph gamma_graph(int n);
// disjoint union of gamma_graph(0..n); basepoints "0_0".."0_n"
LabeledDigraph gamma_union(int n);

PartialMap letter_action(const LabeledDigraph& g, char letter);  // throws NotDeterministic
PartialMap act(const LabeledDigraph& g, const std::string& word);

struct TransMonoid {
  FiniteSemigroup sg;                       // identity adjoined, order = reverse containment
  std::vector<PartialMap> maps;             // per element
  std::vector<std::string> words;           // shortest word per element, "" for identity
  LabeledDigraph graph;
  bool empty_map_present = false;
  bool identity_by_nonempty_word = false;   // some nonempty word acts as the identity
};

TransMonoid transition_monoid(const LabeledDigraph& g, std::size_t budget = 500000);

// index of a map inside a transition monoid, when present
std::optional<int> find_map(const TransMonoid& tm, const PartialMap& m);

struct MnTower {
  std::vector<TransMonoid> levels;          // levels[i] built on gamma_union(i)
  std::vector<std::vector<int>> phis;       // phis[i]: levels[i+1] -> levels[i]
  std::vector<HomCheck> phi_checks;         // each must be ok and onto
};
MnTower build_mn_tower(int n, std::size_t budget = 500000);

struct GammaHom {
  std::vector<int> vertex_map;              // gamma_graph(n+1) -> gamma_graph(n)
  bool edges_ok = false;                    // every edge maps to an equally labeled edge
  std::vector<int> basepoint_preimage;      // vertices over the lower basepoint
  bool preimage_ok = false;                 // equals {0, 0.mu^n(a), 0.mu^n(b)}
};
GammaHom graph_hom_gamma(int n);

struct LiftPair {
  std::string u, v;
  char c = 'a';                             // w is a prefix of mu^n(c)
  char d = 'b';                             // the other letter
  bool same_on_level = false;               // act(g_n, u) == act(g_n, v)
  bool level_domain_ok = false;             // that common action is {0 -> 0.w}
  bool next_domains_ok = false;             // both next-level actions have domain {0}
  bool distinct_on_next = false;
  bool ok = false;
};
// w must be a proper prefix of mu^n(a) or mu^n(b); throws NotAPrefix
LiftPair lifting_words(int n, const std::string& w);

struct TreeWitnessLevel {
  int level = 0;                            // graph index base_n + depth so far
  int count = 0;                            // pairwise-distinct lifted elements
  bool distinct_ok = false;
  bool restriction_ok = false;              // each child restricts to its parent
};
struct TreeWitnessReport {
  std::vector<TreeWitnessLevel> levels;
  bool ok = false;
};
TreeWitnessReport tree_witness(int base_n, int depth, std::size_t budget = 500000);

// merge vertices until the graph is deterministic and codeterministic;
// seed permutes the merge order (the result is unique up to isomorphism)
LabeledDigraph stallings_fold(const LabeledDigraph& g, unsigned seed = 0);

// canonical relabeling by breadth-first search from the basepoint with
// label-sorted edges; requires a deterministic graph
LabeledDigraph canonical_digraph(const LabeledDigraph& g);
bool digraph_isomorphic(const LabeledDigraph& a, const LabeledDigraph& b);

std::string to_dot(const LabeledDigraph& g);

}  // namespace fsw
