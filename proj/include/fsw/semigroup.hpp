// Finite semigroups as multiplication tables: validation, generator
// closure, omega powers, Green's relations, predicates, and the standard
// constructions (product, subsemigroup, Rees quotient, homomorphism checks).

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fsw/error.hpp"

namespace fsw {

struct FiniteSemigroup {
  std::vector<std::string> names;            // size n, display only
  std::vector<int> table;                    // row-major n*n, table[a*n+b] = ab
  std::vector<int> generators;               // empty means unspecified
  std::optional<int> identity;
  bool has_order = false;
  std::vector<std::pair<int, int>> order;    // strict pairs (s,t), s <= t, s != t
  std::string convention;                    // free-form build metadata

  int size() const { return static_cast<int>(names.size()); }

  int mul(int a, int b) const {
    return table[static_cast<std::size_t>(a) * names.size() + b];
  }

  // reflexive order test; only meaningful when has_order
  bool leq(int a, int b) const;

  // product of a nonempty element-index word
  int mul_word(const std::vector<int>& word) const;
};

// Throws NonAssociative / GeneratorsNotGenerating / OrderNotStable /
// Error (malformed identity or table entries) if any invariant fails.
void validate(const FiniteSemigroup& s);

std::vector<int> idempotents(const FiniteSemigroup& s);
std::optional<int> zero_element(const FiniteSemigroup& s);

// index/period of the cyclic subsemigroup generated by s:
// smallest i >= 1, p >= 1 with s^{i+p} = s^i
struct IndexPeriod {
  int index;
  int period;
};
IndexPeriod index_period(const FiniteSemigroup& s, int x);

int omega_power(const FiniteSemigroup& s, int x);
std::vector<int> omega_table(const FiniteSemigroup& s);

struct GreenData {
  // class id per element, classes numbered in first-element order
  std::vector<int> r, l, j, h, d;
  int num_r = 0, num_l = 0, num_j = 0, num_h = 0, num_d = 0;
  // quasi-orders on class ids: x_leq[c1][c2] means class c1 <= class c2
  std::vector<std::vector<bool>> r_leq, l_leq, j_leq, h_leq;
  std::vector<bool> d_regular;               // per d-class: contains an idempotent

  bool same_r(int a, int b) const { return r[a] == r[b]; }
  bool same_l(int a, int b) const { return l[a] == l[b]; }
  bool same_j(int a, int b) const { return j[a] == j[b]; }
  bool same_h(int a, int b) const { return h[a] == h[b]; }
};

// Quasi-orders via reachability in the generator Cayley graphs (falls back
// to all elements as generators when none are recorded).
GreenData green(const FiniteSemigroup& s);

// Independent slow path for tests: s <=_R t iff s in {t} u tS, etc.
bool leq_r_by_ideal(const FiniteSemigroup& s, int a, int b);
bool leq_l_by_ideal(const FiniteSemigroup& s, int a, int b);
bool leq_j_by_ideal(const FiniteSemigroup& s, int a, int b);

struct Predicates {
  bool is_aperiodic = false;
  int aperiodicity_index = -1;               // least n with x^{n+1} = x^n for all x
  bool is_inverse = false;
  bool is_group = false;
  bool is_nilpotent = false;
  bool has_zero = false;
  std::optional<int> zero;
  std::vector<int> idempotent_list;
};
Predicates predicates(const FiniteSemigroup& s);

FiniteSemigroup direct_product(const FiniteSemigroup& s, const FiniteSemigroup& t);

// subset must be multiplication-closed; throws NotClosed otherwise
FiniteSemigroup subsemigroup(const FiniteSemigroup& s, const std::vector<int>& subset);

// ideal must be a nonempty two-sided ideal; throws NotIdeal otherwise
FiniteSemigroup rees_quotient(const FiniteSemigroup& s, const std::vector<int>& ideal);

struct HomCheck {
  bool ok = false;
  int a = -1, b = -1;                        // first violating pair when !ok
  bool onto = false;
  bool injective = false;
};

// one step of a staged witness verification, shared by report types
struct WitnessStage {
  std::string name;
  bool ok = false;
  std::string detail;
};
HomCheck hom_check(const FiniteSemigroup& s, const FiniteSemigroup& t,
                   const std::vector<int>& map);

// image of the map as a re-indexed subsemigroup of t (map must be a hom)
FiniteSemigroup hom_image(const FiniteSemigroup& s, const FiniteSemigroup& t,
                          const std::vector<int>& map);
std::vector<int> hom_preimage(const std::vector<int>& map, const std::vector<int>& targets);

// Searches for a bijective homomorphism s -> t by backtracking over images
// of a small generating set, pruning with element invariants.
std::optional<std::vector<int>> find_isomorphism(const FiniteSemigroup& s,
                                                 const FiniteSemigroup& t);

// Greedy small generating set: elements not generated by their predecessors,
// then shrunk by dropping redundant members.
std::vector<int> small_generating_set(const FiniteSemigroup& s);

// ---- generic closure engine ----------------------------------------------

struct ClosureOptions {
  std::size_t budget = 500000;               // element cap
};

template <class Elem>
struct ClosureResult {
  std::vector<Elem> elements;                // discovery order
  std::vector<std::vector<int>> words;       // generator-index word per element
  std::optional<int> identity;               // index of the unit, when one was seeded
  std::vector<int> generators;               // indices of the seed elements
};

// Breadth-first closure of the seeds under mul. Seeds are deduplicated but
// keep first-seen order. When unit is given it becomes element 0 with the
// empty word (monoid convention); otherwise the result is the semigroup of
// all nonempty products. Discovery order is shortlex in seed indices, so
// numbering is deterministic.
template <class Elem, class Mul, class Hash = std::hash<Elem>>
ClosureResult<Elem> close_under(const std::vector<Elem>& seeds, Mul mul,
                                std::optional<Elem> unit = std::nullopt,
                                ClosureOptions opt = {}) {
  ClosureResult<Elem> out;
  std::unordered_map<Elem, int, Hash> index;
  auto add = [&](const Elem& e, std::vector<int> word) -> int {
    auto it = index.find(e);
    if (it != index.end()) return it->second;
    if (out.elements.size() >= opt.budget) throw ClosureBudgetExceeded(opt.budget);
    int id = static_cast<int>(out.elements.size());
    index.emplace(e, id);
    out.elements.push_back(e);
    out.words.push_back(std::move(word));
    return id;
  };

  if (unit) {
    int uid = add(*unit, {});
    out.identity = uid;
  }
  std::vector<Elem> gens;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    add(seeds[i], {static_cast<int>(i)});
    gens.push_back(seeds[i]);
  }
  for (std::size_t i = 0; i < seeds.size(); ++i)
    out.generators.push_back(index.at(seeds[i]));

  // frontier by index keeps BFS order stable
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Elem next = mul(out.elements[head], gens[g]);
      std::vector<int> w = out.words[head];
      w.push_back(static_cast<int>(g));
      add(next, std::move(w));
    }
  }
  return out;
}

// Multiplication table over a closed element list.
template <class Elem, class Mul, class Hash = std::hash<Elem>>
FiniteSemigroup table_from_closure(const ClosureResult<Elem>& cl, Mul mul,
                                   const std::function<std::string(const Elem&, const std::vector<int>&)>& name) {
  std::unordered_map<Elem, int, Hash> index;
  for (std::size_t i = 0; i < cl.elements.size(); ++i)
    index.emplace(cl.elements[i], static_cast<int>(i));
  int n = static_cast<int>(cl.elements.size());
  FiniteSemigroup s;
  s.table.assign(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    s.names.push_back(name(cl.elements[i], cl.words[i]));
    for (int j = 0; j < n; ++j) {
      Elem p = mul(cl.elements[i], cl.elements[j]);
      auto it = index.find(p);
      if (it == index.end())
        throw Error("closure is not closed; product of " + std::to_string(i) +
                    "," + std::to_string(j) + " escaped");
      s.table[static_cast<std::size_t>(i) * n + j] = it->second;
    }
  }
  s.generators = cl.generators;
  s.identity = cl.identity;
  return s;
}

// Closure of an element subset inside an existing table, as element indices.
std::vector<int> closure_in_table(const FiniteSemigroup& s, std::vector<int> seeds);

}  // namespace fsw
