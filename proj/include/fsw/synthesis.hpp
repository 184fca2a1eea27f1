// The synthesis semigroup U(S,T,f) on S together with S x T x S, and the
// staged witness check for its semilattice quotient structure.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fsw/semigroup.hpp"

namespace fsw {

struct SynthesisBuild {
  FiniteSemigroup u;
  int s_size = 0, t_size = 0;

  // element layout: S part first, then the triples
  int triple_index(int s1, int t, int s2) const {
    return s_size + (s1 * t_size + t) * s_size + s2;
  }
  bool is_triple(int x) const { return x >= s_size; }
};

// f is a total map S -> T (any map); associativity of the result is
// verified exhaustively, budget-guarded
SynthesisBuild synthesis_u(const FiniteSemigroup& s, const FiniteSemigroup& t,
                           const std::vector<int>& f, std::size_t budget = 2000);

// capped addition on {0..m}: i + j truncated at m
FiniteSemigroup capped_addition_monoid(int m);
FiniteSemigroup cyclic_group(int n);
// chain 0 <= 1 <= ... <= n-1 with meet as multiplication
FiniteSemigroup chain_semilattice(int n);

struct SlReport {
  bool ok = false;
  std::vector<WitnessStage> stages;
  int u_size = 0;
  int kernel_j_classes = 0;                  // J-classes of K inside U
  int subgroup_count = 0;                    // maximal subgroups of K examined
};

// Builds U(M_m, G, f) where f(i) = g^i for a chosen generator g, maps
// U onto the 3-chain semilattice (identity of M_m to the top, the rest
// of M_m to the middle, all triples to the bottom), and verifies the
// quotient structure: the map is an onto homomorphism, the kernel K is
// one J-class, and every maximal subgroup of K is isomorphic to G.
// phi_override replaces the quotient map, for negative controls.
SlReport sl_witness(int m, const FiniteSemigroup& g,
                    const std::optional<std::vector<int>>& f_override = std::nullopt,
                    const std::optional<std::vector<int>>& phi_override = std::nullopt);

}  // namespace fsw
