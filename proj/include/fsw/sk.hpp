// The presented semigroups over {a,b}: rewriting to canonical exponent
// form, table builders for the S/T/R family members, the Mal'cev witness
// checks, separating word sequences, and finite evidence for the
// invariant-agreement lemma.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fsw/semigroup.hpp"
#include "fsw/words.hpp"

namespace fsw {

enum class SkVariant { Sk, Skp };

// Exponent-sequence normal form. Sk: w = a^g0 b^g1 ... a^g_{2l} b^g_{2l+1}
// (even-length gamma list, zeros allowed at the two ends only).
// Skp: w = b^b0 a b^b1 a ... a b^bl (beta list of length l+1).
struct CanonicalWord {
  SkVariant variant = SkVariant::Sk;
  bool zero = false;
  int k = 0;
  int p = 0;                                 // Skp only
  std::vector<int> gammas;                   // Sk, even length
  std::vector<int> betas;                    // Skp

  bool operator==(const CanonicalWord&) const = default;
  std::string display() const;               // e.g. "a^2 b^2 a^1", "b^2 a b^2", "0"
  std::string as_word() const;               // plain letters, zero has no word form
};

struct CanonicalWordHash {
  std::size_t operator()(const CanonicalWord& w) const;
};

CanonicalWord sk_zero(int k, SkVariant variant, int p = 0);

// canonical form of a nonempty word over {a,b}; fixed point of the
// oriented presentation rules, independent of application order
CanonicalWord normalize(const std::string& word, int k, SkVariant variant, int p = 0);

// product in the presented semigroup
CanonicalWord concat(const CanonicalWord& u, const CanonicalWord& v);

// does the value satisfy the canonical-form invariants
bool is_canonical(const CanonicalWord& w);

// all nonzero canonical forms, in a fixed deterministic order
std::vector<CanonicalWord> enumerate_canonical(int k, SkVariant variant, int p = 0);

// which member of the family to build
enum class SkWhich { S, T, R };

struct SkBuild {
  FiniteSemigroup sg;
  std::vector<CanonicalWord> elems;          // canonical value per index (S and T)
  int zero_index = -1;
  int a_index = -1, b_index = -1;            // generators when present in the member
};

// S: all canonical forms plus zero; T: the subsemigroup (gamma_0 != 0 for
// Sk, a-count divisible by p for Skp) plus zero. Pre: k >= 1 for Sk,
// k >= 2 and p prime for Skp.
SkBuild build_sk(int k, SkVariant variant, int p = 0, SkWhich which = SkWhich::S);

// R lives inside base x companion; companion is the 2-element left-zero
// semigroup (Sk) or the cyclic group C_p (Skp).
struct RBuild {
  FiniteSemigroup r;
  FiniteSemigroup base;                      // S_k or S_k(p)
  FiniteSemigroup companion;
  std::vector<int> pi1, pi2;                 // projections: r index -> base/companion index
  std::vector<int> generator_indices;        // of the defining pairs, inside r
};
RBuild build_r(int k, SkVariant variant, int p = 0,
               // override of the defining generator pairs by display name,
               // (base element, companion element); used by negative tests
               const std::vector<std::pair<std::string, std::string>>& generator_override = {});

struct MalcevReport {
  bool ok = false;
  std::vector<WitnessStage> stages;
};

// Verifies: pi2 onto the companion; the preimage of every idempotent of
// the companion is isomorphic to T_k / T_k(p) via an explicitly found
// bijective homomorphism; pi1 is an onto homomorphism to S_k / S_k(p).
MalcevReport malcev_witness_check(int k, SkVariant variant, int p = 0,
                                  const std::vector<std::pair<std::string, std::string>>& generator_override = {});

// Separating word sequences from the uncountability proofs.
// Sk: w_1 = a^{s1} b^{s2}, w_i = w_{i-1} a^{s_{2i-1}} b^{s_{2i}}.
// Skp: w_i = a b^{p*s_1} ... a b^{p*s_{p*i}}.
std::vector<std::string> separating_sequence(const std::vector<long>& s, SkVariant variant,
                                             int p, int m);

struct SeparationReport {
  int j = 0;                                 // first index where the sequences differ
  int k = 0;                                 // k = s_j + 1 (Sk) or p*(s_j + 1) (Skp)
  CanonicalWord image_s, image_t;            // stabilized images
  int stabilized_at = 0;                     // first term index where both are constant
  bool matches_closed_form = false;          // against the proof's stated forms
  bool separated = false;
};

// Evaluates both word sequences in the k-th family member until the
// images stabilize; throws NotStabilized if they keep moving.
SeparationReport separation_check(const std::vector<long>& s, const std::vector<long>& t,
                                  SkVariant variant, int p = 0);

struct EvidenceReport {
  AgreeReport agreement;
  struct PerK {
    int k;
    bool images_equal;
    std::uint64_t assignments;
  };
  std::vector<PerK> per_k;
  bool all_equal = false;                    // images match for every tested k
};

// When u and v satisfy the agreement hypotheses, evaluates both words in
// T_k under every assignment alphabet -> T_k for k = 2..k_max.
EvidenceReport evidence_check(const std::string& u, const std::string& v,
                              const std::string& alphabet, int k_max = 5,
                              std::uint64_t budget = 2000000000ull);

}  // namespace fsw
