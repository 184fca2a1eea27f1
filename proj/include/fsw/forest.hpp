// Ramseyan factorization forests for a homomorphism into a finite
// semigroup: a constructive builder meeting the 9|S| height bound, an
// independent verifier, and the finite generation checks that ride on
// the same machinery.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "fsw/semigroup.hpp"

namespace fsw {

struct ForestNode {
  int lo = 0, hi = 0;                        // word slice [lo, hi)
  int image = -1;                            // product of the slice's letter images
  std::vector<int> children;                 // node ids, empty for single letters
  int height = 0;
};

struct FactorizationForest {
  std::vector<ForestNode> nodes;
  int root = -1;
  int height = 0;
};

// images must cover every letter of w; w nonempty
FactorizationForest build_forest(const FiniteSemigroup& s, const std::map<char, int>& images,
                                 const std::string& w);

struct ForestVerification {
  bool ok = false;
  std::string violation;                     // first defect found
  int height = 0;
  int closure_size = 0;                      // |S_w|, the generated subsemigroup
  int bound = 0;                             // 9 * |S_w| - 8
};

// Re-derives every node image from the letter images and checks the
// concatenation law, the leaf set, degrees, the Ramseyan condition on
// nodes of degree >= 3, the height algebra, and the height bound.
ForestVerification verify_ramseyan(const FactorizationForest& f, const FiniteSemigroup& s,
                                   const std::map<char, int>& images, const std::string& w);

// closure of A together with the phi-preimages of idempotents of t is all
// of s (finite instance of the generation theorem)
struct GenerationCheck {
  bool ok = false;
  int closure_size = 0;
  int preimage_size = 0;
};
GenerationCheck idempotent_generation_check(const FiniteSemigroup& s, const FiniteSemigroup& t,
                                            const std::vector<int>& phi,
                                            const std::vector<int>& gens_a);

// Both readings of the kernel generator set for a homomorphism onto a
// nilpotent semigroup: literal (words of length < n outside the kernel)
// and corrected (words of length < n inside the kernel).
struct KernelGenReading {
  std::vector<int> b_set;
  bool inside_kernel = false;                // B subset of the kernel
  bool generates_kernel = false;             // closure(B) equals the kernel
  int closure_size = 0;
};
struct KernelGenReport {
  int nil_index = 0;                         // least n with N^n = {0}
  std::vector<int> kernel;                   // phi preimage of the zero of N
  KernelGenReading literal, corrected;
};
KernelGenReport nilpotent_kernel_generators(const FiniteSemigroup& s, const FiniteSemigroup& n,
                                            const std::vector<int>& phi,
                                            const std::vector<int>& gens_a);

}  // namespace fsw
