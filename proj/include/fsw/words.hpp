// Combinatorics on words: substitutions and their iterates, freeness
// testers, factor and scattered-subword utilities, and the per-letter-pair
// invariants used by the sk module.

#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fsw {

struct Substitution {
  std::string alphabet;                      // distinct letters
  std::map<char, std::string> images;

  bool prolongable_at(char letter) const;    // image(letter) starts with letter
};

Substitution ptm_substitution();             // a -> ab, b -> ba
Substitution squarefree_substitution();      // a -> abc, b -> ac, c -> b

std::string apply(const Substitution& sub, const std::string& word);
// n-fold image of a single letter; throws BudgetExceeded past max_len
std::string iterate(const Substitution& sub, char letter, int n,
                    std::size_t max_len = (1u << 22));

bool is_square_free(const std::string& w);
bool is_cube_free(const std::string& w);
// overlap: factor uvuvu with u nonempty, v possibly empty
bool is_overlap_free(const std::string& w);

std::set<std::string> factors(const std::string& w, std::size_t maxlen);
bool is_factor(const std::string& u, const std::string& w);
bool is_subword(const std::string& u, const std::string& w);   // scattered
// largest n with x^n a subword, i.e. the occurrence count of the letter
std::size_t letter_count(const std::string& w, char x);

// count of y somewhere relative to x, or the infinity marker when x is absent
struct CountOrInf {
  bool infinite = false;
  long count = 0;

  bool operator==(const CountOrInf&) const = default;
};

struct WordInvariants {
  // flat[{x,y}]: occurrences of y strictly before the first x
  // sharp[{x,y}]: occurrences of y strictly after the last x
  std::map<std::pair<char, char>, CountOrInf> flat, sharp;
  // minfactors[{x,y}]: subword-minimal inner words w with xwy a factor of u
  // and w avoiding both x and y
  std::map<std::pair<char, char>, std::set<std::string>> minfactors;
};

// flat/sharp over distinct pairs, minfactors over all pairs of alphabet
WordInvariants word_invariants(const std::string& u, const std::string& alphabet);

struct AgreeReport {
  bool cube_subwords = false;                // x^3 a subword of both, every letter
  bool flat_sharp_equal = false;
  bool minfactors_equal = false;
  bool agree = false;
};
AgreeReport agree(const std::string& u, const std::string& v, const std::string& alphabet);

}  // namespace fsw
