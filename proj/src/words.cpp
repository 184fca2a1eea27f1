#include "fsw/words.hpp"

#include <algorithm>

#include "fsw/error.hpp"

namespace fsw {

bool Substitution::prolongable_at(char letter) const {
  auto it = images.find(letter);
  return it != images.end() && !it->second.empty() && it->second.front() == letter;
}

Substitution ptm_substitution() {
  Substitution s;
  s.alphabet = "ab";
  s.images = {{'a', "ab"}, {'b', "ba"}};
  return s;
}

Substitution squarefree_substitution() {
  Substitution s;
  s.alphabet = "abc";
  s.images = {{'a', "abc"}, {'b', "ac"}, {'c', "b"}};
  return s;
}

std::string apply(const Substitution& sub, const std::string& word) {
  std::string out;
  for (char c : word) {
    auto it = sub.images.find(c);
    if (it == sub.images.end())
      throw Error(std::string("letter '") + c + "' has no image");
    out += it->second;
  }
  return out;
}

std::string iterate(const Substitution& sub, char letter, int n, std::size_t max_len) {
  std::string w(1, letter);
  for (int i = 0; i < n; ++i) {
    std::size_t next_len = 0;
    for (char c : w) {
      auto it = sub.images.find(c);
      if (it == sub.images.end())
        throw Error(std::string("letter '") + c + "' has no image");
      next_len += it->second.size();
    }
    if (next_len > max_len)
      throw BudgetExceeded("iterate would produce a word of length " +
                           std::to_string(next_len));
    w = fsw::apply(sub, w);
  }
  return w;
}

namespace {

// for each period rho, run[i] = longest common prefix of w[i..] and w[i+rho..];
// the predicate receives the maximal run length over all i
template <typename Pred>
bool any_period(const std::string& w, Pred&& bad) {
  std::size_t n = w.size();
  std::vector<std::size_t> run;
  for (std::size_t rho = 1; rho < n; ++rho) {
    run.assign(n - rho + 1, 0);
    for (std::size_t i = n - rho; i-- > 0;)
      run[i] = (w[i] == w[i + rho]) ? run[i + 1] + 1 : 0;
    std::size_t best = *std::max_element(run.begin(), run.end());
    if (bad(rho, best)) return true;
  }
  return false;
}

}  // namespace

bool is_square_free(const std::string& w) {
  return !any_period(w, [](std::size_t rho, std::size_t best) { return best >= rho; });
}

bool is_cube_free(const std::string& w) {
  return !any_period(w,
                     [](std::size_t rho, std::size_t best) { return best >= 2 * rho; });
}

bool is_overlap_free(const std::string& w) {
  return !any_period(
      w, [](std::size_t rho, std::size_t best) { return best >= rho + 1; });
}

std::set<std::string> factors(const std::string& w, std::size_t maxlen) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t len = 1; len <= maxlen && i + len <= w.size(); ++len)
      out.insert(w.substr(i, len));
  return out;
}

bool is_factor(const std::string& u, const std::string& w) {
  return w.find(u) != std::string::npos;
}

bool is_subword(const std::string& u, const std::string& w) {
  std::size_t i = 0;
  for (char c : w) {
    if (i < u.size() && u[i] == c) ++i;
  }
  return i == u.size();
}

std::size_t letter_count(const std::string& w, char x) {
  return static_cast<std::size_t>(std::count(w.begin(), w.end(), x));
}

WordInvariants word_invariants(const std::string& u, const std::string& alphabet) {
  WordInvariants inv;
  for (char x : alphabet) {
    std::size_t first_x = u.find(x);
    std::size_t last_x = u.rfind(x);
    for (char y : alphabet) {
      if (y != x) {
        CountOrInf flat, sharp;
        if (first_x == std::string::npos) {
          flat.infinite = sharp.infinite = true;
        } else {
          flat.count = static_cast<long>(
              std::count(u.begin(), u.begin() + static_cast<long>(first_x), y));
          sharp.count = static_cast<long>(
              std::count(u.begin() + static_cast<long>(last_x) + 1, u.end(), y));
        }
        inv.flat[{x, y}] = flat;
        inv.sharp[{x, y}] = sharp;
      }
      // inner words w with xwy a factor, w avoiding both x and y; from each
      // occurrence of x, the stretch to the next x or y qualifies only when
      // it ends at y
      std::set<std::string> candidates;
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] != x) continue;
        for (std::size_t j = i + 1; j < u.size(); ++j) {
          if (u[j] == y) {
            candidates.insert(u.substr(i + 1, j - i - 1));
            break;
          }
          if (u[j] == x) break;
        }
      }
      std::set<std::string> minimal;
      for (const auto& w : candidates) {
        bool is_min = true;
        for (const auto& w2 : candidates)
          if (w2 != w && is_subword(w2, w)) {
            is_min = false;
            break;
          }
        if (is_min) minimal.insert(w);
      }
      inv.minfactors[{x, y}] = std::move(minimal);
    }
  }
  return inv;
}

AgreeReport agree(const std::string& u, const std::string& v,
                  const std::string& alphabet) {
  AgreeReport rep;
  rep.cube_subwords = true;
  for (char x : alphabet)
    if (letter_count(u, x) < 3 || letter_count(v, x) < 3) rep.cube_subwords = false;
  WordInvariants iu = word_invariants(u, alphabet);
  WordInvariants iv = word_invariants(v, alphabet);
  rep.flat_sharp_equal = iu.flat == iv.flat && iu.sharp == iv.sharp;
  rep.minfactors_equal = iu.minfactors == iv.minfactors;
  rep.agree = rep.cube_subwords && rep.flat_sharp_equal && rep.minfactors_equal;
  return rep;
}

}  // namespace fsw
