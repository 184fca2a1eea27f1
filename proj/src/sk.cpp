#include "fsw/sk.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "fsw/synthesis.hpp"

namespace fsw {

namespace {

struct Run {
  char letter;
  int count;
};

// x may sit directly before y without creating a dead factor: strictly
// below, or both at the cap
bool chain_ok(int x, int y, int k) { return x < y || (x == k && y == k); }

std::vector<Run> word_runs(const std::string& word) {
  if (word.empty()) throw Error("empty word");
  std::vector<Run> runs;
  for (char c : word) {
    if (c != 'a' && c != 'b')
      throw Error(std::string("unexpected letter '") + c + "', alphabet is {a,b}");
    if (!runs.empty() && runs.back().letter == c)
      ++runs.back().count;
    else
      runs.push_back({c, 1});
  }
  return runs;
}

CanonicalWord sk_from_runs(std::vector<Run> runs, int k) {
  CanonicalWord w;
  w.variant = SkVariant::Sk;
  w.k = k;
  for (auto& r : runs) r.count = std::min(r.count, k);
  // a^k b^k a^k = a^k and its mirror: three capped runs collapse to one
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (std::size_t i = 0; i + 2 < runs.size(); ++i) {
      if (runs[i].count == k && runs[i + 1].count == k && runs[i + 2].count == k) {
        runs.erase(runs.begin() + i + 1, runs.begin() + i + 3);
        shrunk = true;
        break;
      }
    }
  }
  // a^n b^n a = 0 and its mirror for n below the cap: every run that still
  // has two successors must chain into its right neighbour
  for (std::size_t t = 0; t + 2 < runs.size(); ++t) {
    if (!chain_ok(runs[t].count, runs[t + 1].count, k)) {
      w.zero = true;
      return w;
    }
  }
  if (runs.front().letter == 'b') w.gammas.push_back(0);
  for (const auto& r : runs) w.gammas.push_back(r.count);
  if (w.gammas.size() % 2) w.gammas.push_back(0);
  return w;
}

std::vector<Run> gamma_runs(const CanonicalWord& w) {
  std::vector<Run> runs;
  for (std::size_t i = 0; i < w.gammas.size(); ++i)
    if (w.gammas[i] > 0)
      runs.push_back({i % 2 == 0 ? 'a' : 'b', w.gammas[i]});
  return runs;
}

CanonicalWord skp_from_betas(std::vector<int> betas, int k, int p) {
  CanonicalWord w;
  w.variant = SkVariant::Skp;
  w.k = k;
  w.p = p;
  // an interior empty b-block means two adjacent a's, and a^2 = 0
  for (std::size_t i = 1; i + 1 < betas.size(); ++i)
    if (betas[i] == 0) {
      w.zero = true;
      return w;
    }
  for (auto& b : betas) b = std::min(b, k);
  // b^k (a b^k)^p = b^k: p+1 capped blocks in a row collapse to one
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (std::size_t i = 0; i + static_cast<std::size_t>(p) < betas.size(); ++i) {
      bool all = true;
      for (int d = 0; d <= p; ++d)
        if (betas[i + d] != k) {
          all = false;
          break;
        }
      if (all) {
        betas.erase(betas.begin() + i + 1, betas.begin() + i + 1 + p);
        shrunk = true;
        break;
      }
    }
  }
  // b^n a b^n a = 0 for n below the cap: chain condition on every block
  // pair except the final one
  int l = static_cast<int>(betas.size()) - 1;
  for (int i = 0; i + 2 <= l; ++i)
    if (!chain_ok(betas[i], betas[i + 1], k)) {
      w.zero = true;
      return w;
    }
  w.betas = std::move(betas);
  return w;
}

std::vector<int> word_betas(const std::string& word) {
  if (word.empty()) throw Error("empty word");
  std::vector<int> betas{0};
  for (char c : word) {
    if (c == 'a')
      betas.push_back(0);
    else if (c == 'b')
      ++betas.back();
    else
      throw Error(std::string("unexpected letter '") + c + "', alphabet is {a,b}");
  }
  return betas;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void check_params(int k, SkVariant variant, int p) {
  if (variant == SkVariant::Sk) {
    if (k < 1) throw Error("k must be at least 1");
  } else {
    if (k < 2) throw Error("k must be at least 2");
    if (!is_prime(p)) throw Error("p must be prime");
  }
}

FiniteSemigroup left_zero_pair() {
  FiniteSemigroup s;
  s.names = {"a", "b"};
  s.table = {0, 0, 1, 1};
  s.generators = {0, 1};
  s.convention = "left zero";
  return s;
}

}  // namespace

std::string CanonicalWord::display() const {
  if (zero) return "0";
  std::string out;
  auto put = [&](const std::string& piece) {
    if (!out.empty()) out += ' ';
    out += piece;
  };
  auto run = [](char letter, int count) {
    return std::string(1, letter) + "^" + std::to_string(count);
  };
  if (variant == SkVariant::Sk) {
    for (std::size_t i = 0; i < gammas.size(); ++i)
      if (gammas[i] > 0) put(run(i % 2 == 0 ? 'a' : 'b', gammas[i]));
  } else {
    if (betas[0] > 0) put(run('b', betas[0]));
    for (std::size_t i = 1; i < betas.size(); ++i) {
      put("a");
      if (betas[i] > 0) put(run('b', betas[i]));
    }
  }
  return out;
}

std::string CanonicalWord::as_word() const {
  if (zero) throw Error("zero has no word form");
  std::string out;
  if (variant == SkVariant::Sk) {
    for (std::size_t i = 0; i < gammas.size(); ++i)
      out += std::string(static_cast<std::size_t>(gammas[i]), i % 2 == 0 ? 'a' : 'b');
  } else {
    out += std::string(static_cast<std::size_t>(betas[0]), 'b');
    for (std::size_t i = 1; i < betas.size(); ++i) {
      out += 'a';
      out += std::string(static_cast<std::size_t>(betas[i]), 'b');
    }
  }
  return out;
}

std::size_t CanonicalWordHash::operator()(const CanonicalWord& w) const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&](std::size_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::size_t>(w.variant));
  mix(w.zero ? 1 : 0);
  mix(static_cast<std::size_t>(w.k));
  mix(static_cast<std::size_t>(w.p));
  mix(w.gammas.size());
  for (int g : w.gammas) mix(static_cast<std::size_t>(g));
  for (int b : w.betas) mix(static_cast<std::size_t>(b));
  return h;
}

CanonicalWord sk_zero(int k, SkVariant variant, int p) {
  check_params(k, variant, p);
  CanonicalWord w;
  w.variant = variant;
  w.zero = true;
  w.k = k;
  w.p = variant == SkVariant::Skp ? p : 0;
  return w;
}

CanonicalWord normalize(const std::string& word, int k, SkVariant variant, int p) {
  check_params(k, variant, p);
  if (variant == SkVariant::Sk) return sk_from_runs(word_runs(word), k);
  return skp_from_betas(word_betas(word), k, p);
}

CanonicalWord concat(const CanonicalWord& u, const CanonicalWord& v) {
  if (u.variant != v.variant || u.k != v.k || u.p != v.p)
    throw Error("operands come from different presentations");
  if (u.zero) return u;
  if (v.zero) return v;
  if (u.variant == SkVariant::Sk) {
    std::vector<Run> runs = gamma_runs(u);
    std::vector<Run> vr = gamma_runs(v);
    std::size_t start = 0;
    if (runs.back().letter == vr.front().letter) {
      runs.back().count += vr.front().count;
      start = 1;
    }
    for (std::size_t i = start; i < vr.size(); ++i) runs.push_back(vr[i]);
    return sk_from_runs(std::move(runs), u.k);
  }
  std::vector<int> betas = u.betas;
  betas.back() += v.betas[0];
  betas.insert(betas.end(), v.betas.begin() + 1, v.betas.end());
  return skp_from_betas(std::move(betas), u.k, u.p);
}

bool is_canonical(const CanonicalWord& w) {
  if (w.variant == SkVariant::Sk) {
    if (w.k < 1 || w.p != 0 || !w.betas.empty()) return false;
    if (w.zero) return w.gammas.empty();
    std::size_t n = w.gammas.size();
    if (n < 2 || n % 2) return false;
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (w.gammas[i] < 0 || w.gammas[i] > w.k) return false;
      if (i > 0 && i + 1 < n && w.gammas[i] == 0) return false;
      if (w.gammas[i] > 0) any = true;
    }
    if (!any) return false;
    std::vector<Run> runs = gamma_runs(w);
    for (std::size_t t = 0; t + 2 < runs.size(); ++t)
      if (!chain_ok(runs[t].count, runs[t + 1].count, w.k)) return false;
    for (std::size_t t = 0; t + 2 < runs.size(); ++t)
      if (runs[t].count == w.k && runs[t + 1].count == w.k && runs[t + 2].count == w.k)
        return false;
    return true;
  }
  if (w.k < 2 || !is_prime(w.p) || !w.gammas.empty()) return false;
  if (w.zero) return w.betas.empty();
  if (w.betas.empty()) return false;
  int l = static_cast<int>(w.betas.size()) - 1;
  for (int i = 0; i <= l; ++i) {
    if (w.betas[i] < 0 || w.betas[i] > w.k) return false;
    if (i > 0 && i < l && w.betas[i] == 0) return false;
  }
  if (l == 0 && w.betas[0] == 0) return false;
  for (int i = 0; i + 2 <= l; ++i)
    if (!chain_ok(w.betas[i], w.betas[i + 1], w.k)) return false;
  for (int i = 0; i + w.p <= l; ++i) {
    bool all = true;
    for (int d = 0; d <= w.p; ++d)
      if (w.betas[i + d] != w.k) {
        all = false;
        break;
      }
    if (all) return false;
  }
  return true;
}

std::vector<CanonicalWord> enumerate_canonical(int k, SkVariant variant, int p) {
  check_params(k, variant, p);
  std::vector<CanonicalWord> out;
  if (variant == SkVariant::Sk) {
    // nonzero forms have at most k+1 chained runs plus one free run
    for (int m = 1; m <= k + 2; ++m) {
      for (char first : {'a', 'b'}) {
        std::vector<Run> runs(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
          runs[i].letter = ((i % 2 == 0) == (first == 'a')) ? 'a' : 'b';
        std::function<void(int)> dfs = [&](int i) {
          if (i == m) {
            out.push_back(sk_from_runs(runs, k));
            return;
          }
          for (int c = 1; c <= k; ++c) {
            if (i >= 1 && i <= m - 2 && !chain_ok(runs[i - 1].count, c, k)) continue;
            if (i >= 2 && c == k && runs[i - 1].count == k && runs[i - 2].count == k)
              continue;
            runs[i].count = c;
            dfs(i + 1);
          }
        };
        dfs(0);
      }
    }
  } else {
    for (int l = 0; l <= k + p; ++l) {
      std::vector<int> betas(static_cast<std::size_t>(l) + 1);
      std::function<void(int)> dfs = [&](int i) {
        if (i == l + 1) {
          out.push_back(skp_from_betas(betas, k, p));
          return;
        }
        int low = (i == 0 || i == l) ? 0 : 1;
        for (int c = low; c <= k; ++c) {
          if (l == 0 && c == 0) continue;                  // empty word
          if (i >= 1 && i <= l - 1 && !chain_ok(betas[i - 1], c, k)) continue;
          if (c == k && i >= p) {
            bool all = true;
            for (int d = 1; d <= p; ++d)
              if (betas[i - d] != k) {
                all = false;
                break;
              }
            if (all) continue;
          }
          betas[i] = c;
          dfs(i + 1);
        }
      };
      dfs(0);
    }
  }
  return out;
}

SkBuild build_sk(int k, SkVariant variant, int p, SkWhich which) {
  check_params(k, variant, p);
  if (which == SkWhich::R) throw Error("use build_r for the fiber member");
  SkBuild out;
  for (auto& w : enumerate_canonical(k, variant, p)) {
    bool keep = true;
    if (which == SkWhich::T) {
      if (variant == SkVariant::Sk)
        keep = w.gammas[0] != 0;
      else
        keep = (static_cast<int>(w.betas.size()) - 1) % p == 0;
    }
    if (keep) out.elems.push_back(std::move(w));
  }
  out.elems.push_back(sk_zero(k, variant, p));
  out.zero_index = static_cast<int>(out.elems.size()) - 1;

  std::unordered_map<CanonicalWord, int, CanonicalWordHash> index;
  for (std::size_t i = 0; i < out.elems.size(); ++i)
    index.emplace(out.elems[i], static_cast<int>(i));

  int n = static_cast<int>(out.elems.size());
  FiniteSemigroup& sg = out.sg;
  sg.names.reserve(static_cast<std::size_t>(n));
  for (const auto& w : out.elems) sg.names.push_back(w.display());
  sg.table.assign(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CanonicalWord prod = concat(out.elems[i], out.elems[j]);
      auto it = index.find(prod);
      if (it == index.end())
        throw NotClosed(i, j, "product " + prod.display() + " left the member");
      sg.table[static_cast<std::size_t>(i) * n + j] = it->second;
    }
  }
  sg.convention = "semigroup";

  CanonicalWord wa = normalize("a", k, variant, p);
  CanonicalWord wb = normalize("b", k, variant, p);
  auto ia = index.find(wa);
  auto ib = index.find(wb);
  out.a_index = ia != index.end() ? ia->second : -1;
  out.b_index = ib != index.end() ? ib->second : -1;
  if (which == SkWhich::S) {
    sg.generators = {out.a_index, out.b_index};
    // at the lowest cap the letters alone never reach zero: aba folds back
    // to a, so zero has to be adjoined as a generator
    if (variant == SkVariant::Sk && k == 1) sg.generators.push_back(out.zero_index);
  }
  validate(sg);
  return out;
}

RBuild build_r(int k, SkVariant variant, int p,
               const std::vector<std::pair<std::string, std::string>>& generator_override) {
  check_params(k, variant, p);
  // for k = 1 the zero is not a product of the generators, so the
  // idempotent fibers cannot be copies of T_1
  if (k < 2) throw Error("companion construction needs k >= 2");
  SkBuild base = build_sk(k, variant, p, SkWhich::S);
  RBuild out;
  out.base = base.sg;
  out.companion = variant == SkVariant::Sk ? left_zero_pair() : cyclic_group(p);
  FiniteSemigroup prod = direct_product(out.base, out.companion);

  std::vector<std::pair<std::string, std::string>> pairs = generator_override;
  if (pairs.empty()) {
    if (variant == SkVariant::Sk)
      pairs = {{"a", "a"}, {"b", "b"}};
    else
      pairs = {{"a", "1"}, {"b", "0"}};
  }
  auto find_name = [](const FiniteSemigroup& s, const std::string& name) {
    for (int i = 0; i < s.size(); ++i)
      if (s.names[i] == name) return i;
    throw Error("no element named '" + name + "'");
  };
  // base elements may be named by a plain word over {a,b} instead of
  // their display form
  auto find_base = [&](const std::string& name) {
    for (int i = 0; i < out.base.size(); ++i)
      if (out.base.names[static_cast<std::size_t>(i)] == name) return i;
    bool plain = !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
                   return c == 'a' || c == 'b';
                 });
    if (plain) {
      CanonicalWord cw = normalize(name, k, variant, p);
      for (std::size_t i = 0; i < base.elems.size(); ++i)
        if (base.elems[i] == cw) return static_cast<int>(i);
    }
    throw Error("no element named '" + name + "'");
  };
  int m = out.companion.size();
  std::vector<int> seeds;
  for (const auto& [bn, cn] : pairs)
    seeds.push_back(find_base(bn) * m + find_name(out.companion, cn));

  std::vector<int> closure = closure_in_table(prod, seeds);
  out.r = subsemigroup(prod, closure);
  std::vector<int> pos(static_cast<std::size_t>(prod.size()), -1);
  for (std::size_t i = 0; i < closure.size(); ++i) pos[closure[i]] = static_cast<int>(i);
  for (int x : closure) {
    out.pi1.push_back(x / m);
    out.pi2.push_back(x % m);
  }
  for (int sd : seeds) out.generator_indices.push_back(pos[sd]);
  out.r.generators = out.generator_indices;
  out.r.convention = "fiber product";
  validate(out.r);
  return out;
}

MalcevReport malcev_witness_check(
    int k, SkVariant variant, int p,
    const std::vector<std::pair<std::string, std::string>>& generator_override) {
  MalcevReport rep;
  RBuild rb = build_r(k, variant, p, generator_override);
  SkBuild tb = build_sk(k, variant, p, SkWhich::T);
  auto stage = [&](const std::string& name, bool ok, std::string detail) {
    rep.stages.push_back({name, ok, std::move(detail)});
  };

  std::vector<bool> hit(static_cast<std::size_t>(rb.companion.size()), false);
  for (int c : rb.pi2) hit[static_cast<std::size_t>(c)] = true;
  bool onto2 = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  stage("pi2-onto", onto2, "second projection covers the companion");

  HomCheck h2 = hom_check(rb.r, rb.companion, rb.pi2);
  stage("pi2-hom", h2.ok,
        h2.ok ? ""
              : "violated at (" + rb.r.names[h2.a] + ", " + rb.r.names[h2.b] + ")");
  HomCheck h1 = hom_check(rb.r, rb.base, rb.pi1);
  stage("pi1-hom", h1.ok,
        h1.ok ? ""
              : "violated at (" + rb.r.names[h1.a] + ", " + rb.r.names[h1.b] + ")");
  stage("pi1-onto", h1.onto, "base has " + std::to_string(rb.base.size()) + " elements");

  for (int e : idempotents(rb.companion)) {
    std::string nm = "fiber-" + rb.companion.names[static_cast<std::size_t>(e)];
    std::vector<int> fiber;
    for (std::size_t i = 0; i < rb.pi2.size(); ++i)
      if (rb.pi2[i] == e) fiber.push_back(static_cast<int>(i));
    std::string detail =
        "|fiber|=" + std::to_string(fiber.size()) + " |T|=" + std::to_string(tb.sg.size());
    if (fiber.empty()) {
      stage(nm + "-iso", false, detail + ", fiber is empty");
      continue;
    }
    try {
      FiniteSemigroup fs = subsemigroup(rb.r, fiber);
      auto iso = find_isomorphism(fs, tb.sg);
      stage(nm + "-iso", iso.has_value(), detail);
    } catch (const NotClosed&) {
      stage(nm + "-closed", false, detail + ", fiber is not closed");
    }
  }
  rep.ok = std::all_of(rep.stages.begin(), rep.stages.end(),
                       [](const WitnessStage& s) { return s.ok; });
  return rep;
}

std::vector<std::string> separating_sequence(const std::vector<long>& s,
                                             SkVariant variant, int p, int m) {
  if (m < 1) throw Error("need at least one term");
  if (variant == SkVariant::Skp && p < 2) throw Error("p must be at least 2");
  std::size_t need = variant == SkVariant::Sk ? 2u * static_cast<std::size_t>(m)
                                              : static_cast<std::size_t>(p) * m;
  if (s.size() < need)
    throw Error("sequence too short: need " + std::to_string(need) + " entries");
  const long max_len = 1L << 22;
  for (long v : s)
    if (v < 0 || v > max_len) throw Error("entries must be in [0, 2^22]");
  std::vector<std::string> out;
  std::string w;
  if (variant == SkVariant::Sk) {
    for (int i = 1; i <= m; ++i) {
      long ea = s[2 * i - 2], eb = s[2 * i - 1];
      if (static_cast<long>(w.size()) + ea + eb > max_len)
        throw BudgetExceeded("separating words too long");
      w += std::string(static_cast<std::size_t>(ea), 'a');
      w += std::string(static_cast<std::size_t>(eb), 'b');
      out.push_back(w);
    }
  } else {
    for (int i = 1; i <= m; ++i) {
      for (int x = p * (i - 1) + 1; x <= p * i; ++x) {
        long eb = p * s[x - 1];
        if (static_cast<long>(w.size()) + 1 + eb > max_len)
          throw BudgetExceeded("separating words too long");
        w += 'a';
        w += std::string(static_cast<std::size_t>(eb), 'b');
      }
      out.push_back(w);
    }
  }
  return out;
}

SeparationReport separation_check(const std::vector<long>& s, const std::vector<long>& t,
                                  SkVariant variant, int p) {
  if (variant == SkVariant::Skp && !is_prime(p)) throw Error("p must be prime");
  std::size_t len = std::min(s.size(), t.size());
  std::size_t d = len;
  for (std::size_t i = 0; i < len; ++i)
    if (s[i] != t[i]) {
      d = i;
      break;
    }
  if (d == len) throw Error("sequences agree on their common prefix");

  SeparationReport rep;
  rep.j = static_cast<int>(d) + 1;
  long lo = std::min(s[d], t[d]);
  bool s_small = s[d] < t[d];
  if (lo + 1 > (1L << 20)) throw BudgetExceeded("differing entry too large");
  int k = variant == SkVariant::Sk ? static_cast<int>(lo) + 1
                                   : p * (static_cast<int>(lo) + 1);
  rep.k = k;
  int p_eff = variant == SkVariant::Sk ? 0 : p;

  int step = variant == SkVariant::Sk ? 2 : p;
  int terms = static_cast<int>(len) / step;
  if (terms < static_cast<int>(d) / step + 2)
    throw Error("not enough entries past the first difference");
  auto words_s = separating_sequence(s, variant, p, terms);
  auto words_t = separating_sequence(t, variant, p, terms);
  std::vector<CanonicalWord> is, it;
  for (int i = 0; i < terms; ++i) {
    is.push_back(normalize(words_s[static_cast<std::size_t>(i)], k, variant, p_eff));
    it.push_back(normalize(words_t[static_cast<std::size_t>(i)], k, variant, p_eff));
  }
  int st = terms;                              // 1-based first index of the stable tail
  while (st > 1 && is[static_cast<std::size_t>(st) - 2] == is.back() &&
         it[static_cast<std::size_t>(st) - 2] == it.back())
    --st;
  if (st >= terms) throw NotStabilized(terms);
  rep.stabilized_at = st;
  rep.image_s = is.back();
  rep.image_t = it.back();
  rep.separated = !(rep.image_s == rep.image_t);

  // stated stabilized forms, valid when the entries grow strictly
  const std::vector<long>& u = s_small ? s : t;
  int j = rep.j;
  bool entries_pos = true;
  for (int i = 0; i < j; ++i)
    if (u[static_cast<std::size_t>(i)] < 1) entries_pos = false;
  CanonicalWord exp_u, exp_v;
  if (variant == SkVariant::Sk) {
    std::vector<Run> ru, rv;
    for (int i = 1; i <= j; ++i)
      ru.push_back({i % 2 ? 'a' : 'b',
                    static_cast<int>(std::min<long>(u[static_cast<std::size_t>(i) - 1], k))});
    rv.assign(ru.begin(), ru.end() - 1);
    if (j % 2) {
      ru.push_back({'b', k});
      rv.push_back({'a', k});
      rv.push_back({'b', k});
    } else {
      ru.push_back({'a', k});
      ru.push_back({'b', k});
      rv.push_back({'b', k});
    }
    exp_u = entries_pos ? sk_from_runs(ru, k) : sk_zero(k, variant, p_eff);
    exp_v = entries_pos ? sk_from_runs(rv, k) : sk_zero(k, variant, p_eff);
  } else {
    int ell = ((-j) % p + p) % p;
    if (ell == 0) ell = p;
    std::vector<int> bu{0}, bv{0};
    for (int i = 1; i <= j; ++i)
      bu.push_back(static_cast<int>(
          std::min<long>(p * u[static_cast<std::size_t>(i) - 1], k)));
    bv.assign(bu.begin(), bu.end() - 1);
    for (int r = 0; r < ell; ++r) bu.push_back(k);
    for (int r = 0; r < ell + 1; ++r) bv.push_back(k);
    exp_u = skp_from_betas(bu, k, p);
    exp_v = skp_from_betas(bv, k, p);
  }
  if (s_small)
    rep.matches_closed_form =
        entries_pos && rep.image_s == exp_u && rep.image_t == exp_v;
  else
    rep.matches_closed_form =
        entries_pos && rep.image_s == exp_v && rep.image_t == exp_u;
  return rep;
}

EvidenceReport evidence_check(const std::string& u, const std::string& v,
                              const std::string& alphabet, int k_max,
                              std::uint64_t budget) {
  if (u.empty() || v.empty()) throw Error("words must be nonempty");
  if (alphabet.empty()) throw Error("alphabet must be nonempty");
  EvidenceReport rep;
  rep.agreement = agree(u, v, alphabet);
  auto positions = [&](const std::string& w) {
    std::vector<int> out;
    for (char c : w) {
      std::size_t i = alphabet.find(c);
      if (i == std::string::npos)
        throw Error(std::string("letter '") + c + "' is outside the alphabet");
      out.push_back(static_cast<int>(i));
    }
    return out;
  };
  std::vector<int> pu = positions(u), pv = positions(v);
  std::uint64_t cost = 0;
  rep.all_equal = true;
  for (int k = 2; k <= k_max; ++k) {
    SkBuild tb = build_sk(k, SkVariant::Sk, 0, SkWhich::T);
    const FiniteSemigroup& T = tb.sg;
    int n = T.size();
    int c = static_cast<int>(alphabet.size());
    std::vector<int> asg(static_cast<std::size_t>(c), 0);
    bool eq = true;
    std::uint64_t cnt = 0;
    while (true) {
      cost += pu.size() + pv.size();
      if (cost > budget)
        throw BudgetExceeded("evidence scan passed " + std::to_string(budget) +
                             " operations");
      int xu = asg[static_cast<std::size_t>(pu[0])];
      for (std::size_t i = 1; i < pu.size(); ++i)
        xu = T.mul(xu, asg[static_cast<std::size_t>(pu[i])]);
      int xv = asg[static_cast<std::size_t>(pv[0])];
      for (std::size_t i = 1; i < pv.size(); ++i)
        xv = T.mul(xv, asg[static_cast<std::size_t>(pv[i])]);
      ++cnt;
      if (xu != xv) {
        eq = false;
        break;
      }
      int pos = c - 1;
      while (pos >= 0 && asg[static_cast<std::size_t>(pos)] == n - 1) {
        asg[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++asg[static_cast<std::size_t>(pos)];
    }
    rep.per_k.push_back({k, eq, cnt});
    if (!eq) rep.all_equal = false;
  }
  return rep;
}

}  // namespace fsw
