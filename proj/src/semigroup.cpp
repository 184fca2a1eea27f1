#include "fsw/semigroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace fsw {

namespace {

// matrix view of the sparse strict order, diagonal included
std::vector<std::vector<bool>> order_matrix(const FiniteSemigroup& s) {
  int n = s.size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) m[i][i] = true;
  for (auto [a, b] : s.order) m[a][b] = true;
  return m;
}

struct Preorder {
  std::vector<int> cls;                      // class id per node
  int num = 0;
  std::vector<std::vector<bool>> leq;        // leq[c1][c2]: c1 below-or-equal c2
};

// SCCs plus the reachability order of the condensation. cls ids are
// renumbered in first-node order so results are deterministic.
Preorder reach_preorder(int n, const std::vector<std::vector<int>>& adj) {
  std::vector<int> comp(n, -1), low(n), disc(n, -1), stk;
  std::vector<bool> on_stack(n, false);
  int timer = 0, ncomp = 0;

  // iterative Tarjan; frame = (node, next child position)
  std::vector<std::pair<int, std::size_t>> frames;
  for (int start = 0; start < n; ++start) {
    if (disc[start] != -1) continue;
    frames.push_back({start, 0});
    while (!frames.empty()) {
      auto& [v, ci] = frames.back();
      if (ci == 0) {
        disc[v] = low[v] = timer++;
        stk.push_back(v);
        on_stack[v] = true;
      }
      if (ci < adj[v].size()) {
        int w = adj[v][ci++];
        if (disc[w] == -1) {
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        if (low[v] == disc[v]) {
          while (true) {
            int w = stk.back();
            stk.pop_back();
            on_stack[w] = false;
            comp[w] = ncomp;
            if (w == v) break;
          }
          ++ncomp;
        }
        frames.pop_back();
        if (!frames.empty()) {
          int parent = frames.back().first;
          low[parent] = std::min(low[parent], low[v]);
        }
      }
    }
  }

  // renumber components in first-element order
  std::vector<int> renum(ncomp, -1);
  int next = 0;
  Preorder p;
  p.cls.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (renum[comp[v]] == -1) renum[comp[v]] = next++;
    p.cls[v] = renum[comp[v]];
  }
  p.num = ncomp;

  // descendants of each class by memoized DFS over the condensation
  std::vector<std::vector<int>> cadj(ncomp);
  for (int v = 0; v < n; ++v)
    for (int w : adj[v])
      if (p.cls[v] != p.cls[w]) cadj[p.cls[v]].push_back(p.cls[w]);
  for (auto& row : cadj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  std::vector<std::vector<bool>> desc(ncomp);
  std::vector<int> state(ncomp, 0);
  std::vector<int> order_stack;
  for (int c = 0; c < ncomp; ++c) {
    if (state[c]) continue;
    order_stack.push_back(c);
    while (!order_stack.empty()) {
      int u = order_stack.back();
      if (state[u] == 0) {
        state[u] = 1;
        for (int w : cadj[u])
          if (state[w] == 0) order_stack.push_back(w);
      } else {
        order_stack.pop_back();
        if (state[u] == 2) continue;
        state[u] = 2;
        desc[u].assign(ncomp, false);
        desc[u][u] = true;
        for (int w : cadj[u])
          for (int x = 0; x < ncomp; ++x)
            if (desc[w][x]) desc[u][x] = true;
      }
    }
  }
  // class c1 lies below c2 when c1 is reachable from c2
  p.leq.assign(ncomp, std::vector<bool>(ncomp, false));
  for (int c2 = 0; c2 < ncomp; ++c2)
    for (int c1 = 0; c1 < ncomp; ++c1)
      if (desc[c2][c1]) p.leq[c1][c2] = true;
  return p;
}

std::vector<int> effective_generators(const FiniteSemigroup& s) {
  if (!s.generators.empty()) return s.generators;
  std::vector<int> all(s.size());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

}  // namespace

bool FiniteSemigroup::leq(int a, int b) const {
  if (a == b) return true;
  for (auto [x, y] : order)
    if (x == a && y == b) return true;
  return false;
}

int FiniteSemigroup::mul_word(const std::vector<int>& word) const {
  if (word.empty()) {
    if (identity) return *identity;
    throw Error("empty word needs an identity");
  }
  int acc = word[0];
  for (std::size_t i = 1; i < word.size(); ++i) acc = mul(acc, word[i]);
  return acc;
}

void validate(const FiniteSemigroup& s) {
  int n = s.size();
  if (n == 0) throw Error("empty semigroup");
  if (s.table.size() != static_cast<std::size_t>(n) * n)
    throw Error("table size mismatch");
  for (int v : s.table)
    if (v < 0 || v >= n) throw Error("table entry out of range");

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = s.mul(a, b);
      for (int c = 0; c < n; ++c) {
        if (s.mul(ab, c) != s.mul(a, s.mul(b, c)))
          throw NonAssociative(a, b, c,
                               "(" + s.names[a] + " " + s.names[b] + ") " +
                                   s.names[c] + " != " + s.names[a] + " (" +
                                   s.names[b] + " " + s.names[c] + ")");
      }
    }

  if (!s.generators.empty()) {
    for (int g : s.generators)
      if (g < 0 || g >= n) throw Error("generator index out of range");
    auto closed = closure_in_table(s, s.generators);
    if (static_cast<int>(closed.size()) != n)
      throw GeneratorsNotGenerating(std::to_string(closed.size()) + " of " +
                                    std::to_string(n) + " elements reached");
  }

  if (s.identity) {
    int e = *s.identity;
    if (e < 0 || e >= n) throw Error("identity index out of range");
    for (int x = 0; x < n; ++x)
      if (s.mul(e, x) != x || s.mul(x, e) != x)
        throw Error("declared identity is not neutral at " + s.names[x]);
  }

  if (s.has_order) {
    auto m = order_matrix(s);
    for (auto [a, b] : s.order) {
      if (a < 0 || a >= n || b < 0 || b >= n) throw Error("order pair out of range");
      if (a != b && m[b][a])
        throw OrderNotStable("antisymmetry fails on " + s.names[a] + "," + s.names[b]);
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (!m[a][b]) continue;
        for (int c = 0; c < n; ++c)
          if (m[b][c] && !m[a][c])
            throw OrderNotStable("transitivity fails via " + s.names[b]);
      }
    // compatibility with multiplication on both sides gives stability
    // (a<=b, c<=d imply ac <= bc <= bd by transitivity)
    for (auto [a, b] : s.order)
      for (int c = 0; c < n; ++c) {
        if (!m[s.mul(a, c)][s.mul(b, c)])
          throw OrderNotStable("right multiplication by " + s.names[c] +
                               " breaks " + s.names[a] + " <= " + s.names[b]);
        if (!m[s.mul(c, a)][s.mul(c, b)])
          throw OrderNotStable("left multiplication by " + s.names[c] +
                               " breaks " + s.names[a] + " <= " + s.names[b]);
      }
  }
}

std::vector<int> idempotents(const FiniteSemigroup& s) {
  std::vector<int> out;
  for (int x = 0; x < s.size(); ++x)
    if (s.mul(x, x) == x) out.push_back(x);
  return out;
}

std::optional<int> zero_element(const FiniteSemigroup& s) {
  for (int z = 0; z < s.size(); ++z) {
    bool ok = true;
    for (int x = 0; x < s.size() && ok; ++x)
      if (s.mul(z, x) != z || s.mul(x, z) != z) ok = false;
    if (ok) return z;
  }
  return std::nullopt;
}

IndexPeriod index_period(const FiniteSemigroup& s, int x) {
  std::vector<int> seen_at(s.size(), -1);
  int cur = x;
  int step = 1;                              // cur = x^step
  while (true) {
    if (seen_at[cur] != -1) return {seen_at[cur], step - seen_at[cur]};
    seen_at[cur] = step;
    cur = s.mul(cur, x);
    ++step;
  }
}

int omega_power(const FiniteSemigroup& s, int x) {
  // walk into the cycle of x, x^2, ... and return its unique idempotent
  auto [index, period] = index_period(s, x);
  (void)period;
  int cur = x;
  for (int i = 1; i < index; ++i) cur = s.mul(cur, x);
  while (s.mul(cur, cur) != cur) cur = s.mul(cur, x);
  return cur;
}

std::vector<int> omega_table(const FiniteSemigroup& s) {
  std::vector<int> t(s.size());
  for (int x = 0; x < s.size(); ++x) t[x] = omega_power(s, x);
  return t;
}

GreenData green(const FiniteSemigroup& s) {
  int n = s.size();
  auto gens = effective_generators(s);

  std::vector<std::vector<int>> radj(n), ladj(n), jadj(n);
  for (int x = 0; x < n; ++x) {
    for (int g : gens) {
      radj[x].push_back(s.mul(x, g));
      ladj[x].push_back(s.mul(g, x));
    }
    auto dedup = [](std::vector<int>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedup(radj[x]);
    dedup(ladj[x]);
    jadj[x] = radj[x];
    jadj[x].insert(jadj[x].end(), ladj[x].begin(), ladj[x].end());
    dedup(jadj[x]);
  }

  Preorder pr = reach_preorder(n, radj);
  Preorder pl = reach_preorder(n, ladj);
  Preorder pj = reach_preorder(n, jadj);

  GreenData g;
  g.r = pr.cls;
  g.num_r = pr.num;
  g.r_leq = std::move(pr.leq);
  g.l = pl.cls;
  g.num_l = pl.num;
  g.l_leq = std::move(pl.leq);
  g.j = pj.cls;
  g.num_j = pj.num;
  g.j_leq = std::move(pj.leq);

  // H-classes: intersection of the R- and L-partitions
  std::map<std::pair<int, int>, int> hid;
  g.h.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    auto key = std::make_pair(g.r[x], g.l[x]);
    auto it = hid.find(key);
    if (it == hid.end()) it = hid.emplace(key, static_cast<int>(hid.size())).first;
    g.h[x] = it->second;
  }
  g.num_h = static_cast<int>(hid.size());
  g.h_leq.assign(g.num_h, std::vector<bool>(g.num_h, false));
  for (auto& [k1, c1] : hid)
    for (auto& [k2, c2] : hid)
      g.h_leq[c1][c2] = g.r_leq[k1.first][k2.first] && g.l_leq[k1.second][k2.second];

  // D as the join of R and L via union-find over elements
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  std::vector<int> first_of_r(g.num_r, -1), first_of_l(g.num_l, -1);
  for (int x = 0; x < n; ++x) {
    if (first_of_r[g.r[x]] == -1)
      first_of_r[g.r[x]] = x;
    else
      parent[find(x)] = find(first_of_r[g.r[x]]);
    if (first_of_l[g.l[x]] == -1)
      first_of_l[g.l[x]] = x;
    else
      parent[find(x)] = find(first_of_l[g.l[x]]);
  }
  g.d.assign(n, -1);
  std::vector<int> droot_id(n, -1);
  for (int x = 0; x < n; ++x) {
    int r = find(x);
    if (droot_id[r] == -1) droot_id[r] = g.num_d++;
    g.d[x] = droot_id[r];
  }
  g.d_regular.assign(g.num_d, false);
  for (int e : idempotents(s)) g.d_regular[g.d[e]] = true;
  return g;
}

bool leq_r_by_ideal(const FiniteSemigroup& s, int a, int b) {
  if (a == b) return true;
  for (int x = 0; x < s.size(); ++x)
    if (s.mul(b, x) == a) return true;
  return false;
}

bool leq_l_by_ideal(const FiniteSemigroup& s, int a, int b) {
  if (a == b) return true;
  for (int x = 0; x < s.size(); ++x)
    if (s.mul(x, b) == a) return true;
  return false;
}

bool leq_j_by_ideal(const FiniteSemigroup& s, int a, int b) {
  if (leq_r_by_ideal(s, a, b) || leq_l_by_ideal(s, a, b)) return true;
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y)
      if (s.mul(s.mul(x, b), y) == a) return true;
  return false;
}

Predicates predicates(const FiniteSemigroup& s) {
  int n = s.size();
  Predicates p;
  p.idempotent_list = idempotents(s);
  p.zero = zero_element(s);
  p.has_zero = p.zero.has_value();

  p.is_aperiodic = true;
  int max_index = 0;
  for (int x = 0; x < n; ++x) {
    auto [index, period] = index_period(s, x);
    if (period != 1) p.is_aperiodic = false;
    max_index = std::max(max_index, index);
  }
  p.aperiodicity_index = p.is_aperiodic ? max_index : -1;

  // inverse: every element regular and idempotents commute
  p.is_inverse = true;
  for (int x = 0; x < n && p.is_inverse; ++x) {
    bool regular = false;
    for (int y = 0; y < n && !regular; ++y)
      if (s.mul(s.mul(x, y), x) == x) regular = true;
    if (!regular) p.is_inverse = false;
  }
  for (std::size_t i = 0; i < p.idempotent_list.size() && p.is_inverse; ++i)
    for (std::size_t k = i + 1; k < p.idempotent_list.size(); ++k) {
      int e = p.idempotent_list[i], f = p.idempotent_list[k];
      if (s.mul(e, f) != s.mul(f, e)) {
        p.is_inverse = false;
        break;
      }
    }

  // group: neutral element together with two-sided inverses
  p.is_group = false;
  for (int e = 0; e < n; ++e) {
    bool neutral = true;
    for (int x = 0; x < n && neutral; ++x)
      if (s.mul(e, x) != x || s.mul(x, e) != x) neutral = false;
    if (!neutral) continue;
    bool all_invertible = true;
    for (int x = 0; x < n && all_invertible; ++x) {
      bool inv = false;
      for (int y = 0; y < n && !inv; ++y)
        if (s.mul(x, y) == e && s.mul(y, x) == e) inv = true;
      all_invertible = inv;
    }
    p.is_group = all_invertible;
    break;
  }

  // nilpotent: iterated product sets reach {zero}
  if (p.has_zero) {
    std::vector<bool> cur(n, true);
    for (int len = 1; len < n; ++len) {
      std::vector<bool> next(n, false);
      for (int x = 0; x < n; ++x) {
        if (!cur[x]) continue;
        for (int y = 0; y < n; ++y) next[s.mul(y, x)] = true;
      }
      cur = std::move(next);
    }
    int live = 0;
    for (int x = 0; x < n; ++x)
      if (cur[x]) ++live;
    p.is_nilpotent = (live == 1 && cur[*p.zero]);
  }
  return p;
}

FiniteSemigroup direct_product(const FiniteSemigroup& s, const FiniteSemigroup& t) {
  int n = s.size(), m = t.size();
  FiniteSemigroup u;
  u.names.reserve(static_cast<std::size_t>(n) * m);
  u.table.assign(static_cast<std::size_t>(n) * m * n * m, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      u.names.push_back("(" + s.names[i] + "," + t.names[j] + ")");
  auto id = [m](int i, int j) { return i * m + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < m; ++l)
          u.table[static_cast<std::size_t>(id(i, j)) * n * m + id(k, l)] =
              id(s.mul(i, k), t.mul(j, l));
  if (s.identity && t.identity) u.identity = id(*s.identity, *t.identity);
  u.convention = "direct product";
  return u;
}

FiniteSemigroup subsemigroup(const FiniteSemigroup& s, const std::vector<int>& subset) {
  std::vector<int> elems;
  std::vector<int> pos(s.size(), -1);
  for (int x : subset) {
    if (x < 0 || x >= s.size()) throw Error("subset index out of range");
    if (pos[x] == -1) {
      pos[x] = static_cast<int>(elems.size());
      elems.push_back(x);
    }
  }
  if (elems.empty()) throw Error("empty subset");
  int n = static_cast<int>(elems.size());
  FiniteSemigroup u;
  u.table.assign(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    u.names.push_back(s.names[elems[i]]);
    for (int j = 0; j < n; ++j) {
      int p = s.mul(elems[i], elems[j]);
      if (pos[p] == -1)
        throw NotClosed(elems[i], elems[j],
                        s.names[elems[i]] + " * " + s.names[elems[j]] + " = " +
                            s.names[p] + " escapes the subset");
      u.table[static_cast<std::size_t>(i) * n + j] = pos[p];
    }
  }
  if (s.identity && pos[*s.identity] != -1) u.identity = pos[*s.identity];
  if (s.has_order) {
    u.has_order = true;
    for (auto [a, b] : s.order)
      if (pos[a] != -1 && pos[b] != -1) u.order.push_back({pos[a], pos[b]});
  }
  u.convention = "subsemigroup of: " + s.convention;
  return u;
}

FiniteSemigroup rees_quotient(const FiniteSemigroup& s, const std::vector<int>& ideal) {
  int n = s.size();
  std::vector<bool> in_ideal(n, false);
  for (int x : ideal) {
    if (x < 0 || x >= n) throw Error("ideal index out of range");
    in_ideal[x] = true;
  }
  int isize = 0;
  for (int x = 0; x < n; ++x)
    if (in_ideal[x]) ++isize;
  if (isize == 0) throw NotIdeal("ideal is empty");
  for (int i = 0; i < n; ++i) {
    if (!in_ideal[i]) continue;
    for (int x = 0; x < n; ++x) {
      if (!in_ideal[s.mul(i, x)])
        throw NotIdeal(s.names[i] + " * " + s.names[x] + " leaves the ideal");
      if (!in_ideal[s.mul(x, i)])
        throw NotIdeal(s.names[x] + " * " + s.names[i] + " leaves the ideal");
    }
  }

  FiniteSemigroup q;
  std::vector<int> img(n, -1);
  for (int x = 0; x < n; ++x) {
    if (in_ideal[x]) continue;
    img[x] = static_cast<int>(q.names.size());
    q.names.push_back(s.names[x]);
  }
  int z = static_cast<int>(q.names.size());
  q.names.push_back("0");
  for (int x = 0; x < n; ++x)
    if (in_ideal[x]) img[x] = z;
  int m = z + 1;
  q.table.assign(static_cast<std::size_t>(m) * m, z);
  for (int x = 0; x < n; ++x) {
    if (in_ideal[x]) continue;
    for (int y = 0; y < n; ++y) {
      if (in_ideal[y]) continue;
      q.table[static_cast<std::size_t>(img[x]) * m + img[y]] = img[s.mul(x, y)];
    }
  }
  if (s.identity && !in_ideal[*s.identity] && m > 1) q.identity = img[*s.identity];
  q.convention = "Rees quotient of: " + s.convention;
  return q;
}

HomCheck hom_check(const FiniteSemigroup& s, const FiniteSemigroup& t,
                   const std::vector<int>& map) {
  if (map.size() != static_cast<std::size_t>(s.size()))
    throw Error("hom map has wrong domain size");
  for (int v : map)
    if (v < 0 || v >= t.size()) throw Error("hom map value out of range");
  HomCheck res;
  res.ok = true;
  for (int a = 0; a < s.size() && res.ok; ++a)
    for (int b = 0; b < s.size(); ++b)
      if (map[s.mul(a, b)] != t.mul(map[a], map[b])) {
        res.ok = false;
        res.a = a;
        res.b = b;
        break;
      }
  std::vector<bool> hit(t.size(), false);
  for (int v : map) hit[v] = true;
  res.onto = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  std::vector<int> count(t.size(), 0);
  for (int v : map) ++count[v];
  res.injective = std::all_of(count.begin(), count.end(), [](int c) { return c <= 1; });
  return res;
}

FiniteSemigroup hom_image(const FiniteSemigroup& s, const FiniteSemigroup& t,
                          const std::vector<int>& map) {
  auto chk = hom_check(s, t, map);
  if (!chk.ok)
    throw NotHomomorphism(chk.a, chk.b, "violated at " + s.names[chk.a] + "," + s.names[chk.b]);
  std::vector<int> image;
  std::vector<bool> seen(t.size(), false);
  for (int x = 0; x < s.size(); ++x)
    if (!seen[map[x]]) {
      seen[map[x]] = true;
      image.push_back(map[x]);
    }
  return subsemigroup(t, image);
}

std::vector<int> hom_preimage(const std::vector<int>& map, const std::vector<int>& targets) {
  std::vector<int> out;
  for (std::size_t x = 0; x < map.size(); ++x)
    for (int t : targets)
      if (map[x] == t) {
        out.push_back(static_cast<int>(x));
        break;
      }
  return out;
}

std::vector<int> closure_in_table(const FiniteSemigroup& s, std::vector<int> seeds) {
  std::vector<bool> in(s.size(), false);
  std::vector<int> out;
  std::vector<int> gens;
  for (int x : seeds)
    if (!in[x]) {
      in[x] = true;
      out.push_back(x);
      gens.push_back(x);
    }
  for (std::size_t head = 0; head < out.size(); ++head)
    for (int g : gens) {
      int p = s.mul(out[head], g);
      if (!in[p]) {
        in[p] = true;
        out.push_back(p);
      }
    }
  return out;
}

std::vector<int> small_generating_set(const FiniteSemigroup& s) {
  std::vector<int> gens;
  std::vector<bool> covered(s.size(), false);
  for (int x = 0; x < s.size(); ++x) {
    if (covered[x]) continue;
    gens.push_back(x);
    for (int y : closure_in_table(s, gens)) covered[y] = true;
  }
  // drop members that later additions made redundant
  for (std::size_t i = gens.size(); i-- > 0;) {
    if (gens.size() == 1) break;
    std::vector<int> trial;
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (k != i) trial.push_back(gens[k]);
    if (closure_in_table(s, trial).size() == static_cast<std::size_t>(s.size()))
      gens = trial;
  }
  return gens;
}

namespace {

// per-element invariant used to prune isomorphism search
struct ElemProfile {
  bool idem;
  int index, period;
  int rsz, lsz, jsz, hsz;
  bool regular;
  auto key() const { return std::tie(idem, index, period, rsz, lsz, jsz, hsz, regular); }
  bool operator<(const ElemProfile& o) const { return key() < o.key(); }
  bool operator==(const ElemProfile& o) const { return key() == o.key(); }
};

std::vector<ElemProfile> profiles(const FiniteSemigroup& s) {
  auto g = green(s);
  std::vector<int> rsz(g.num_r, 0), lsz(g.num_l, 0), jsz(g.num_j, 0), hsz(g.num_h, 0);
  for (int x = 0; x < s.size(); ++x) {
    ++rsz[g.r[x]];
    ++lsz[g.l[x]];
    ++jsz[g.j[x]];
    ++hsz[g.h[x]];
  }
  std::vector<ElemProfile> out(s.size());
  for (int x = 0; x < s.size(); ++x) {
    auto [index, period] = index_period(s, x);
    bool regular = false;
    for (int y = 0; y < s.size() && !regular; ++y)
      if (s.mul(s.mul(x, y), x) == x) regular = true;
    out[x] = {s.mul(x, x) == x, index,        period,
              rsz[g.r[x]],      lsz[g.l[x]],  jsz[g.j[x]],
              hsz[g.h[x]],      regular};
  }
  return out;
}

// words over gen positions expressing every element, or nullopt
std::optional<std::vector<std::vector<int>>> closure_words(const FiniteSemigroup& s,
                                                           const std::vector<int>& gens) {
  std::vector<std::vector<int>> words(s.size());
  std::vector<bool> have(s.size(), false);
  std::vector<int> order;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!have[gens[i]]) {
      have[gens[i]] = true;
      words[gens[i]] = {static_cast<int>(i)};
      order.push_back(gens[i]);
    }
  for (std::size_t head = 0; head < order.size(); ++head)
    for (std::size_t i = 0; i < gens.size(); ++i) {
      int p = s.mul(order[head], gens[i]);
      if (!have[p]) {
        have[p] = true;
        words[p] = words[order[head]];
        words[p].push_back(static_cast<int>(i));
        order.push_back(p);
      }
    }
  if (order.size() != static_cast<std::size_t>(s.size())) return std::nullopt;
  return words;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const FiniteSemigroup& s,
                                                 const FiniteSemigroup& t) {
  if (s.size() != t.size()) return std::nullopt;
  auto ps = profiles(s), pt = profiles(t);
  {
    auto a = ps, b = pt;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (!(a == b)) return std::nullopt;
  }

  auto gens = small_generating_set(s);
  auto words = closure_words(s, gens);
  if (!words) return std::nullopt;           // cannot happen: gens generate

  // candidates per generator, filtered by profile
  std::vector<std::vector<int>> cand(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int y = 0; y < t.size(); ++y)
      if (ps[gens[i]] == pt[y]) cand[i].push_back(y);

  std::vector<int> pick(gens.size(), -1);
  std::function<std::optional<std::vector<int>>(std::size_t)> rec =
      [&](std::size_t pos) -> std::optional<std::vector<int>> {
    if (pos == gens.size()) {
      // evaluate every element's word over the chosen images
      std::vector<int> f(s.size(), -1);
      for (int x = 0; x < s.size(); ++x) {
        int acc = -1;
        for (int gi : (*words)[x]) {
          int img = pick[gi];
          acc = (acc == -1) ? img : t.mul(acc, img);
        }
        f[x] = acc;
      }
      std::vector<bool> hit(t.size(), false);
      for (int v : f) {
        if (hit[v]) return std::nullopt;
        hit[v] = true;
      }
      for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b)
          if (f[s.mul(a, b)] != t.mul(f[a], f[b])) return std::nullopt;
      return f;
    }
    for (int y : cand[pos]) {
      bool used = false;
      for (std::size_t k = 0; k < pos; ++k)
        if (pick[k] == y) used = true;
      if (used) continue;
      pick[pos] = y;
      if (auto r = rec(pos + 1)) return r;
      pick[pos] = -1;
    }
    return std::nullopt;
  };
  return rec(0);
}

}  // namespace fsw
