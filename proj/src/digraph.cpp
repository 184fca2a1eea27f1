#include "fsw/digraph.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "fsw/error.hpp"
#include "fsw/words.hpp"

namespace fsw {

std::string LabeledDigraph::alphabet() const {
  std::set<char> labels;
  for (const auto& [s, c, d] : edges) {
    (void)s;
    (void)d;
    labels.insert(c);
  }
  return std::string(labels.begin(), labels.end());
}

bool LabeledDigraph::deterministic() const {
  std::set<std::tuple<int, char, int>> distinct(edges.begin(), edges.end());
  std::set<std::pair<int, char>> seen;
  for (const auto& [s, c, d] : distinct) {
    (void)d;
    if (!seen.insert({s, c}).second) return false;
  }
  return true;
}

bool LabeledDigraph::codeterministic() const {
  std::set<std::tuple<int, char, int>> distinct(edges.begin(), edges.end());
  std::set<std::pair<int, char>> seen;
  for (const auto& [s, c, d] : distinct) {
    (void)s;
    if (!seen.insert({d, c}).second) return false;
  }
  return true;
}

std::size_t PartialMapHash::operator()(const PartialMap& m) const {
  std::size_t h = 1469598103934665603ull;
  for (int v : m) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

bool is_injective(const PartialMap& m) {
  std::set<int> hit;
  for (int v : m)
    if (v != -1 && !hit.insert(v).second) return false;
  return true;
}

bool is_partial_identity(const PartialMap& m) {
  for (std::size_t v = 0; v < m.size(); ++v)
    if (m[v] != -1 && m[v] != static_cast<int>(v)) return false;
  return true;
}

PartialMap compose(const PartialMap& first, const PartialMap& then) {
  PartialMap out(first.size(), -1);
  for (std::size_t v = 0; v < first.size(); ++v)
    if (first[v] != -1) out[v] = then[first[v]];
  return out;
}

bool map_contains(const PartialMap& super, const PartialMap& sub) {
  if (super.size() != sub.size()) return false;
  for (std::size_t v = 0; v < sub.size(); ++v)
    if (sub[v] != -1 && super[v] != sub[v]) return false;
  return true;
}

LabeledDigraph flower(const std::vector<std::string>& words) {
  if (words.empty()) throw Error("flower needs at least one petal word");
  LabeledDigraph g;
  g.vertex_names.push_back("0");
  g.basepoints["0"] = 0;
  // interior vertices are named by the path prefix that reaches them;
  // a second petal can repeat a prefix string, so collisions get #k
  std::set<std::string> used{"0"};
  int collision = 0;
  auto fresh = [&](const std::string& base) {
    if (used.insert(base).second) return base;
    while (true) {
      std::string cand = base + "#" + std::to_string(++collision);
      if (used.insert(cand).second) return cand;
    }
  };
  for (const auto& w : words) {
    if (w.empty()) throw Error("flower petal must be a nonempty word");
    int prev = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      int v = g.size();
      g.vertex_names.push_back(fresh(w.substr(0, i + 1)));
      g.edges.push_back({prev, w[i], v});
      prev = v;
    }
    g.edges.push_back({prev, w.back(), 0});
  }
  return g;
}

LabeledDigraph gamma_graph(int n) {
  if (n < 0) throw Error("graph level must be nonnegative");
  Substitution mu = ptm_substitution();
  return flower({iterate(mu, 'a', n), iterate(mu, 'b', n)});
}

LabeledDigraph gamma_union(int n) {
  if (n < 0) throw Error("graph level must be nonnegative");
  LabeledDigraph g;
  for (int j = 0; j <= n; ++j) {
    LabeledDigraph gj = gamma_graph(j);
    int off = g.size();
    std::string suffix = "_" + std::to_string(j);
    for (const auto& nm : gj.vertex_names) g.vertex_names.push_back(nm + suffix);
    for (const auto& [s, c, d] : gj.edges) g.edges.push_back({s + off, c, d + off});
    g.basepoints["0" + suffix] = off;
  }
  return g;
}

PartialMap letter_action(const LabeledDigraph& g, char letter) {
  PartialMap m(g.size(), -1);
  for (const auto& [s, c, d] : g.edges) {
    if (c != letter) continue;
    if (m[s] != -1 && m[s] != d)
      throw NotDeterministic("vertex " + g.vertex_names[s] +
                             " has two out-edges labeled " + std::string(1, letter));
    m[s] = d;
  }
  return m;
}

PartialMap act(const LabeledDigraph& g, const std::string& word) {
  PartialMap m(g.size());
  std::iota(m.begin(), m.end(), 0);
  std::map<char, PartialMap> per_letter;
  for (char c : word) {
    auto it = per_letter.find(c);
    if (it == per_letter.end())
      it = per_letter.emplace(c, letter_action(g, c)).first;
    m = compose(m, it->second);
  }
  return m;
}

TransMonoid transition_monoid(const LabeledDigraph& g, std::size_t budget) {
  TransMonoid tm;
  tm.graph = g;
  std::string alpha = g.alphabet();
  std::vector<PartialMap> seeds;
  seeds.reserve(alpha.size());
  for (char c : alpha) seeds.push_back(letter_action(g, c));

  PartialMap id(g.size());
  std::iota(id.begin(), id.end(), 0);
  ClosureOptions opt;
  opt.budget = budget;
  auto cl = close_under<PartialMap, PartialMap (*)(const PartialMap&, const PartialMap&),
                        PartialMapHash>(seeds, &compose, id, opt);

  tm.maps = cl.elements;
  auto spell = [&](const std::vector<int>& w) {
    std::string s;
    for (int gi : w) s += alpha[static_cast<std::size_t>(gi)];
    return s;
  };
  for (const auto& w : cl.words) tm.words.push_back(spell(w));

  std::function<std::string(const PartialMap&, const std::vector<int>&)> name =
      [&](const PartialMap&, const std::vector<int>& w) {
        return w.empty() ? std::string("1") : spell(w);
      };
  tm.sg = table_from_closure<PartialMap, PartialMap (*)(const PartialMap&, const PartialMap&),
                             PartialMapHash>(cl, &compose, name);
  tm.sg.convention = "monoid";

  // s <= t when the graph of s contains the graph of t; composition
  // preserves containment on both sides, so this order is stable
  int n = tm.sg.size();
  tm.sg.has_order = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && map_contains(tm.maps[i], tm.maps[j]))
        tm.sg.order.push_back({i, j});

  PartialMap empty(g.size(), -1);
  for (const auto& m : tm.maps)
    if (m == empty) {
      tm.empty_map_present = true;
      break;
    }
  int idid = *tm.sg.identity;
  for (int x = 0; x < n && !tm.identity_by_nonempty_word; ++x)
    for (int gi : tm.sg.generators)
      if (tm.sg.mul(x, gi) == idid) {
        tm.identity_by_nonempty_word = true;
        break;
      }
  // the adjoined identity is a generator only when no letter word
  // produces it; everything else is a product of letter actions
  if (!tm.identity_by_nonempty_word) tm.sg.generators.push_back(idid);
  validate(tm.sg);
  return tm;
}

std::optional<int> find_map(const TransMonoid& tm, const PartialMap& m) {
  for (std::size_t i = 0; i < tm.maps.size(); ++i)
    if (tm.maps[i] == m) return static_cast<int>(i);
  return std::nullopt;
}

MnTower build_mn_tower(int n, std::size_t budget) {
  if (n < 0) throw Error("tower height must be nonnegative");
  MnTower tw;
  for (int i = 0; i <= n; ++i)
    tw.levels.push_back(transition_monoid(gamma_union(i), budget));
  for (int i = 0; i < n; ++i) {
    const TransMonoid& hi = tw.levels[static_cast<std::size_t>(i) + 1];
    const TransMonoid& lo = tw.levels[static_cast<std::size_t>(i)];
    // gamma_union(i) sits as the first block of gamma_union(i+1) with the
    // same vertex numbering, so restriction is a prefix slice
    int cut = lo.graph.size();
    std::vector<int> phi;
    phi.reserve(hi.maps.size());
    for (const auto& m : hi.maps) {
      PartialMap r(m.begin(), m.begin() + cut);
      auto idx = find_map(lo, r);
      if (!idx) throw Error("restriction of a level-" + std::to_string(i + 1) +
                            " map escaped level " + std::to_string(i));
      phi.push_back(*idx);
    }
    tw.phi_checks.push_back(hom_check(hi.sg, lo.sg, phi));
    tw.phis.push_back(std::move(phi));
  }
  return tw;
}

GammaHom graph_hom_gamma(int n) {
  LabeledDigraph hi = gamma_graph(n + 1);
  LabeledDigraph lo = gamma_graph(n);
  GammaHom res;
  res.vertex_map.assign(hi.vertex_names.size(), -1);
  res.vertex_map[0] = 0;

  std::map<std::pair<int, char>, int> step;
  for (const auto& [s, c, d] : lo.edges) step[{s, c}] = d;

  // hi was built petal by petal, so every edge's source is already
  // mapped when the edge comes up; the image just reads the same label
  for (const auto& [s, c, d] : hi.edges) {
    auto it = step.find({res.vertex_map[s], c});
    if (it == step.end()) throw Error("path of the upper flower cannot be read below");
    if (res.vertex_map[d] == -1) res.vertex_map[d] = it->second;
  }

  std::set<std::tuple<int, char, int>> lo_edges(lo.edges.begin(), lo.edges.end());
  res.edges_ok = true;
  for (const auto& [s, c, d] : hi.edges)
    if (!lo_edges.count({res.vertex_map[s], c, res.vertex_map[d]})) {
      res.edges_ok = false;
      break;
    }

  for (int v = 0; v < hi.size(); ++v)
    if (res.vertex_map[v] == 0) res.basepoint_preimage.push_back(v);

  Substitution mu = ptm_substitution();
  PartialMap pa = act(hi, iterate(mu, 'a', n));
  PartialMap pb = act(hi, iterate(mu, 'b', n));
  std::set<int> expect{0, pa[0], pb[0]};
  std::set<int> got(res.basepoint_preimage.begin(), res.basepoint_preimage.end());
  res.preimage_ok = (got == expect) && got.size() == 3;
  return res;
}

LiftPair lifting_words(int n, const std::string& w) {
  if (n < 0) throw Error("graph level must be nonnegative");
  Substitution mu = ptm_substitution();
  std::string ma = iterate(mu, 'a', n);
  std::string mb = iterate(mu, 'b', n);
  auto proper_prefix = [&](const std::string& full) {
    return w.size() < full.size() && full.compare(0, w.size(), w) == 0;
  };
  LiftPair lp;
  if (proper_prefix(ma)) {
    lp.c = 'a';
    lp.d = 'b';
  } else if (proper_prefix(mb)) {
    lp.c = 'b';
    lp.d = 'a';
  } else {
    throw NotAPrefix("'" + w + "' at level " + std::to_string(n));
  }
  std::string head = iterate(mu, 'a', n + 2);
  lp.u = head + w;
  lp.v = head + iterate(mu, lp.d, n) + w;

  LabeledDigraph gn = gamma_graph(n);
  LabeledDigraph gn1 = gamma_graph(n + 1);
  PartialMap au = act(gn, lp.u);
  PartialMap av = act(gn, lp.v);
  lp.same_on_level = (au == av);
  PartialMap expect(gn.vertex_names.size(), -1);
  expect[0] = act(gn, w)[0];
  lp.level_domain_ok = (au == expect);

  PartialMap bu = act(gn1, lp.u);
  PartialMap bv = act(gn1, lp.v);
  auto domain_is_basepoint = [](const PartialMap& m) {
    if (m.empty() || m[0] == -1) return false;
    for (std::size_t v = 1; v < m.size(); ++v)
      if (m[v] != -1) return false;
    return true;
  };
  lp.next_domains_ok = domain_is_basepoint(bu) && domain_is_basepoint(bv);
  lp.distinct_on_next = !(bu == bv);
  lp.ok = lp.same_on_level && lp.level_domain_ok && lp.next_domains_ok &&
          lp.distinct_on_next;
  return lp;
}

TreeWitnessReport tree_witness(int base_n, int depth, std::size_t budget) {
  if (base_n < 0 || depth < 0) throw Error("level and depth must be nonnegative");
  Substitution mu = ptm_substitution();
  TreeWitnessReport rep;
  rep.ok = true;

  // each node carries the lift parameter: a proper prefix of mu^level(c);
  // the two children keep the parameter (letter c) or prepend mu^level(d)
  struct Node {
    std::string param;
    char c;
    int parent;
  };
  std::vector<Node> cur{{"", 'a', -1}};
  std::vector<PartialMap> prev_maps;
  int prev_cut = 0;

  for (int t = 0; t <= depth; ++t) {
    int level = base_n + t;
    LabeledDigraph g = gamma_union(level);
    std::string head = iterate(mu, 'a', level + 2, budget);
    std::vector<PartialMap> maps;
    maps.reserve(cur.size());
    for (const auto& nd : cur) maps.push_back(act(g, head + nd.param));

    TreeWitnessLevel lv;
    lv.level = level;
    lv.count = static_cast<int>(maps.size());
    lv.distinct_ok = true;
    for (std::size_t i = 0; i < maps.size() && lv.distinct_ok; ++i)
      for (std::size_t j = i + 1; j < maps.size(); ++j)
        if (maps[i] == maps[j]) {
          lv.distinct_ok = false;
          break;
        }
    lv.restriction_ok = true;
    if (t > 0) {
      for (std::size_t i = 0; i < maps.size(); ++i) {
        PartialMap r(maps[i].begin(), maps[i].begin() + prev_cut);
        if (r != prev_maps[static_cast<std::size_t>(cur[i].parent)]) {
          lv.restriction_ok = false;
          break;
        }
      }
    }
    rep.levels.push_back(lv);
    rep.ok = rep.ok && lv.distinct_ok && lv.restriction_ok;
    if (t == depth) break;

    std::vector<Node> next;
    next.reserve(2 * cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i) {
      char d = cur[i].c == 'a' ? 'b' : 'a';
      next.push_back({cur[i].param, cur[i].c, static_cast<int>(i)});
      next.push_back({iterate(mu, d, level, budget) + cur[i].param, d,
                      static_cast<int>(i)});
    }
    prev_maps = std::move(maps);
    prev_cut = g.size();
    cur = std::move(next);
  }
  return rep;
}

LabeledDigraph stallings_fold(const LabeledDigraph& g, unsigned seed) {
  int n = g.size();
  std::vector<int> uf(static_cast<std::size_t>(n));
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (uf[static_cast<std::size_t>(v)] != v) {
      uf[static_cast<std::size_t>(v)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(v)])];
      v = uf[static_cast<std::size_t>(v)];
    }
    return v;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) uf[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  };

  std::vector<std::tuple<int, char, int>> es = g.edges;
  std::mt19937 rng(seed);
  std::shuffle(es.begin(), es.end(), rng);

  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, char>, int> out_to;
    std::map<std::pair<int, char>, int> in_from;
    for (const auto& [s, c, d] : es) {
      int fs = find(s);
      int fd = find(d);
      auto [it, fresh] = out_to.try_emplace({fs, c}, fd);
      if (!fresh && find(it->second) != fd) {
        unite(it->second, fd);
        changed = true;
      }
      auto [it2, fresh2] = in_from.try_emplace({fd, c}, fs);
      if (!fresh2 && find(it2->second) != fs) {
        unite(it2->second, fs);
        changed = true;
      }
    }
  }

  std::vector<int> newid(static_cast<std::size_t>(n), -1);
  LabeledDigraph out;
  for (int v = 0; v < n; ++v) {
    int r = find(v);
    if (newid[static_cast<std::size_t>(r)] == -1) {
      newid[static_cast<std::size_t>(r)] = out.size();
      out.vertex_names.push_back(g.vertex_names[static_cast<std::size_t>(r)]);
    }
  }
  std::set<std::tuple<int, char, int>> dedup;
  for (const auto& [s, c, d] : g.edges)
    dedup.insert({newid[static_cast<std::size_t>(find(s))], c,
                  newid[static_cast<std::size_t>(find(d))]});
  out.edges.assign(dedup.begin(), dedup.end());
  for (const auto& [nm, v] : g.basepoints) out.basepoints[nm] = newid[static_cast<std::size_t>(find(v))];
  return out;
}

LabeledDigraph canonical_digraph(const LabeledDigraph& g) {
  if (!g.deterministic()) throw Error("canonical relabeling needs a deterministic graph");
  int base = 0;
  if (!g.basepoints.empty()) base = g.basepoints.begin()->second;

  std::map<std::pair<int, char>, int> step;
  for (const auto& [s, c, d] : g.edges) step[{s, c}] = d;

  std::vector<int> order;
  std::vector<int> newid(g.vertex_names.size(), -1);
  newid[static_cast<std::size_t>(base)] = 0;
  order.push_back(base);
  for (std::size_t h = 0; h < order.size(); ++h) {
    int v = order[h];
    auto it = step.lower_bound({v, std::numeric_limits<char>::min()});
    for (; it != step.end() && it->first.first == v; ++it) {
      int d = it->second;
      if (newid[static_cast<std::size_t>(d)] == -1) {
        newid[static_cast<std::size_t>(d)] = static_cast<int>(order.size());
        order.push_back(d);
      }
    }
  }
  // anything unreachable keeps its relative order at the end
  for (int v = 0; v < g.size(); ++v)
    if (newid[static_cast<std::size_t>(v)] == -1) {
      newid[static_cast<std::size_t>(v)] = static_cast<int>(order.size());
      order.push_back(v);
    }

  LabeledDigraph out;
  out.vertex_names.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    out.vertex_names.push_back("v" + std::to_string(i));
  std::set<std::tuple<int, char, int>> es;
  for (const auto& [s, c, d] : g.edges)
    es.insert({newid[static_cast<std::size_t>(s)], c, newid[static_cast<std::size_t>(d)]});
  out.edges.assign(es.begin(), es.end());
  for (const auto& [nm, v] : g.basepoints) out.basepoints[nm] = newid[static_cast<std::size_t>(v)];
  return out;
}

bool digraph_isomorphic(const LabeledDigraph& a, const LabeledDigraph& b) {
  LabeledDigraph ca = canonical_digraph(a);
  LabeledDigraph cb = canonical_digraph(b);
  return ca.vertex_names.size() == cb.vertex_names.size() && ca.edges == cb.edges &&
         ca.basepoints == cb.basepoints;
}

std::string to_dot(const LabeledDigraph& g) {
  std::ostringstream os;
  os << "digraph G {\n  rankdir=LR;\n";
  std::set<int> bases;
  for (const auto& [nm, v] : g.basepoints) {
    (void)nm;
    bases.insert(v);
  }
  for (int v = 0; v < g.size(); ++v)
    os << "  v" << v << " [label=\"" << g.vertex_names[static_cast<std::size_t>(v)]
       << "\"" << (bases.count(v) ? ", shape=doublecircle" : "") << "];\n";
  for (const auto& [s, c, d] : g.edges)
    os << "  v" << s << " -> v" << d << " [label=\"" << c << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace fsw
