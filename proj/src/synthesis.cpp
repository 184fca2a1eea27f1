#include "fsw/synthesis.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "fsw/error.hpp"

namespace fsw {

SynthesisBuild synthesis_u(const FiniteSemigroup& s, const FiniteSemigroup& t,
                           const std::vector<int>& f, std::size_t budget) {
  if (f.size() != static_cast<std::size_t>(s.size()))
    throw Error("f must assign a value to every element of the left factor");
  for (int v : f)
    if (v < 0 || v >= t.size()) throw Error("f value out of range");

  int ns = s.size();
  int nt = t.size();
  std::size_t total = static_cast<std::size_t>(ns) +
                      static_cast<std::size_t>(ns) * ns * nt;
  if (total > budget) throw ClosureBudgetExceeded(budget);

  SynthesisBuild b;
  b.s_size = ns;
  b.t_size = nt;
  int n = static_cast<int>(total);
  FiniteSemigroup& u = b.u;
  u.names.reserve(total);
  for (int i = 0; i < ns; ++i) u.names.push_back(s.names[static_cast<std::size_t>(i)]);
  for (int s1 = 0; s1 < ns; ++s1)
    for (int ti = 0; ti < nt; ++ti)
      for (int s2 = 0; s2 < ns; ++s2)
        u.names.push_back("(" + s.names[static_cast<std::size_t>(s1)] + "," +
                          t.names[static_cast<std::size_t>(ti)] + "," +
                          s.names[static_cast<std::size_t>(s2)] + ")");

  auto parts = [&](int x) {
    x -= ns;
    int s2 = x % ns;
    x /= ns;
    return std::array<int, 3>{x / nt, x % nt, s2};
  };
  u.table.assign(total * total, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int r;
      if (!b.is_triple(x) && !b.is_triple(y)) {
        r = s.mul(x, y);
      } else if (!b.is_triple(x)) {
        auto [s1, ti, s2] = parts(y);
        r = b.triple_index(s.mul(x, s1), ti, s2);
      } else if (!b.is_triple(y)) {
        auto [s1, ti, s2] = parts(x);
        r = b.triple_index(s1, ti, s.mul(s2, y));
      } else {
        auto [s1, ti, s2] = parts(x);
        auto [s1p, tip, s2p] = parts(y);
        int mid = t.mul(t.mul(ti, f[static_cast<std::size_t>(s.mul(s2, s1p))]), tip);
        r = b.triple_index(s1, mid, s2p);
      }
      u.table[static_cast<std::size_t>(x) * n + y] = r;
    }

  // the identity of S, when present, is neutral on triples too
  u.identity = s.identity;
  u.convention = "synthesis";
  validate(u);
  return b;
}

FiniteSemigroup capped_addition_monoid(int m) {
  if (m < 0) throw Error("cap must be nonnegative");
  FiniteSemigroup s;
  int n = m + 1;
  for (int i = 0; i < n; ++i) s.names.push_back(std::to_string(i));
  s.table.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s.table[static_cast<std::size_t>(i) * n + j] = std::min(i + j, m);
  s.identity = 0;
  s.generators = m == 0 ? std::vector<int>{0} : std::vector<int>{0, 1};
  s.convention = "monoid";
  validate(s);
  return s;
}

FiniteSemigroup cyclic_group(int n) {
  if (n < 1) throw Error("group order must be positive");
  FiniteSemigroup s;
  for (int i = 0; i < n; ++i) s.names.push_back(std::to_string(i));
  s.table.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s.table[static_cast<std::size_t>(i) * n + j] = (i + j) % n;
  s.identity = 0;
  s.generators = n == 1 ? std::vector<int>{0} : std::vector<int>{1};
  s.convention = "group";
  validate(s);
  return s;
}

FiniteSemigroup chain_semilattice(int n) {
  if (n < 1) throw Error("chain length must be positive");
  FiniteSemigroup s;
  for (int i = 0; i < n; ++i) s.names.push_back(std::to_string(i));
  s.table.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s.table[static_cast<std::size_t>(i) * n + j] = std::min(i, j);
  s.identity = n - 1;
  s.has_order = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s.order.push_back({i, j});
  for (int i = 0; i < n; ++i) s.generators.push_back(i);
  s.convention = "semilattice";
  validate(s);
  return s;
}

SlReport sl_witness(int m, const FiniteSemigroup& g,
                    const std::optional<std::vector<int>>& f_override,
                    const std::optional<std::vector<int>>& phi_override) {
  if (m < 1) throw Error("cap must be at least 1");
  FiniteSemigroup base = capped_addition_monoid(m);

  std::vector<int> f;
  if (f_override) {
    f = *f_override;
  } else {
    // powers of a chosen generator of the group
    if (!g.identity) throw NoIdentity();
    int gen = g.generators.empty() ? *g.identity : g.generators.front();
    int acc = *g.identity;
    for (int i = 0; i <= m; ++i) {
      f.push_back(acc);
      acc = g.mul(acc, gen);
    }
  }

  std::size_t need = static_cast<std::size_t>(base.size()) +
                     static_cast<std::size_t>(base.size()) * base.size() * g.size();
  SynthesisBuild b = synthesis_u(base, g, f, need);
  FiniteSemigroup chain = chain_semilattice(3);

  int n = b.u.size();
  std::vector<int> phi;
  if (phi_override) {
    phi = *phi_override;
    if (phi.size() != static_cast<std::size_t>(n))
      throw Error("quotient map must cover every element");
  } else {
    phi.assign(static_cast<std::size_t>(n), 0);
    for (int x = 0; x < n; ++x)
      phi[static_cast<std::size_t>(x)] = b.is_triple(x) ? 0 : (x == 0 ? 2 : 1);
  }

  SlReport rep;
  rep.u_size = n;
  auto stage = [&](const std::string& name, bool ok, const std::string& detail) {
    rep.stages.push_back({name, ok, detail});
    if (!ok) throw WitnessFailed(name, detail);
  };

  HomCheck hc = hom_check(b.u, chain, phi);
  stage("quotient-hom", hc.ok,
        hc.ok ? "" : "fails at (" + std::to_string(hc.a) + "," + std::to_string(hc.b) + ")");
  stage("quotient-onto", hc.onto, hc.onto ? "" : "some chain level has no preimage");

  int top = 0, middle = 0;
  for (int x = 0; x < n; ++x) {
    if (phi[static_cast<std::size_t>(x)] == 2) ++top;
    if (phi[static_cast<std::size_t>(x)] == 1) ++middle;
  }
  stage("top-fiber-trivial", top == 1, "size " + std::to_string(top));
  bool mid_ok = middle == base.size() - 1;
  for (int x = 0; x < n && mid_ok; ++x) {
    bool expect = !b.is_triple(x) && x != 0;
    if ((phi[static_cast<std::size_t>(x)] == 1) != expect) mid_ok = false;
  }
  stage("middle-fiber-matches", mid_ok,
        "expected the non-identity part of the additive monoid, size " +
            std::to_string(base.size() - 1) + ", got " + std::to_string(middle));

  std::vector<int> kernel;
  for (int x = 0; x < n; ++x)
    if (phi[static_cast<std::size_t>(x)] == 0) kernel.push_back(x);
  GreenData gd = green(b.u);
  std::set<int> jids;
  for (int x : kernel) jids.insert(gd.j[static_cast<std::size_t>(x)]);
  rep.kernel_j_classes = static_cast<int>(jids.size());
  stage("kernel-single-j-class", rep.kernel_j_classes == 1,
        std::to_string(rep.kernel_j_classes) + " J-classes over " +
            std::to_string(kernel.size()) + " elements");

  // maximal subgroups of the kernel: H-classes holding an idempotent
  std::set<int> kset(kernel.begin(), kernel.end());
  std::vector<int> idem = idempotents(b.u);
  std::set<int> seen_h;
  bool all_iso = true;
  std::string iso_detail;
  for (int e : idem) {
    if (!kset.count(e)) continue;
    int hid = gd.h[static_cast<std::size_t>(e)];
    if (!seen_h.insert(hid).second) continue;
    std::vector<int> hclass;
    for (int x : kernel)
      if (gd.h[static_cast<std::size_t>(x)] == hid) hclass.push_back(x);
    FiniteSemigroup sub = subsemigroup(b.u, hclass);
    ++rep.subgroup_count;
    if (!find_isomorphism(sub, g)) {
      all_iso = false;
      iso_detail = "subgroup at " + b.u.names[static_cast<std::size_t>(e)] + " of size " +
                   std::to_string(hclass.size()) + " is not a copy of the group";
      break;
    }
  }
  stage("kernel-subgroups", all_iso,
        all_iso ? "checked " + std::to_string(rep.subgroup_count) : iso_detail);

  rep.ok = true;
  return rep;
}

}  // namespace fsw
