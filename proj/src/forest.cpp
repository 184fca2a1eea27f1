#include "fsw/forest.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "fsw/error.hpp"

namespace fsw {
namespace {

// Working frame for the recursive construction.  The quotient step makes
// fresh tables, so the frame owns its table; img is indexed by absolute
// word position and only the slice under construction is meaningful.
struct Ctx {
  std::vector<int> table;
  int m = 0;
  std::vector<int> img;

  int mul(int a, int b) const { return table[static_cast<std::size_t>(a) * m + b]; }
  int prod(int lo, int hi) const {
    int p = img[static_cast<std::size_t>(lo)];
    for (int i = lo + 1; i < hi; ++i) p = mul(p, img[static_cast<std::size_t>(i)]);
    return p;
  }
};

std::set<int> closure_set(const Ctx& c, const std::set<int>& gens) {
  std::set<int> seen = gens;
  std::vector<int> frontier(gens.begin(), gens.end());
  while (!frontier.empty()) {
    int x = frontier.back();
    frontier.pop_back();
    std::vector<int> cur(seen.begin(), seen.end());
    for (int y : cur)
      for (int z : {c.mul(x, y), c.mul(y, x)})
        if (seen.insert(z).second) frontier.push_back(z);
  }
  return seen;
}

int find_zero_in(const Ctx& c, const std::set<int>& uni) {
  for (int z : uni) {
    bool ok = true;
    for (int x : uni)
      if (c.mul(z, x) != z || c.mul(x, z) != z) {
        ok = false;
        break;
      }
    if (ok) return z;
  }
  return -1;
}

std::set<int> j_down(const Ctx& c, const std::set<int>& uni, int x) {
  std::set<int> down{x};
  std::vector<int> frontier{x};
  while (!frontier.empty()) {
    int y = frontier.back();
    frontier.pop_back();
    for (int s : uni)
      for (int z : {c.mul(s, y), c.mul(y, s)})
        if (down.insert(z).second) frontier.push_back(z);
  }
  return down;
}

std::vector<std::set<int>> j_classes_in(const Ctx& c, const std::set<int>& uni,
                                        std::map<int, std::set<int>>& down) {
  for (int x : uni) down.emplace(x, j_down(c, uni, x));
  std::vector<std::set<int>> classes;
  for (int x : uni) {
    bool placed = false;
    for (auto& cls : classes) {
      int rep = *cls.begin();
      if (down[rep].count(x) && down[x].count(rep)) {
        cls.insert(x);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({x});
  }
  return classes;
}

// the unique minimal two-sided ideal (a single J-class)
std::set<int> kernel_in(const Ctx& c, const std::set<int>& uni) {
  std::map<int, std::set<int>> down;
  auto classes = j_classes_in(c, uni, down);
  for (auto& cls : classes)
    if (down[*cls.begin()] == cls) return cls;
  throw Error("internal: no minimal ideal found");
}

// {zero} plus a smallest J-class whose down-set is itself and the zero
std::set<int> zero_minimal_ideal_in(const Ctx& c, const std::set<int>& uni, int z) {
  std::map<int, std::set<int>> down;
  auto classes = j_classes_in(c, uni, down);
  const std::set<int>* best = nullptr;
  for (auto& cls : classes) {
    if (cls.count(z)) continue;
    std::set<int> expect = cls;
    expect.insert(z);
    if (down[*cls.begin()] == expect)
      if (!best || cls.size() < best->size()) best = &cls;
  }
  if (!best) throw Error("internal: no 0-minimal ideal found");
  std::set<int> out = *best;
  out.insert(z);
  return out;
}

// R-equivalence class ids under right multiplication by uni elements
std::map<int, int> r_class_ids(const Ctx& c, const std::set<int>& uni) {
  std::map<int, std::set<int>> right;
  for (int x : uni) {
    std::set<int> r{x};
    std::vector<int> frontier{x};
    while (!frontier.empty()) {
      int y = frontier.back();
      frontier.pop_back();
      for (int s : uni) {
        int z = c.mul(y, s);
        if (r.insert(z).second) frontier.push_back(z);
      }
    }
    right.emplace(x, std::move(r));
  }
  std::map<int, int> cls;
  std::vector<int> reps;
  for (int x : uni) {
    int found = -1;
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (right[reps[i]].count(x) && right[x].count(reps[i])) {
        found = static_cast<int>(i);
        break;
      }
    if (found == -1) {
      cls[x] = static_cast<int>(reps.size());
      reps.push_back(x);
    } else {
      cls[x] = found;
    }
  }
  return cls;
}

int make_leaf(std::vector<ForestNode>& nodes, int pos) {
  ForestNode nd;
  nd.lo = pos;
  nd.hi = pos + 1;
  nodes.push_back(std::move(nd));
  return static_cast<int>(nodes.size()) - 1;
}

int make_node(std::vector<ForestNode>& nodes, std::vector<int> kids) {
  ForestNode nd;
  nd.lo = nodes[static_cast<std::size_t>(kids.front())].lo;
  nd.hi = nodes[static_cast<std::size_t>(kids.back())].hi;
  nd.children = std::move(kids);
  nodes.push_back(std::move(nd));
  return static_cast<int>(nodes.size()) - 1;
}

int build_rec(const Ctx& c, int lo, int hi, std::vector<ForestNode>& nodes);

// collapse J0 to a fresh zero and recurse on the quotient; sound whenever
// no letter of the slice lies in J0
int build_quotient(const Ctx& c, int lo, int hi, const std::set<int>& sw,
                   const std::set<int>& j0, std::vector<ForestNode>& nodes) {
  std::vector<int> keep;
  for (int x : sw)
    if (!j0.count(x)) keep.push_back(x);
  std::map<int, int> remap;
  for (std::size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<int>(i);
  int zq = static_cast<int>(keep.size());
  Ctx qc;
  qc.m = zq + 1;
  qc.table.assign(static_cast<std::size_t>(qc.m) * qc.m, zq);
  for (int x : keep)
    for (int y : keep) {
      int p = c.mul(x, y);
      auto it = remap.find(p);
      qc.table[static_cast<std::size_t>(remap[x]) * qc.m + remap[y]] =
          it == remap.end() ? zq : it->second;
    }
  qc.img.assign(c.img.size(), -1);
  for (int i = lo; i < hi; ++i) {
    auto it = remap.find(c.img[static_cast<std::size_t>(i)]);
    if (it == remap.end())
      throw Error("internal: quotient letter lies in the collapsed ideal");
    qc.img[static_cast<std::size_t>(i)] = it->second;
  }
  return build_rec(qc, lo, hi, nodes);
}

// sub-run [slo,shi) of a zero-free run of group indices; splits at the
// largest family of positions sharing (boundary product, R-class of the
// next group image), which forces equal images on the middle pieces
int segment(const Ctx& c, const std::vector<int>& run, int slo, int shi,
            const std::vector<int>& gimg, const std::vector<int>& gtrees,
            const std::map<int, int>& rcls, std::vector<ForestNode>& nodes) {
  if (shi - slo == 1) return gtrees[static_cast<std::size_t>(run[static_cast<std::size_t>(slo)])];
  std::vector<int> bound_prod(static_cast<std::size_t>(shi) + 1, -1);
  int p = -1;
  for (int t = 0; t < shi; ++t) {
    int x = gimg[static_cast<std::size_t>(run[static_cast<std::size_t>(t)])];
    p = (p == -1) ? x : c.mul(p, x);
    bound_prod[static_cast<std::size_t>(t) + 1] = p;
  }
  std::map<std::pair<int, int>, std::vector<int>> profiles;
  for (int t = slo + 1; t < shi; ++t) {
    int x = gimg[static_cast<std::size_t>(run[static_cast<std::size_t>(t)])];
    profiles[{bound_prod[static_cast<std::size_t>(t)], rcls.at(x)}].push_back(t);
  }
  const std::vector<int>* best = nullptr;
  for (auto& [key, ts] : profiles) {
    (void)key;
    if (!best || ts.size() > best->size()) best = &ts;
  }
  std::vector<int> bounds{slo};
  bounds.insert(bounds.end(), best->begin(), best->end());
  bounds.push_back(shi);
  std::vector<int> pieces;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
    pieces.push_back(segment(c, run, bounds[i], bounds[i + 1], gimg, gtrees, rcls, nodes));

  int head = pieces.front();
  int tail = pieces.back();
  int midt = -1;
  if (pieces.size() > 2) {
    std::vector<int> mid(pieces.begin() + 1, pieces.end() - 1);
    midt = mid.size() == 1 ? mid[0] : make_node(nodes, std::move(mid));
  }
  if (midt == -1) return make_node(nodes, {head, tail});
  return make_node(nodes, {head, make_node(nodes, {midt, tail})});
}

int run_forest(const Ctx& c, const std::vector<int>& run, const std::vector<int>& gimg,
               const std::vector<int>& gtrees, const std::set<int>& j0, int zj,
               std::vector<ForestNode>& nodes) {
  if (run.size() == 1) return gtrees[static_cast<std::size_t>(run[0])];
  std::set<int> uni = j0;
  if (zj != -1) uni.erase(zj);
  std::map<int, int> rcls = r_class_ids(c, uni);
  return segment(c, run, 0, static_cast<int>(run.size()), gimg, gtrees, rcls, nodes);
}

int build_rec(const Ctx& c, int lo, int hi, std::vector<ForestNode>& nodes) {
  int n = hi - lo;
  if (n == 1) return make_leaf(nodes, lo);
  if (n == 2) return make_node(nodes, {make_leaf(nodes, lo), make_leaf(nodes, lo + 1)});

  std::set<int> letters;
  for (int i = lo; i < hi; ++i) letters.insert(c.img[static_cast<std::size_t>(i)]);
  std::set<int> sw = closure_set(c, letters);
  if (sw.size() == 1) {
    // one element means every product is that idempotent, so a single
    // flat node is already Ramseyan
    std::vector<int> kids;
    for (int i = lo; i < hi; ++i) kids.push_back(make_leaf(nodes, i));
    return make_node(nodes, std::move(kids));
  }

  int zj = find_zero_in(c, sw);
  std::set<int> j0 = (zj == -1) ? kernel_in(c, sw) : zero_minimal_ideal_in(c, sw, zj);

  int fw = c.prod(lo, hi);
  if (!j0.count(fw)) {
    // the whole product misses the ideal, so no factor touches it either
    // (the ideal would absorb it); safe to recurse against the quotient
    return build_quotient(c, lo, hi, sw, j0, nodes);
  }

  // greedy minimal prefixes whose product lands in the ideal
  std::vector<std::pair<int, int>> gs;
  int cur = lo;
  int p = -1;
  for (int i = lo; i < hi;) {
    p = (p == -1) ? c.img[static_cast<std::size_t>(i)] : c.mul(p, c.img[static_cast<std::size_t>(i)]);
    ++i;
    if (j0.count(p)) {
      gs.push_back({cur, i});
      cur = i;
      p = -1;
    }
  }
  bool has_rem = cur < hi;

  // each group: everything before its last letter stays off the ideal,
  // so that part recurses against the quotient
  std::vector<int> gtrees;
  std::vector<int> gimg;
  for (auto& [glo, ghi] : gs) {
    gimg.push_back(c.prod(glo, ghi));
    if (ghi - glo == 1) {
      gtrees.push_back(make_leaf(nodes, glo));
    } else {
      int sub = build_quotient(c, glo, ghi - 1, sw, j0, nodes);
      gtrees.push_back(make_node(nodes, {sub, make_leaf(nodes, ghi - 1)}));
    }
  }

  // maximal stretches of groups whose running product stays nonzero
  std::vector<std::vector<int>> runs;
  std::vector<int> open;
  int runp = -1;
  for (int gi = 0; gi < static_cast<int>(gs.size()); ++gi) {
    int x = gimg[static_cast<std::size_t>(gi)];
    if (zj != -1 && x == zj) {
      if (!open.empty()) {
        runs.push_back(open);
        open.clear();
        runp = -1;
      }
      runs.push_back({gi});
      continue;
    }
    int np = (runp == -1) ? x : c.mul(runp, x);
    if (zj != -1 && np == zj) {
      runs.push_back(open);
      open = {gi};
      runp = x;
    } else {
      open.push_back(gi);
      runp = np;
    }
  }
  if (!open.empty()) runs.push_back(open);

  std::vector<int> rtrees;
  for (auto& run : runs) rtrees.push_back(run_forest(c, run, gimg, gtrees, j0, zj, nodes));

  int gtree;
  int q = static_cast<int>(rtrees.size());
  if (q == 1) {
    gtree = rtrees[0];
  } else if (q <= 5) {
    gtree = rtrees[static_cast<std::size_t>(q) - 1];
    for (int t = q - 2; t >= 0; --t)
      gtree = make_node(nodes, {rtrees[static_cast<std::size_t>(t)], gtree});
  } else {
    // pair adjacent runs; each pair's product is the zero, so the flat
    // node over the pairs is Ramseyan
    std::vector<int> pairs;
    int i = 0;
    while (i < q) {
      if (q - i == 3) {
        int ab = make_node(nodes, {rtrees[static_cast<std::size_t>(i)],
                                   rtrees[static_cast<std::size_t>(i) + 1]});
        pairs.push_back(make_node(nodes, {ab, rtrees[static_cast<std::size_t>(i) + 2]}));
        i += 3;
      } else {
        pairs.push_back(make_node(nodes, {rtrees[static_cast<std::size_t>(i)],
                                          rtrees[static_cast<std::size_t>(i) + 1]}));
        i += 2;
      }
    }
    gtree = pairs.size() == 1 ? pairs[0] : make_node(nodes, std::move(pairs));
  }

  if (has_rem) {
    int rtree = build_quotient(c, cur, hi, sw, j0, nodes);
    return make_node(nodes, {gtree, rtree});
  }
  return gtree;
}

std::vector<int> letter_images(const std::map<char, int>& images, const std::string& w,
                               int bound) {
  std::vector<int> img;
  img.reserve(w.size());
  for (char ch : w) {
    auto it = images.find(ch);
    if (it == images.end())
      throw Error("word letter '" + std::string(1, ch) + "' has no image");
    if (it->second < 0 || it->second >= bound)
      throw Error("letter image out of range");
    img.push_back(it->second);
  }
  return img;
}

}  // namespace

FactorizationForest build_forest(const FiniteSemigroup& s, const std::map<char, int>& images,
                                 const std::string& w) {
  if (w.empty()) throw Error("forest needs a nonempty word");
  Ctx ctx;
  ctx.table = s.table;
  ctx.m = s.size();
  ctx.img = letter_images(images, w, s.size());

  FactorizationForest f;
  f.root = build_rec(ctx, 0, static_cast<int>(w.size()), f.nodes);

  // images and heights live in the ambient semigroup, not whatever
  // quotient shaped a subtree; children are created before parents, so
  // one forward pass settles both
  for (auto& nd : f.nodes) {
    if (nd.children.empty()) {
      nd.image = ctx.img[static_cast<std::size_t>(nd.lo)];
      nd.height = 0;
    } else {
      int p = -1;
      int h = 0;
      for (int cid : nd.children) {
        const ForestNode& ch = f.nodes[static_cast<std::size_t>(cid)];
        p = (p == -1) ? ch.image : s.mul(p, ch.image);
        h = std::max(h, ch.height);
      }
      nd.image = p;
      nd.height = h + 1;
    }
  }
  f.height = f.nodes[static_cast<std::size_t>(f.root)].height;
  return f;
}

ForestVerification verify_ramseyan(const FactorizationForest& f, const FiniteSemigroup& s,
                                   const std::map<char, int>& images, const std::string& w) {
  ForestVerification out;
  auto fail = [&](const std::string& msg) {
    out.ok = false;
    out.violation = msg;
    return out;
  };
  if (w.empty()) return fail("empty word");
  std::vector<int> img = letter_images(images, w, s.size());

  std::vector<int> seeds(img.begin(), img.end());
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  out.closure_size = static_cast<int>(closure_in_table(s, seeds).size());
  out.bound = 9 * out.closure_size - 8;

  if (f.root < 0 || f.root >= static_cast<int>(f.nodes.size()))
    return fail("root id out of range");

  std::vector<int> rimg(f.nodes.size(), -1);
  std::vector<int> rh(f.nodes.size(), -1);
  std::vector<char> state(f.nodes.size(), 0);
  std::string err;
  std::function<bool(int)> walk = [&](int id) -> bool {
    if (id < 0 || id >= static_cast<int>(f.nodes.size())) {
      err = "child id out of range";
      return false;
    }
    std::size_t ix = static_cast<std::size_t>(id);
    if (state[ix] == 1) {
      err = "cycle among forest nodes";
      return false;
    }
    if (state[ix] == 2) {
      err = "node reached from two parents";
      return false;
    }
    state[ix] = 1;
    const ForestNode& nd = f.nodes[ix];
    if (nd.lo < 0 || nd.hi > static_cast<int>(w.size()) || nd.lo >= nd.hi) {
      err = "node slice out of range";
      return false;
    }
    if (nd.children.empty()) {
      if (nd.hi != nd.lo + 1) {
        err = "leaf covering more than one letter";
        return false;
      }
      rimg[ix] = img[static_cast<std::size_t>(nd.lo)];
      rh[ix] = 0;
    } else {
      if (nd.children.size() < 2) {
        err = "internal node with a single child";
        return false;
      }
      int at = nd.lo;
      int p = -1;
      int h = 0;
      for (int cid : nd.children) {
        if (!walk(cid)) return false;
        const ForestNode& ch = f.nodes[static_cast<std::size_t>(cid)];
        if (ch.lo != at) {
          err = "children do not tile the slice";
          return false;
        }
        at = ch.hi;
        int ci = rimg[static_cast<std::size_t>(cid)];
        p = (p == -1) ? ci : s.mul(p, ci);
        h = std::max(h, rh[static_cast<std::size_t>(cid)]);
      }
      if (at != nd.hi) {
        err = "children stop short of the slice end";
        return false;
      }
      if (nd.children.size() >= 3) {
        int e = rimg[static_cast<std::size_t>(nd.children[0])];
        for (int cid : nd.children)
          if (rimg[static_cast<std::size_t>(cid)] != e) {
            err = "wide node with unequal child images";
            return false;
          }
        if (s.mul(e, e) != e) {
          err = "wide node image is not idempotent";
          return false;
        }
        if (p != e) {
          err = "wide node product differs from the child image";
          return false;
        }
      }
      rimg[ix] = p;
      rh[ix] = h + 1;
    }
    if (nd.image != rimg[ix]) {
      err = "stored image differs from the re-derived product";
      return false;
    }
    if (nd.height != rh[ix]) {
      err = "stored height differs from the re-derived height";
      return false;
    }
    state[ix] = 2;
    return true;
  };
  if (!walk(f.root)) return fail(err);

  const ForestNode& root = f.nodes[static_cast<std::size_t>(f.root)];
  if (root.lo != 0 || root.hi != static_cast<int>(w.size()))
    return fail("root does not cover the whole word");
  out.height = rh[static_cast<std::size_t>(f.root)];
  if (f.height != out.height) return fail("stored forest height differs");
  if (out.height > out.bound) return fail("height exceeds the bound");
  out.ok = true;
  return out;
}

GenerationCheck idempotent_generation_check(const FiniteSemigroup& s, const FiniteSemigroup& t,
                                            const std::vector<int>& phi,
                                            const std::vector<int>& gens_a) {
  HomCheck hc = hom_check(s, t, phi);
  if (!hc.ok) throw NotHomomorphism(hc.a, hc.b, "generation check needs a homomorphism");
  std::vector<int> idem = idempotents(t);
  std::set<int> eset(idem.begin(), idem.end());
  GenerationCheck out;
  std::vector<int> seeds = gens_a;
  for (int x = 0; x < s.size(); ++x)
    if (eset.count(phi[static_cast<std::size_t>(x)])) {
      seeds.push_back(x);
      ++out.preimage_size;
    }
  out.closure_size = static_cast<int>(closure_in_table(s, seeds).size());
  out.ok = out.closure_size == s.size();
  return out;
}

KernelGenReport nilpotent_kernel_generators(const FiniteSemigroup& s, const FiniteSemigroup& n,
                                            const std::vector<int>& phi,
                                            const std::vector<int>& gens_a) {
  HomCheck hc = hom_check(s, n, phi);
  if (!hc.ok) throw NotHomomorphism(hc.a, hc.b, "kernel generator check needs a homomorphism");
  auto z = zero_element(n);
  if (!z) throw NoZero();

  KernelGenReport rep;
  std::set<int> power;
  for (int x = 0; x < n.size(); ++x) power.insert(x);
  std::set<int> zero_only{*z};
  rep.nil_index = 1;
  while (power != zero_only) {
    std::set<int> next;
    for (int x : power)
      for (int y = 0; y < n.size(); ++y) next.insert(n.mul(x, y));
    power = std::move(next);
    ++rep.nil_index;
    if (rep.nil_index > n.size() + 1) throw Error("target semigroup is not nilpotent");
  }

  std::set<int> ker;
  for (int x = 0; x < s.size(); ++x)
    if (phi[static_cast<std::size_t>(x)] == *z) ker.insert(x);
  rep.kernel.assign(ker.begin(), ker.end());

  // products of generator words, one set per length 1 .. 2n-1
  int ni = rep.nil_index;
  std::vector<std::set<int>> by_len;
  by_len.emplace_back(gens_a.begin(), gens_a.end());
  for (int k = 2; k <= 2 * ni - 1; ++k) {
    std::set<int> next;
    for (int p : by_len.back())
      for (int g : gens_a) next.insert(s.mul(p, g));
    by_len.push_back(std::move(next));
  }

  auto reading = [&](bool inside) {
    KernelGenReading r;
    std::set<int> b;
    for (int k = 1; k <= 2 * ni - 1; ++k) {
      const std::set<int>& a = by_len[static_cast<std::size_t>(k) - 1];
      if (k >= ni) {
        b.insert(a.begin(), a.end());
      } else {
        for (int x : a)
          if (static_cast<bool>(ker.count(x)) == inside) b.insert(x);
      }
    }
    r.b_set.assign(b.begin(), b.end());
    r.inside_kernel = true;
    for (int x : r.b_set)
      if (!ker.count(x)) {
        r.inside_kernel = false;
        break;
      }
    if (!r.b_set.empty()) {
      std::vector<int> cl = closure_in_table(s, r.b_set);
      std::set<int> cls(cl.begin(), cl.end());
      r.closure_size = static_cast<int>(cls.size());
      r.generates_kernel = cls == ker;
    } else {
      r.closure_size = 0;
      r.generates_kernel = ker.empty();
    }
    return r;
  };
  rep.literal = reading(false);
  rep.corrected = reading(true);
  return rep;
}

}  // namespace fsw
