// fsw: batch front end for the workbench. One subcommand per operation,
// output as json, tsv, or dot, written atomically when --out is given.
// Exit codes: 0 success, 1 check failure (law violated, witness failed),
// 2 usage or input error.

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fsw/digraph.hpp"
#include "fsw/error.hpp"
#include "fsw/forest.hpp"
#include "fsw/json_io.hpp"
#include "fsw/omega_term.hpp"
#include "fsw/semigroup.hpp"
#include "fsw/sk.hpp"
#include "fsw/synthesis.hpp"
#include "fsw/words.hpp"

using namespace fsw;

namespace {

std::string opt_format = "tsv";
std::string opt_out;
std::uint64_t opt_budget = 0;

std::size_t closure_budget() {
  return opt_budget ? static_cast<std::size_t>(opt_budget) : 500000;
}

void emit(const std::string& text) {
  if (!opt_out.empty())
    save_text_file(opt_out, text);
  else
    std::fputs(text.c_str(), stdout);
}

void emit_json(const nlohmann::json& j) { emit(j.dump(2) + "\n"); }

const char* yn(bool b) { return b ? "true" : "false"; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<long> parse_longs(const std::string& s) {
  std::vector<long> out;
  for (const std::string& tok : split(s, ',')) {
    if (tok.empty()) throw Error("empty entry in list '" + s + "'");
    out.push_back(std::stol(tok));
  }
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (long v : parse_longs(s)) out.push_back(static_cast<int>(v));
  return out;
}

std::map<char, int> parse_images(const std::string& s) {
  std::map<char, int> out;
  for (const std::string& tok : split(s, ',')) {
    if (tok.size() < 3 || tok[1] != '=')
      throw Error("image entry '" + tok + "' is not of the form letter=index");
    out[tok[0]] = std::stoi(tok.substr(2));
  }
  return out;
}

FiniteSemigroup load_semigroup(const std::string& path) {
  return semigroup_from_json(load_json_file(path));
}

LabeledDigraph load_digraph(const std::string& path) {
  return digraph_from_json(load_json_file(path));
}

std::string semigroup_tsv(const FiniteSemigroup& s) {
  std::string out = "size\t" + std::to_string(s.size()) + "\n";
  if (!s.convention.empty()) out += "convention\t" + s.convention + "\n";
  if (s.identity) out += "identity\t" + std::to_string(*s.identity) + "\n";
  for (int i = 0; i < s.size(); ++i)
    out += "element\t" + std::to_string(i) + "\t" + s.names[static_cast<std::size_t>(i)] + "\n";
  for (int i = 0; i < s.size(); ++i) {
    out += "row\t" + std::to_string(i);
    for (int j = 0; j < s.size(); ++j) out += "\t" + std::to_string(s.mul(i, j));
    out += "\n";
  }
  return out;
}

std::string digraph_tsv(const LabeledDigraph& g) {
  std::string out;
  for (int v = 0; v < g.size(); ++v)
    out += "vertex\t" + std::to_string(v) + "\t" + g.vertex_names[static_cast<std::size_t>(v)] +
           "\n";
  for (const auto& [a, c, b] : g.edges)
    out += "edge\t" + g.vertex_names[static_cast<std::size_t>(a)] + "\t" + std::string(1, c) +
           "\t" + g.vertex_names[static_cast<std::size_t>(b)] + "\n";
  for (const auto& [name, v] : g.basepoints)
    out += "basepoint\t" + name + "\t" + std::to_string(v) + "\n";
  return out;
}

void emit_digraph(const LabeledDigraph& g) {
  if (opt_format == "json")
    emit_json(digraph_to_json(g));
  else if (opt_format == "dot")
    emit(to_dot(g));
  else
    emit(digraph_tsv(g));
}

void emit_semigroup(const FiniteSemigroup& s) {
  if (opt_format == "json")
    emit_json(semigroup_to_json(s));
  else if (opt_format == "dot")
    throw Error("dot output applies to graph commands only");
  else
    emit(semigroup_tsv(s));
}

std::string stage_lines(const std::vector<WitnessStage>& stages) {
  std::string out;
  for (const auto& st : stages) {
    out += "stage\t" + st.name + "\t" + (st.ok ? "ok" : "FAIL");
    if (!st.detail.empty()) out += "\t" + st.detail;
    out += "\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite semigroup workbench"};
  app.require_subcommand(1);
  app.add_option("--format", opt_format, "output format: json, tsv, or dot")
      ->check(CLI::IsMember({"json", "tsv", "dot"}));
  app.add_option("--out", opt_out, "write output to this path (atomic)");
  app.add_option("--budget", opt_budget, "closure / assignment budget override");

  int rc = 0;

  // ptm: iterates of a -> ab, b -> ba
  auto* c_ptm = app.add_subcommand("ptm", "overlap-free iterate of the doubling substitution");
  int ptm_n = 0;
  std::string ptm_letter = "a";
  bool ptm_check = false;
  c_ptm->add_option("--n", ptm_n, "iteration count")->required();
  c_ptm->add_option("--letter", ptm_letter, "starting letter, a or b");
  c_ptm->add_flag("--check", ptm_check, "report length and overlap-freeness instead");
  c_ptm->fallthrough();
  c_ptm->callback([&] {
    if (ptm_letter.size() != 1 || (ptm_letter[0] != 'a' && ptm_letter[0] != 'b'))
      throw Error("--letter must be a or b");
    std::string w = iterate(ptm_substitution(), ptm_letter[0], ptm_n);
    if (opt_format == "json") {
      emit_json({{"word", w},
                 {"length", w.size()},
                 {"overlap_free", is_overlap_free(w)}});
    } else if (ptm_check) {
      emit("length=" + std::to_string(w.size()) +
           " overlap_free=" + yn(is_overlap_free(w)) + "\n");
    } else {
      emit(w + "\n");
    }
  });

  // subst: iterates of a -> abc, b -> ac, c -> b
  auto* c_subst = app.add_subcommand("subst", "square-free iterate of the three-letter substitution");
  int subst_n = 0;
  std::string subst_letter = "a";
  bool subst_check = false;
  c_subst->add_option("--n", subst_n, "iteration count")->required();
  c_subst->add_option("--letter", subst_letter, "starting letter, a, b, or c");
  c_subst->add_flag("--check", subst_check, "report length and freeness tests instead");
  c_subst->fallthrough();
  c_subst->callback([&] {
    if (subst_letter.size() != 1 || subst_letter[0] < 'a' || subst_letter[0] > 'c')
      throw Error("--letter must be a, b, or c");
    std::string w = iterate(squarefree_substitution(), subst_letter[0], subst_n);
    if (opt_format == "json") {
      emit_json({{"word", w},
                 {"length", w.size()},
                 {"square_free", is_square_free(w)},
                 {"cube_free", is_cube_free(w)}});
    } else if (subst_check) {
      emit("length=" + std::to_string(w.size()) + " square_free=" + yn(is_square_free(w)) +
           " cube_free=" + yn(is_cube_free(w)) + "\n");
    } else {
      emit(w + "\n");
    }
  });

  // flower: one basepoint, one labeled cycle per word
  auto* c_flower = app.add_subcommand("flower", "flower graph of a word list");
  std::string flower_words;
  c_flower->add_option("--words", flower_words, "comma-separated petal words")->required();
  c_flower->fallthrough();
  c_flower->callback([&] { emit_digraph(flower(split(flower_words, ','))); });

  // fold: merge until deterministic and codeterministic
  auto* c_fold = app.add_subcommand("fold", "Stallings fold of a graph or flower");
  std::string fold_words, fold_graph;
  unsigned fold_seed = 0;
  c_fold->add_option("--words", fold_words, "comma-separated petal words");
  c_fold->add_option("--graph", fold_graph, "digraph json file");
  c_fold->add_option("--seed", fold_seed, "merge order seed");
  c_fold->fallthrough();
  c_fold->callback([&] {
    if (fold_words.empty() == fold_graph.empty())
      throw Error("fold needs exactly one of --words and --graph");
    LabeledDigraph g =
        fold_graph.empty() ? flower(split(fold_words, ',')) : load_digraph(fold_graph);
    emit_digraph(stallings_fold(g, fold_seed));
  });

  // transition-monoid: partial-map monoid of a graph
  auto* c_tm = app.add_subcommand("transition-monoid", "partial-map monoid of a labeled graph");
  int tm_gamma = -1, tm_mn = -1;
  std::string tm_graph;
  bool tm_stats = false;
  c_tm->add_option("--gamma", tm_gamma, "flower of the two doubling iterates of length 2^n");
  c_tm->add_option("--mn", tm_mn, "disjoint union of the flowers 0..n");
  c_tm->add_option("--graph", tm_graph, "digraph json file");
  c_tm->add_flag("--stats", tm_stats, "print summary predicates instead of the table");
  c_tm->fallthrough();
  c_tm->callback([&] {
    int sources = (tm_gamma >= 0) + (tm_mn >= 0) + !tm_graph.empty();
    if (sources != 1)
      throw Error("transition-monoid needs exactly one of --gamma, --mn, --graph");
    LabeledDigraph g = tm_gamma >= 0 ? gamma_graph(tm_gamma)
                       : tm_mn >= 0  ? gamma_union(tm_mn)
                                     : load_digraph(tm_graph);
    TransMonoid tm = transition_monoid(g, closure_budget());
    if (tm_stats) {
      Predicates p = predicates(tm.sg);
      int letter_words = tm.sg.size() - (tm.identity_by_nonempty_word ? 0 : 1);
      std::string line =
          "size=" + std::to_string(tm.sg.size()) + ", aperiodic=" + yn(p.is_aperiodic) +
          ", inverse=" + yn(p.is_inverse) + ", idempotents=" +
          std::to_string(p.idempotent_list.size()) + ", letter_words=" +
          std::to_string(letter_words) + ", identity_by_nonempty_word=" +
          yn(tm.identity_by_nonempty_word) + ", empty_map=" + yn(tm.empty_map_present) + "\n";
      emit(line);
    } else {
      emit_semigroup(tm.sg);
    }
  });

  // green: class counts of a semigroup file
  auto* c_green = app.add_subcommand("green", "Green's relations of a semigroup");
  std::string green_file;
  c_green->add_option("--semigroup", green_file, "semigroup json file")->required();
  c_green->fallthrough();
  c_green->callback([&] {
    FiniteSemigroup s = load_semigroup(green_file);
    GreenData g = green(s);
    bool dj = g.d == g.j;
    if (opt_format == "json") {
      emit_json({{"r", g.r},
                 {"l", g.l},
                 {"j", g.j},
                 {"h", g.h},
                 {"d", g.d},
                 {"num_r", g.num_r},
                 {"num_l", g.num_l},
                 {"num_j", g.num_j},
                 {"num_h", g.num_h},
                 {"num_d", g.num_d},
                 {"d_equals_j", dj}});
    } else {
      emit("r=" + std::to_string(g.num_r) + " l=" + std::to_string(g.num_l) +
           " j=" + std::to_string(g.num_j) + " h=" + std::to_string(g.num_h) +
           " d=" + std::to_string(g.num_d) + "\nd_equals_j=" + yn(dj) + "\n");
    }
  });

  // check: exhaustive law check against a semigroup file
  auto* c_check = app.add_subcommand("check", "check an identity on a semigroup");
  std::string check_law_text, check_file;
  c_check->add_option("--law", check_law_text, "catalog name or expression, e.g. 'x^4 = x^3'")
      ->required();
  c_check->add_option("--semigroup", check_file, "semigroup json file")->required();
  c_check->fallthrough();
  c_check->callback([&] {
    FiniteSemigroup s = load_semigroup(check_file);
    std::optional<Law> named = catalog_lookup(check_law_text);
    Law law = named ? *named : parse_law(check_law_text);
    CheckOptions copt;
    if (opt_budget) copt.budget = opt_budget;
    LawCheckResult r = check_law(s, law, copt);
    if (opt_format == "json") {
      nlohmann::json j{{"law", print_law(law)},
                       {"holds", r.holds},
                       {"assignments", r.assignments}};
      if (r.witness) {
        nlohmann::json w = nlohmann::json::object();
        for (const auto& [var, el] : *r.witness)
          w[var] = s.names[static_cast<std::size_t>(el)];
        j["witness"] = w;
      }
      emit_json(j);
    } else {
      std::string out = "law\t" + print_law(law) + "\nholds=" + yn(r.holds) +
                        "\nassignments=" + std::to_string(r.assignments) + "\n";
      if (r.witness)
        for (const auto& [var, el] : *r.witness)
          out += "witness\t" + var + "\t" + s.names[static_cast<std::size_t>(el)] + "\n";
      emit(out);
    }
    if (!r.holds) rc = 1;
  });

  // sk: the presented family and its witnesses
  auto* c_sk = app.add_subcommand("sk", "members of the presented two-generator family");
  int sk_k = 1, sk_p = 0;
  std::string sk_variant = "S";
  bool sk_witness = false;
  c_sk->add_option("--k", sk_k, "family index, k >= 1")->required();
  c_sk->add_option("--p", sk_p, "prime parameter; nonzero selects the prime family");
  c_sk->add_option("--variant", sk_variant, "which member: S, T, or R");
  c_sk->add_flag("--witness", sk_witness, "run the staged embedding witness instead");
  c_sk->fallthrough();
  c_sk->callback([&] {
    SkVariant var = sk_p > 0 ? SkVariant::Skp : SkVariant::Sk;
    if (sk_witness) {
      MalcevReport r = malcev_witness_check(sk_k, var, sk_p);
      emit(stage_lines(r.stages) + "ok=" + yn(r.ok) + "\n");
      if (!r.ok) rc = 1;
      return;
    }
    if (sk_variant == "R") {
      RBuild rb = build_r(sk_k, var, sk_p);
      emit_semigroup(rb.r);
    } else if (sk_variant == "S" || sk_variant == "T") {
      SkBuild b = build_sk(sk_k, var, sk_p, sk_variant == "S" ? SkWhich::S : SkWhich::T);
      emit_semigroup(b.sg);
    } else {
      throw Error("--variant must be S, T, or R");
    }
  });

  // separate: evaluate two separating word sequences until stabilization
  auto* c_sep = app.add_subcommand("separate", "distinguish two integer sequences in the family");
  std::string sep_s, sep_t;
  int sep_p = 0;
  c_sep->add_option("--seq1", sep_s, "comma-separated positive integers")->required();
  c_sep->add_option("--seq2", sep_t, "comma-separated positive integers")->required();
  c_sep->add_option("--p", sep_p, "prime parameter; nonzero selects the prime family");
  c_sep->fallthrough();
  c_sep->callback([&] {
    SkVariant var = sep_p > 0 ? SkVariant::Skp : SkVariant::Sk;
    SeparationReport r = separation_check(parse_longs(sep_s), parse_longs(sep_t), var, sep_p);
    if (opt_format == "json") {
      emit_json({{"j", r.j},
                 {"k", r.k},
                 {"image_seq1", r.image_s.display()},
                 {"image_seq2", r.image_t.display()},
                 {"stabilized_at", r.stabilized_at},
                 {"matches_closed_form", r.matches_closed_form},
                 {"separated", r.separated}});
    } else {
      emit("j=" + std::to_string(r.j) + "\nk=" + std::to_string(r.k) + "\nimage_seq1=" +
           r.image_s.display() + "\nimage_seq2=" + r.image_t.display() + "\nstabilized_at=" +
           std::to_string(r.stabilized_at) + "\nmatches_closed_form=" +
           yn(r.matches_closed_form) + "\nseparated=" + yn(r.separated) + "\n");
    }
    if (!r.separated) rc = 1;
  });

  // forest: build and verify a factorization forest
  auto* c_forest = app.add_subcommand("forest", "Ramseyan factorization forest of a word");
  std::string forest_file, forest_images, forest_word;
  c_forest->add_option("--semigroup", forest_file, "semigroup json file")->required();
  c_forest->add_option("--images", forest_images, "letter images, e.g. a=0,b=1")->required();
  c_forest->add_option("--word", forest_word, "input word")->required();
  c_forest->fallthrough();
  c_forest->callback([&] {
    FiniteSemigroup s = load_semigroup(forest_file);
    std::map<char, int> img = parse_images(forest_images);
    FactorizationForest f = build_forest(s, img, forest_word);
    ForestVerification v = verify_ramseyan(f, s, img, forest_word);
    if (opt_format == "json") {
      nlohmann::json nodes = nlohmann::json::array();
      for (const auto& nd : f.nodes)
        nodes.push_back({{"lo", nd.lo},
                         {"hi", nd.hi},
                         {"image", nd.image},
                         {"children", nd.children},
                         {"height", nd.height}});
      emit_json({{"ok", v.ok},
                 {"violation", v.violation},
                 {"height", v.height},
                 {"closure_size", v.closure_size},
                 {"bound", v.bound},
                 {"root", f.root},
                 {"nodes", nodes}});
    } else {
      std::string out = "ok=" + std::string(yn(v.ok)) + " height=" + std::to_string(v.height) +
                        " closure=" + std::to_string(v.closure_size) +
                        " bound=" + std::to_string(v.bound) +
                        " nodes=" + std::to_string(f.nodes.size()) + "\n";
      if (!v.ok) out += "violation\t" + v.violation + "\n";
      emit(out);
    }
    if (!v.ok) rc = 1;
  });

  // lift: the two words that agree on one level and split on the next
  auto* c_lift = app.add_subcommand("lift", "lifted word pair over a flower level");
  int lift_base = 0;
  std::string lift_w;
  c_lift->add_option("--base", lift_base, "flower level n")->required();
  c_lift->add_option("--w", lift_w, "proper prefix of an n-th iterate")->required();
  c_lift->fallthrough();
  c_lift->callback([&] {
    LiftPair lp = lifting_words(lift_base, lift_w);
    if (opt_format == "json") {
      emit_json({{"u", lp.u},
                 {"v", lp.v},
                 {"same_on_level", lp.same_on_level},
                 {"level_domain_ok", lp.level_domain_ok},
                 {"next_domains_ok", lp.next_domains_ok},
                 {"distinct_on_next", lp.distinct_on_next},
                 {"ok", lp.ok}});
    } else {
      emit("u=" + lp.u + "\nv=" + lp.v + "\nsame_on_level=" + yn(lp.same_on_level) +
           "\nlevel_domain_ok=" + yn(lp.level_domain_ok) + "\nnext_domains_ok=" +
           yn(lp.next_domains_ok) + "\ndistinct_on_next=" + yn(lp.distinct_on_next) +
           "\nok=" + yn(lp.ok) + "\n");
    }
    if (!lp.ok) rc = 1;
  });

  // tree-witness: iterated lifting gives a binary tree of distinct elements
  auto* c_tree = app.add_subcommand("tree-witness", "binary tree of lifted elements");
  int tree_base = 0, tree_depth = 1;
  c_tree->add_option("--base", tree_base, "starting flower level")->required();
  c_tree->add_option("--depth", tree_depth, "lifting depth")->required();
  c_tree->fallthrough();
  c_tree->callback([&] {
    TreeWitnessReport tw = tree_witness(tree_base, tree_depth, closure_budget());
    if (opt_format == "json") {
      nlohmann::json levels = nlohmann::json::array();
      for (const auto& lv : tw.levels)
        levels.push_back({{"level", lv.level},
                          {"count", lv.count},
                          {"distinct_ok", lv.distinct_ok},
                          {"restriction_ok", lv.restriction_ok}});
      emit_json({{"ok", tw.ok}, {"levels", levels}});
    } else {
      std::string out;
      for (const auto& lv : tw.levels)
        out += "level=" + std::to_string(lv.level) + " count=" + std::to_string(lv.count) +
               " distinct=" + yn(lv.distinct_ok) + " restriction=" + yn(lv.restriction_ok) +
               "\n";
      out += "ok=" + std::string(yn(tw.ok)) + "\n";
      emit(out);
    }
    if (!tw.ok) rc = 1;
  });

  // synthesis: U(S,T,f) over the capped counter and a cyclic group
  auto* c_syn = app.add_subcommand("synthesis", "synthesis semigroup over the capped counter");
  int syn_m = 1, syn_group = 2;
  std::string syn_f;
  bool syn_witness = false;
  c_syn->add_option("--m", syn_m, "counter cap")->required();
  c_syn->add_option("--group", syn_group, "cyclic group order")->required();
  c_syn->add_option("--f", syn_f, "override map, comma-separated group indices");
  c_syn->add_flag("--witness", syn_witness, "run the staged quotient witness instead");
  c_syn->fallthrough();
  c_syn->callback([&] {
    FiniteSemigroup g = cyclic_group(syn_group);
    std::optional<std::vector<int>> fo;
    if (!syn_f.empty()) fo = parse_ints(syn_f);
    if (syn_witness) {
      try {
        SlReport r = sl_witness(syn_m, g, fo);
        emit(stage_lines(r.stages) + "u_size=" + std::to_string(r.u_size) + " kernel_j=" +
             std::to_string(r.kernel_j_classes) + " subgroups=" +
             std::to_string(r.subgroup_count) + "\nok=" + yn(r.ok) + "\n");
        if (!r.ok) rc = 1;
      } catch (const WitnessFailed& e) {
        emit(std::string("ok=false\nfailed\t") + e.what() + "\n");
        rc = 1;
      }
      return;
    }
    FiniteSemigroup m = capped_addition_monoid(syn_m);
    std::vector<int> f;
    if (fo) {
      f = *fo;
    } else {
      int pow = *g.identity;
      for (int i = 0; i < m.size(); ++i) {
        f.push_back(pow);
        pow = g.mul(pow, g.generators.front());
      }
    }
    SynthesisBuild b = synthesis_u(m, g, f, closure_budget());
    emit_semigroup(b.u);
  });

  // kernel-gens: both readings of the nilpotent kernel generator set
  auto* c_kg = app.add_subcommand("kernel-gens", "kernel generators of a nilpotent quotient");
  std::string kg_s, kg_n, kg_phi, kg_gens;
  c_kg->add_option("--semigroup", kg_s, "source semigroup json file")->required();
  c_kg->add_option("--target", kg_n, "nilpotent target semigroup json file")->required();
  c_kg->add_option("--phi", kg_phi, "comma-separated image indices, one per source element")
      ->required();
  c_kg->add_option("--gens", kg_gens, "comma-separated source generator indices")->required();
  c_kg->fallthrough();
  c_kg->callback([&] {
    FiniteSemigroup s = load_semigroup(kg_s);
    FiniteSemigroup n = load_semigroup(kg_n);
    KernelGenReport r = nilpotent_kernel_generators(s, n, parse_ints(kg_phi), parse_ints(kg_gens));
    auto reading = [](const KernelGenReading& kr) {
      nlohmann::json j{{"b_set", kr.b_set},
                       {"inside_kernel", kr.inside_kernel},
                       {"generates_kernel", kr.generates_kernel},
                       {"closure_size", kr.closure_size}};
      return j;
    };
    if (opt_format == "json") {
      emit_json({{"nil_index", r.nil_index},
                 {"kernel", r.kernel},
                 {"literal", reading(r.literal)},
                 {"corrected", reading(r.corrected)}});
    } else {
      auto line = [&](const char* name, const KernelGenReading& kr) {
        std::string out = std::string(name) + "\tinside=" + yn(kr.inside_kernel) +
                          " generates=" + yn(kr.generates_kernel) +
                          " closure=" + std::to_string(kr.closure_size) + " b={";
        for (std::size_t i = 0; i < kr.b_set.size(); ++i)
          out += (i ? "," : "") + std::to_string(kr.b_set[i]);
        return out + "}\n";
      };
      emit("nil_index=" + std::to_string(r.nil_index) +
           "\nkernel_size=" + std::to_string(r.kernel.size()) + "\n" +
           line("literal", r.literal) + line("corrected", r.corrected));
    }
    if (!r.corrected.generates_kernel) rc = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const WitnessFailed& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return rc;
}
