#include "fsw/omega_term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace fsw {

OmegaTerm t_var(const std::string& name) {
  OmegaTerm t;
  t.kind = OmegaTerm::Kind::Var;
  t.var = name;
  return t;
}

OmegaTerm t_concat(std::vector<OmegaTerm> parts) {
  std::vector<OmegaTerm> flat;
  for (auto& p : parts) {
    if (p.kind == OmegaTerm::Kind::Concat)
      for (auto& c : p.children) flat.push_back(std::move(c));
    else
      flat.push_back(std::move(p));
  }
  if (flat.empty()) throw Error("empty concatenation");
  if (flat.size() == 1) return flat[0];
  OmegaTerm t;
  t.kind = OmegaTerm::Kind::Concat;
  t.children = std::move(flat);
  return t;
}

OmegaTerm t_omega(OmegaTerm inner) {
  OmegaTerm t;
  t.kind = OmegaTerm::Kind::Omega;
  t.children.push_back(std::move(inner));
  return t;
}

OmegaTerm t_one() {
  OmegaTerm t;
  t.kind = OmegaTerm::Kind::One;
  return t;
}

OmegaTerm t_zero() {
  OmegaTerm t;
  t.kind = OmegaTerm::Kind::Zero;
  return t;
}

OmegaTerm t_pow(const OmegaTerm& base, int n) {
  if (n < 1) throw Error("power must be positive");
  if (n == 1) return base;
  std::vector<OmegaTerm> parts(n, base);
  return t_concat(std::move(parts));
}

namespace {

void collect_vars(const OmegaTerm& t, std::vector<std::string>& order,
                  std::set<std::string>& seen) {
  switch (t.kind) {
    case OmegaTerm::Kind::Var:
      if (seen.insert(t.var).second) order.push_back(t.var);
      break;
    case OmegaTerm::Kind::Concat:
    case OmegaTerm::Kind::Omega:
      for (const auto& c : t.children) collect_vars(c, order, seen);
      break;
    default:
      break;
  }
}

}  // namespace

Law make_law(OmegaTerm lhs, OmegaTerm rhs, Law::Kind kind,
             std::vector<std::string> idempotent_vars, std::string name) {
  Law l;
  l.lhs = std::move(lhs);
  l.rhs = std::move(rhs);
  l.kind = kind;
  l.idempotent_vars = std::move(idempotent_vars);
  l.name = std::move(name);
  std::set<std::string> seen;
  collect_vars(l.lhs, l.variables, seen);
  collect_vars(l.rhs, l.variables, seen);
  return l;
}

// ---- parsing ---------------------------------------------------------------

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_end() {
    skip();
    return pos >= s.size();
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }

  OmegaTerm parse_postfix() {
    skip();
    if (pos >= s.size()) throw ParseError(pos, "unexpected end of input");
    OmegaTerm base;
    char c = s[pos];
    if (c == '(') {
      ++pos;
      base = parse_sequence();
      skip();
      if (pos >= s.size() || s[pos] != ')') throw ParseError(pos, "expected ')'");
      ++pos;
    } else if (c == '1') {
      base = t_one();
      ++pos;
    } else if (c == '0') {
      base = t_zero();
      ++pos;
    } else if (std::islower(static_cast<unsigned char>(c))) {
      if (c == 'w') throw ParseError(pos, "'w' is reserved for the omega power");
      base = t_var(std::string(1, c));
      ++pos;
    } else {
      throw ParseError(pos, std::string("unexpected character '") + c + "'");
    }
    while (pos < s.size() && s[pos] == '^') {
      ++pos;
      if (pos >= s.size()) throw ParseError(pos, "dangling '^'");
      if (s[pos] == 'w') {
        base = t_omega(std::move(base));
        ++pos;
      } else if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
        int n = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
          n = n * 10 + (s[pos] - '0');
          ++pos;
        }
        if (n < 1) throw ParseError(pos, "power must be at least 1");
        base = t_pow(base, n);
      } else {
        throw ParseError(pos, "expected 'w' or an integer after '^'");
      }
    }
    return base;
  }

  OmegaTerm parse_sequence() {
    std::vector<OmegaTerm> parts;
    parts.push_back(parse_postfix());
    while (true) {
      skip();
      if (pos >= s.size()) break;
      char c = s[pos];
      if (c == ')' || c == '=' || c == '<') break;
      if (c == '*') {
        ++pos;
        skip();
      }
      parts.push_back(parse_postfix());
    }
    return t_concat(std::move(parts));
  }
};

}  // namespace

Law parse_law(const std::string& text) {
  Parser p{text};
  OmegaTerm lhs = p.parse_sequence();
  p.skip();
  Law::Kind kind;
  if (p.pos < text.size() && text[p.pos] == '=') {
    kind = Law::Kind::Equality;
    ++p.pos;
  } else if (p.pos + 1 < text.size() && text[p.pos] == '<' && text[p.pos + 1] == '=') {
    kind = Law::Kind::Inequality;
    p.pos += 2;
  } else {
    throw ParseError(p.pos, "expected '=' or '<='");
  }
  OmegaTerm rhs = p.parse_sequence();
  if (!p.at_end()) throw ParseError(p.pos, "trailing input");
  return make_law(std::move(lhs), std::move(rhs), kind);
}

std::string print_term(const OmegaTerm& t) {
  switch (t.kind) {
    case OmegaTerm::Kind::Var:
      return t.var;
    case OmegaTerm::Kind::One:
      return "1";
    case OmegaTerm::Kind::Zero:
      return "0";
    case OmegaTerm::Kind::Omega: {
      const OmegaTerm& inner = t.children[0];
      if (inner.kind == OmegaTerm::Kind::Concat)
        return "(" + print_term(inner) + ")^w";
      return print_term(inner) + "^w";
    }
    case OmegaTerm::Kind::Concat: {
      std::string out;
      for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i) out += " ";
        const OmegaTerm& c = t.children[i];
        if (c.kind == OmegaTerm::Kind::Concat)
          out += "(" + print_term(c) + ")";
        else
          out += print_term(c);
      }
      return out;
    }
  }
  return "?";
}

std::string print_law(const Law& l) {
  return print_term(l.lhs) + (l.kind == Law::Kind::Equality ? " = " : " <= ") +
         print_term(l.rhs);
}

int eval(const OmegaTerm& t, const std::map<std::string, int>& assignment,
         const FiniteSemigroup& s) {
  switch (t.kind) {
    case OmegaTerm::Kind::Var: {
      auto it = assignment.find(t.var);
      if (it == assignment.end()) throw UnboundVariable(t.var);
      return it->second;
    }
    case OmegaTerm::Kind::One:
      if (!s.identity) throw NoIdentity();
      return *s.identity;
    case OmegaTerm::Kind::Zero: {
      auto z = zero_element(s);
      if (!z) throw NoZero();
      return *z;
    }
    case OmegaTerm::Kind::Omega:
      return omega_power(s, eval(t.children[0], assignment, s));
    case OmegaTerm::Kind::Concat: {
      int acc = eval(t.children[0], assignment, s);
      for (std::size_t i = 1; i < t.children.size(); ++i)
        acc = s.mul(acc, eval(t.children[i], assignment, s));
      return acc;
    }
  }
  throw Error("malformed term");
}

// ---- exhaustive checking ---------------------------------------------------

namespace {

// flat DAG program: common subterms shared, each node tagged with the
// latest variable it depends on so it is recomputed no more than needed
struct Program {
  enum Op { OpVar, OpMul, OpOmega, OpConst };
  struct Node {
    Op op;
    int a = -1, b = -1;                      // operands or variable index
    int stage = -1;                          // deepest variable dependency
  };
  std::vector<Node> nodes;
  std::map<std::tuple<int, int, int>, int> cse;
  std::vector<int> stage_of;                 // per node

  int add(Op op, int a, int b, int stage) {
    auto key = std::make_tuple(static_cast<int>(op), a, b);
    auto it = cse.find(key);
    if (it != cse.end()) return it->second;
    int id = static_cast<int>(nodes.size());
    nodes.push_back({op, a, b, stage});
    cse.emplace(key, id);
    return id;
  }

  int compile(const OmegaTerm& t, const std::map<std::string, int>& var_index,
              const FiniteSemigroup& s) {
    switch (t.kind) {
      case OmegaTerm::Kind::Var: {
        int vi = var_index.at(t.var);
        return add(OpVar, vi, -1, vi);
      }
      case OmegaTerm::Kind::One:
        if (!s.identity) throw NoIdentity();
        return add(OpConst, *s.identity, -1, -1);
      case OmegaTerm::Kind::Zero: {
        auto z = zero_element(s);
        if (!z) throw NoZero();
        return add(OpConst, *z, -1, -1);
      }
      case OmegaTerm::Kind::Omega: {
        int c = compile(t.children[0], var_index, s);
        return add(OpOmega, c, -1, nodes[c].stage);
      }
      case OmegaTerm::Kind::Concat: {
        int acc = compile(t.children[0], var_index, s);
        for (std::size_t i = 1; i < t.children.size(); ++i) {
          int c = compile(t.children[i], var_index, s);
          acc = add(OpMul, acc, c, std::max(nodes[acc].stage, nodes[c].stage));
        }
        return acc;
      }
    }
    throw Error("malformed term");
  }
};

}  // namespace

LawCheckResult check_law(const FiniteSemigroup& s, const Law& law, CheckOptions opt) {
  int n = s.size();
  if (law.kind == Law::Kind::Inequality && !s.has_order) throw OrderMissing();

  std::map<std::string, int> var_index;
  for (std::size_t i = 0; i < law.variables.size(); ++i)
    var_index[law.variables[i]] = static_cast<int>(i);
  int nvars = static_cast<int>(law.variables.size());

  Program prog;
  int lhs_id = prog.compile(law.lhs, var_index, s);
  int rhs_id = prog.compile(law.rhs, var_index, s);

  // domains: idempotent-marked variables range over E(S) only
  std::vector<std::vector<int>> domain(nvars);
  auto idem = idempotents(s);
  for (int vi = 0; vi < nvars; ++vi) {
    bool restricted = std::find(law.idempotent_vars.begin(), law.idempotent_vars.end(),
                                law.variables[vi]) != law.idempotent_vars.end();
    if (restricted) {
      domain[vi] = idem;
    } else {
      domain[vi].resize(n);
      for (int x = 0; x < n; ++x) domain[vi][x] = x;
    }
  }

  std::vector<std::vector<int>> stage_nodes(nvars);
  std::vector<int> const_nodes;
  for (std::size_t id = 0; id < prog.nodes.size(); ++id) {
    int st = prog.nodes[id].stage;
    if (st < 0)
      const_nodes.push_back(static_cast<int>(id));
    else
      stage_nodes[st].push_back(static_cast<int>(id));
  }

  std::vector<int> omega_tab = omega_table(s);
  std::vector<bool> leq_matrix;
  if (law.kind == Law::Kind::Inequality) {
    leq_matrix.assign(static_cast<std::size_t>(n) * n, false);
    for (int i = 0; i < n; ++i) leq_matrix[static_cast<std::size_t>(i) * n + i] = true;
    for (auto [a, b] : s.order) leq_matrix[static_cast<std::size_t>(a) * n + b] = true;
  }

  std::vector<int> value(prog.nodes.size(), -1);
  const int* table = s.table.data();
  auto exec = [&](int id) {
    const Program::Node& nd = prog.nodes[id];
    switch (nd.op) {
      case Program::OpConst:
        value[id] = nd.a;
        break;
      case Program::OpVar:
        break;                               // set by the driving loop
      case Program::OpMul:
        value[id] = table[static_cast<std::size_t>(value[nd.a]) * n + value[nd.b]];
        break;
      case Program::OpOmega:
        value[id] = omega_tab[value[nd.a]];
        break;
    }
  };
  for (int id : const_nodes) exec(id);

  LawCheckResult res;
  res.holds = true;

  auto violates = [&]() {
    if (law.kind == Law::Kind::Equality) return value[lhs_id] != value[rhs_id];
    return !leq_matrix[static_cast<std::size_t>(value[lhs_id]) * n + value[rhs_id]];
  };

  if (nvars == 0) {
    res.assignments = 1;
    if (violates()) {
      res.holds = false;
      res.witness = std::vector<std::pair<std::string, int>>{};
    }
    return res;
  }

  std::vector<int> assign(nvars, -1);
  // iterative nested loops, lexicographic in element index per variable
  std::function<bool(int)> descend = [&](int vi) -> bool {
    for (int val : domain[vi]) {
      assign[vi] = val;
      for (int id : stage_nodes[vi]) {
        if (prog.nodes[id].op == Program::OpVar)
          value[id] = val;
        else
          exec(id);
      }
      if (vi + 1 == nvars) {
        ++res.assignments;
        if (res.assignments > opt.budget)
          throw BudgetExceeded("law check passed " + std::to_string(opt.budget) +
                               " assignments");
        if (violates()) {
          res.holds = false;
          std::vector<std::pair<std::string, int>> w;
          for (int i = 0; i < nvars; ++i) w.push_back({law.variables[i], assign[i]});
          res.witness = std::move(w);
          return true;
        }
      } else if (descend(vi + 1)) {
        return true;
      }
    }
    return false;
  };
  descend(0);
  return res;
}

// ---- catalog ---------------------------------------------------------------

Law knast_law() {
  OmegaTerm e = t_var("e"), f = t_var("f"), x = t_var("x"), y = t_var("y"),
            z = t_var("z"), t = t_var("t");
  OmegaTerm A = t_omega(t_concat({e, x, f, y, e}));
  OmegaTerm B = t_omega(t_concat({e, z, f, t, e}));
  return make_law(t_concat({A, x, f, t, B}), t_concat({A, B}), Law::Kind::Equality,
                  {"e", "f"}, "knast");
}

Law knast_full_law() {
  OmegaTerm u = t_var("u"), v = t_var("v"), x = t_var("x"), y = t_var("y"),
            z = t_var("z"), t = t_var("t");
  OmegaTerm e = t_omega(u), f = t_omega(v);
  OmegaTerm A = t_omega(t_concat({e, x, f, y, e}));
  OmegaTerm B = t_omega(t_concat({e, z, f, t, e}));
  return make_law(t_concat({A, x, f, t, B}), t_concat({A, B}), Law::Kind::Equality, {},
                  "knast-full");
}

Law pow_law(int hi, int lo) {
  OmegaTerm x = t_var("x");
  return make_law(t_pow(x, hi), t_pow(x, lo), Law::Kind::Equality, {},
                  "x^" + std::to_string(hi) + "=x^" + std::to_string(lo));
}

Law omega_plus_law(int p) {
  OmegaTerm x = t_var("x");
  return make_law(t_concat({t_omega(x), t_pow(x, p)}), t_omega(x), Law::Kind::Equality,
                  {}, "omega-plus-" + std::to_string(p));
}

Law max_k3_law(int k, int p) {
  int m = std::max(k, 3);
  Law l = pow_law(m + p, m);
  l.name = "max-k3-" + std::to_string(k) + "-" + std::to_string(p);
  return l;
}

Law rotate_omega_law(int n) {
  OmegaTerm x = t_var("x"), y = t_var("y");
  return make_law(t_omega(t_concat({x, t_pow(y, n)})),
                  t_omega(t_concat({t_pow(y, n), x})), Law::Kind::Equality, {},
                  "rotate-omega-" + std::to_string(n));
}

Law one_leq_pow_law(int n) {
  return make_law(t_one(), t_pow(t_var("x"), n), Law::Kind::Inequality, {},
                  "one-leq-x" + std::to_string(n));
}

Law idempotent_law() {
  OmegaTerm x = t_var("x");
  return make_law(t_concat({x, x}), x, Law::Kind::Equality, {}, "x^2=x");
}

Law commutative_law() {
  OmegaTerm x = t_var("x"), y = t_var("y");
  return make_law(t_concat({x, y}), t_concat({y, x}), Law::Kind::Equality, {}, "xy=yx");
}

Law omega_left_absorb_law() {
  OmegaTerm x = t_var("x"), y = t_var("y");
  return make_law(t_concat({t_omega(x), y}), t_omega(x), Law::Kind::Equality, {},
                  "omega-left-absorb");
}

Law omega_zero_law() {
  return make_law(t_omega(t_var("x")), t_zero(), Law::Kind::Equality, {}, "x^w=0");
}

std::vector<Law> catalog() {
  std::vector<Law> out;
  out.push_back(knast_law());
  out.push_back(knast_full_law());
  out.push_back(pow_law(4, 3));
  out.push_back(omega_plus_law(1));
  out.push_back(omega_plus_law(2));
  for (int k = 2; k <= 3; ++k)
    for (int p = 2; p <= 3; ++p) out.push_back(max_k3_law(k, p));
  out.push_back(rotate_omega_law(1));
  out.push_back(rotate_omega_law(2));
  out.push_back(one_leq_pow_law(1));
  out.push_back(one_leq_pow_law(3));
  out.push_back(idempotent_law());
  out.push_back(commutative_law());
  out.push_back(omega_left_absorb_law());
  out.push_back(omega_zero_law());
  return out;
}

std::optional<Law> catalog_lookup(const std::string& name) {
  for (auto& l : catalog())
    if (l.name == name) return l;
  return std::nullopt;
}

}  // namespace fsw
