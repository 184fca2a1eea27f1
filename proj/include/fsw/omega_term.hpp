// Terms over variables with concatenation and omega-power, their
// evaluation on finite semigroups, and exhaustive law checking.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fsw/semigroup.hpp"

namespace fsw {

struct OmegaTerm {
  enum class Kind { Var, Concat, Omega, One, Zero };
  Kind kind = Kind::One;
  std::string var;                           // Kind::Var
  std::vector<OmegaTerm> children;           // Concat: >= 2, Omega: exactly 1

  bool operator==(const OmegaTerm&) const = default;
};

OmegaTerm t_var(const std::string& name);
OmegaTerm t_concat(std::vector<OmegaTerm> parts);   // flattens nested Concat
OmegaTerm t_omega(OmegaTerm inner);
OmegaTerm t_one();
OmegaTerm t_zero();
OmegaTerm t_pow(const OmegaTerm& base, int n);      // n >= 1, expands to Concat

struct Law {
  OmegaTerm lhs, rhs;
  enum class Kind { Equality, Inequality } kind = Kind::Equality;
  std::vector<std::string> variables;        // first-occurrence order, lhs then rhs
  std::vector<std::string> idempotent_vars;  // restricted to E(S) during checks
  std::string name;                          // catalog label, empty for parsed laws

  bool operator==(const Law&) const = default;
};

Law make_law(OmegaTerm lhs, OmegaTerm rhs, Law::Kind kind = Law::Kind::Equality,
             std::vector<std::string> idempotent_vars = {}, std::string name = {});

// Grammar: juxtaposition or '*' for product, '^w' for omega, '^N' for
// integer powers (expanded at parse time, N >= 1), '=' or '<=', tokens
// '1' and '0', parentheses. Variables are single letters other than 'w'.
Law parse_law(const std::string& text);
std::string print_term(const OmegaTerm& t);
std::string print_law(const Law& l);

int eval(const OmegaTerm& t, const std::map<std::string, int>& assignment,
         const FiniteSemigroup& s);

struct LawCheckResult {
  bool holds = false;
  // first violating assignment in enumeration order, variable name -> element
  std::optional<std::vector<std::pair<std::string, int>>> witness;
  std::uint64_t assignments = 0;
};

struct CheckOptions {
  std::uint64_t budget = 200000000000ull;    // assignment cap
};

// Exhaustive check over all assignments; variables listed in
// law.idempotent_vars range over E(S) only. Enumeration is lexicographic
// in element index following law.variables order, so the witness is
// deterministic.
LawCheckResult check_law(const FiniteSemigroup& s, const Law& law, CheckOptions opt = {});

// named law families
Law knast_law();                             // 4 search variables + e,f over E(S)
Law knast_full_law();                        // plain 6-variable form
Law pow_law(int hi, int lo);                 // x^hi = x^lo
Law omega_plus_law(int p);                   // x^w x^p = x^w
Law max_k3_law(int k, int p);                // x^{max(k,3)+p} = x^{max(k,3)}
Law rotate_omega_law(int n);                 // (x y^n)^w = (y^n x)^w
Law one_leq_pow_law(int n);                  // 1 <= x^n
Law idempotent_law();                        // x^2 = x
Law commutative_law();                       // xy = yx
Law omega_left_absorb_law();                 // x^w y = x^w
Law omega_zero_law();                        // x^w = 0

std::vector<Law> catalog();
std::optional<Law> catalog_lookup(const std::string& name);

}  // namespace fsw
