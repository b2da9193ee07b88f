#pragma once

#include <string>

#include "nilmult/algebra.hpp"

namespace nilmult {

/// A(n): the abelian algebra of dimension n (n = 0 gives the zero algebra,
/// the neutral summand of direct sums).
inline NilpotentAlgebra abelian(int n) {
  if (n < 0) throw std::invalid_argument("A(n): dimension must be >= 0");
  return NilpotentAlgebra::from_structure_constants(n, {}, "A(" + std::to_string(n) + ")");
}

/// H(k): the Heisenberg algebra of dimension 2k+1, with
/// [x_{2i-1}, x_{2i}] = x_{2k+1} and one-dimensional center equal to the
/// derived subalgebra.
inline NilpotentAlgebra heisenberg(int k) {
  if (k < 1) throw std::invalid_argument("H(k): parameter must be >= 1");
  NilpotentAlgebra::Table table;
  int z = 2 * k + 1;
  for (int i = 1; i <= k; ++i) table[{2 * i - 1, 2 * i}] = {{z, Rational(1)}};
  return NilpotentAlgebra::from_structure_constants(z, std::move(table),
                                                    "H(" + std::to_string(k) + ")");
}

inline NilpotentAlgebra algebra_l4_3() {
  NilpotentAlgebra::Table table;
  table[{1, 2}] = {{3, Rational(1)}};
  table[{1, 3}] = {{4, Rational(1)}};
  return NilpotentAlgebra::from_structure_constants(4, std::move(table), "L4_3");
}

inline NilpotentAlgebra algebra_l5_5() {
  NilpotentAlgebra::Table table;
  table[{1, 2}] = {{3, Rational(1)}};
  table[{1, 3}] = {{5, Rational(1)}};
  table[{2, 4}] = {{5, Rational(1)}};
  return NilpotentAlgebra::from_structure_constants(5, std::move(table), "L5_5");
}

inline NilpotentAlgebra algebra_l5_8() {
  NilpotentAlgebra::Table table;
  table[{1, 2}] = {{4, Rational(1)}};
  table[{1, 3}] = {{5, Rational(1)}};
  return NilpotentAlgebra::from_structure_constants(5, std::move(table), "L5_8");
}

namespace detail {
inline std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ' && c != '\t') out += c;
  return out;
}

inline int parse_parameter(const std::string& name, const std::string& prefix) {
  // name is "<prefix>(<integer>)"
  std::string inner = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
  if (inner.empty() || inner.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("catalog: bad parameter in \"" + name + "\"");
  return std::stoi(inner);
}
}  // namespace detail

/// Look up a single catalog name: A(n), H(k), L4_3, L5_5, L5_8.
inline NilpotentAlgebra catalog(const std::string& raw_name) {
  std::string name = detail::strip_spaces(raw_name);
  if (name == "L4_3") return algebra_l4_3();
  if (name == "L5_5") return algebra_l5_5();
  if (name == "L5_8") return algebra_l5_8();
  if (name.size() >= 4 && name.front() == 'A' && name[1] == '(' && name.back() == ')')
    return abelian(detail::parse_parameter(name, "A"));
  if (name.size() >= 4 && name.front() == 'H' && name[1] == '(' && name.back() == ')')
    return heisenberg(detail::parse_parameter(name, "H"));
  throw std::invalid_argument("catalog: unknown algebra \"" + raw_name + "\"");
}

/// Parse a sum expression like "L4_3+A(1)" (whitespace-insensitive,
/// left-associative direct sums of catalog names).
inline NilpotentAlgebra algebra_from_expression(const std::string& expression) {
  std::string expr = detail::strip_spaces(expression);
  if (expr.empty()) throw std::invalid_argument("empty algebra expression");
  std::optional<NilpotentAlgebra> result;
  std::size_t start = 0;
  while (start <= expr.size()) {
    std::size_t plus = expr.find('+', start);
    std::string term = expr.substr(start, plus == std::string::npos ? plus : plus - start);
    NilpotentAlgebra summand = catalog(term);
    result = result ? direct_sum(*result, summand) : std::move(summand);
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return *result;
}

}  // namespace nilmult
