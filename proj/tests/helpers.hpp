// Shared helpers for the test suites.
#pragma once

#include <string>
#include <vector>

#include "wqs/notation.hpp"
#include "wqs/poly.hpp"
#include "wqs/wps.hpp"

namespace wqs::test {

inline Exponents mono(const std::string& text, std::size_t arity = 4) {
  return parse_monomial(text, VariableNames(arity));
}

inline std::vector<Exponents> monos(const std::string& text, std::size_t arity = 4) {
  return parse_monomial_list(text, VariableNames(arity));
}

inline IndexSet vars(const std::string& text, std::size_t arity = 4) {
  return parse_variable_list(text, VariableNames(arity));
}

inline std::string show(const SparsePoly& f) { return format_poly(f, VariableNames(f.arity())); }

inline std::string show(const Exponents& e) { return format_monomial(e, VariableNames(e.size())); }

}  // namespace wqs::test
