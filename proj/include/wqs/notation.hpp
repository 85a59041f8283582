// Text form of monomials and polynomials: y^7, t*y^5*x, x0^2*x3.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wqs/poly.hpp"

namespace wqs {

class VariableNames {
 public:
  // x, y, z, t, w for arity up to five; x0, x1, ... beyond that
  explicit VariableNames(std::size_t arity);
  VariableNames(std::size_t arity, std::string letters);

  std::size_t arity() const { return arity_; }
  std::string name(int i) const;
  // accepts a letter or the index fallback x<i>; throws on anything else
  int index_of(std::string_view token) const;

 private:
  std::size_t arity_;
  std::string letters_;
};

std::string format_monomial(const Exponents& e, const VariableNames& names);
std::string format_poly(const SparsePoly& f, const VariableNames& names);
std::string format_index_set(const IndexSet& s, const VariableNames& names);

// Throws std::invalid_argument on malformed input.
Exponents parse_monomial(std::string_view text, const VariableNames& names);
std::vector<Exponents> parse_monomial_list(std::string_view text, const VariableNames& names);
IndexSet parse_variable_list(std::string_view text, const VariableNames& names);

}  // namespace wqs
