// Sparse multivariate polynomials over F_p (p = 0: integer coefficients).
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "wqs/wps.hpp"

namespace wqs {

class SparsePoly {
 public:
  using Coeff = std::int64_t;
  using TermMap = std::map<Exponents, Coeff>;

  SparsePoly(int characteristic, std::size_t arity);
  static SparsePoly monomial(int characteristic, Exponents e, Coeff c = 1);
  static SparsePoly constant(int characteristic, std::size_t arity, Coeff c);

  int characteristic() const { return p_; }
  std::size_t arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // adds c * x^e, keeping canonical form
  void add_term(const Exponents& e, Coeff c);

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  SparsePoly operator-() const;
  SparsePoly scaled(Coeff c) const;
  SparsePoly pow(unsigned k) const;

  bool operator==(const SparsePoly&) const = default;

 private:
  Coeff reduce(Coeff c) const;
  void check_compatible(const SparsePoly& o) const;

  int p_;
  std::size_t arity_;
  TermMap terms_;
};

SparsePoly partial_derivative(const SparsePoly& f, int i);
SparsePoly restrict_to_stratum(const SparsePoly& f, const Stratum& I);

class PolyMatrix {
 public:
  PolyMatrix(std::size_t rows, std::size_t cols, int characteristic, std::size_t arity);
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int characteristic() const { return p_; }
  std::size_t arity() const { return arity_; }
  SparsePoly& at(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  const SparsePoly& at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
  PolyMatrix restricted(const Stratum& I) const;

 private:
  std::size_t rows_, cols_;
  int p_;
  std::size_t arity_;
  std::vector<SparsePoly> cells_;
};

SparsePoly matrix_determinant(const PolyMatrix& m);

// The exponent vector when f is a single term with nonzero coefficient.
std::optional<Exponents> as_nonzero_monomial(const SparsePoly& f);

}  // namespace wqs
