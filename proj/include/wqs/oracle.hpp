// Pointwise rank oracle over small extension fields.
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "wqs/wps.hpp"

namespace wqs {

// GF(p^e) for e <= 3 as F_p[t] modulo a monic irreducible found by root testing.
class ExtensionField {
 public:
  using Elem = std::vector<int>;  // e coefficients, low degree first

  ExtensionField(int p, int e);
  int characteristic() const { return p_; }
  int degree() const { return e_; }
  const std::vector<int>& modulus() const { return modulus_; }

  Elem zero() const { return Elem(static_cast<std::size_t>(e_), 0); }
  Elem one() const;
  Elem from_int(long v) const;
  bool is_zero(const Elem& a) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(Elem a, long k) const;
  Elem inv(const Elem& a) const;
  Elem random_nonzero(std::mt19937_64& rng) const;
  long order() const { return order_; }

 private:
  int p_, e_;
  long order_;
  std::vector<int> modulus_;  // monic, degree e, low degree first
};

// rank over GF(p^e) of the rows; destroys nothing, copies internally
int matrix_rank(const ExtensionField& F, std::vector<std::vector<ExtensionField::Elem>> rows);

// Minimum rank of the bordered Jacobian of the whole system at random points
// of the stratum with nonzero coordinates on it.
int oracle_rank_at_points(std::span<const Exponents> lambda, const IndexSet& stratum, int p, int e, int samples,
                          std::uint64_t seed);

}  // namespace wqs
