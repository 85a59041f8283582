// Weighted projective spaces: weights, monomials, coordinate strata.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wqs {

using Exponents = std::vector<int>;
using IndexSet = std::vector<int>;  // sorted, duplicate free

class WeightSystem {
 public:
  explicit WeightSystem(std::vector<int> weights);

  std::span<const int> weights() const { return weights_; }
  int operator[](std::size_t i) const { return weights_[i]; }
  std::size_t size() const { return weights_.size(); }
  // n in P(a_0,...,a_n)
  int dim() const { return static_cast<int>(weights_.size()) - 1; }

  long degree_of(std::span<const int> e) const;

  bool operator==(const WeightSystem&) const = default;

 private:
  std::vector<int> weights_;
};

// Locus where exactly the indexed coordinates are nonzero.
class Stratum {
 public:
  explicit Stratum(IndexSet on);
  const IndexSet& on() const { return on_; }
  std::size_t size() const { return on_.size(); }
  bool contains(int i) const;
  // support of e lies inside the stratum's index set
  bool supports(std::span<const int> e) const;
  bool operator==(const Stratum&) const = default;

 private:
  IndexSet on_;
};

bool wps_is_well_formed(const WeightSystem& ws);

// All exponent vectors of weighted degree d, lexicographic order.
std::vector<Exponents> enumerate_monomials(const WeightSystem& ws, int d);

// ({i : a_i = 1}, {i : a_i > 1})
std::pair<IndexSet, IndexSet> partition_by_weight_one(const WeightSystem& ws);

struct SingularStratum {
  Stratum stratum;
  int gcd;
};
std::vector<SingularStratum> singular_strata(const WeightSystem& ws);

// Codimension >= 2 for the general degree-d hypersurface against every
// singular stratum of the ambient space.
bool hypersurface_well_formed_generic(const WeightSystem& ws, int d);

bool is_prime(int p);

// Non-empty subsets of idx, ordered by size then lexicographically.
std::vector<IndexSet> nonempty_subsets(const IndexSet& idx);

}  // namespace wqs
