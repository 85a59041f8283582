// Arithmetic prerequisites attached to each family.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "wqs/wps.hpp"

namespace wqs {

struct CritCheck {
  bool has_weight_one = false;   // some a_i = 1
  bool degree_bound = false;     // d >= 2 a_i for every i
  bool char_two_clause = false;  // for p = 2 and n odd: two indices with d >= 3 a_j
  bool ok() const { return has_weight_one && degree_bound && char_two_clause; }
};

CritCheck check_condition_crit(std::span<const int> weights, int d, int p);

struct CdgenReport {
  bool n_ok = false;
  int delta = 0;
  bool section_exists = false;
  bool wf = false;
  bool ok() const { return n_ok && delta >= 0 && section_exists && wf; }
};

// base: the base weights; z_ambient: the weights of the ambient space of Z;
// z_is_hypersurface: Z is cut out by one equation of degree d in that ambient
CdgenReport check_cdgen_arithmetic(std::span<const int> base, const WeightSystem& z_ambient, int d,
                                   bool z_is_hypersurface);

// sum of the weights minus the degree; throws std::domain_error unless positive
int fano_index(std::span<const int> weights, int d);

enum class Rationality { RationalByCriterion, NotByCriterion };
std::string to_string(Rationality r);

struct RationalityVerdict {
  Rationality verdict;
  std::string clause;  // "d < 2*a_max", "d = 2*a_max = 2*a_next", or "neither"
};

// weights must be sorted ascending
RationalityVerdict rationality_classify(std::span<const int> sorted_weights, int d);

}  // namespace wqs
