#include "wqs/genericity.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace wqs {

CritCheck check_condition_crit(std::span<const int> weights, int d, int p) {
  CritCheck c;
  c.has_weight_one = std::find(weights.begin(), weights.end(), 1) != weights.end();
  c.degree_bound = std::all_of(weights.begin(), weights.end(), [d](int a) { return d >= 2 * a; });
  const int n = static_cast<int>(weights.size()) - 1;
  if (p == 2 && n % 2 == 1)
    c.char_two_clause = std::count_if(weights.begin(), weights.end(), [d](int a) { return d >= 3 * a; }) >= 2;
  else
    c.char_two_clause = true;
  return c;
}

CdgenReport check_cdgen_arithmetic(std::span<const int> base, const WeightSystem& z_ambient, int d,
                                   bool z_is_hypersurface) {
  CdgenReport r;
  const int z_dim = z_ambient.dim() - (z_is_hypersurface ? 1 : 0);
  r.n_ok = z_dim >= 3;
  r.delta = d - std::accumulate(base.begin(), base.end(), 0);
  r.section_exists = r.delta >= 0 && !enumerate_monomials(z_ambient, r.delta).empty();
  r.wf = wps_is_well_formed(z_ambient) && (!z_is_hypersurface || hypersurface_well_formed_generic(z_ambient, d));
  return r;
}

int fano_index(std::span<const int> weights, int d) {
  int s = std::accumulate(weights.begin(), weights.end(), 0);
  if (s <= d) throw std::domain_error("not Fano: sum of weights " + std::to_string(s) + " <= degree " + std::to_string(d));
  return s - d;
}

std::string to_string(Rationality r) {
  return r == Rationality::RationalByCriterion ? "RATIONAL_BY_CRITERION" : "NOT_BY_CRITERION";
}

RationalityVerdict rationality_classify(std::span<const int> w, int d) {
  if (w.size() < 2) throw std::invalid_argument("need at least two weights");
  if (!std::is_sorted(w.begin(), w.end())) throw std::invalid_argument("weights must be sorted ascending");
  const int last = w[w.size() - 1], next = w[w.size() - 2];
  if (d < 2 * last) return {Rationality::RationalByCriterion, "d < 2*a_max"};
  if (d == 2 * last && d == 2 * next) return {Rationality::RationalByCriterion, "d = 2*a_max = 2*a_next"};
  return {Rationality::NotByCriterion, "neither"};
}

}  // namespace wqs
