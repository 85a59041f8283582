#include "wqs/wps.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace wqs {

WeightSystem::WeightSystem(std::vector<int> weights) : weights_(std::move(weights)) {
  if (weights_.size() < 2) throw std::invalid_argument("weight system needs at least two weights");
  for (int a : weights_)
    if (a < 1) throw std::invalid_argument("weights must be positive");
}

long WeightSystem::degree_of(std::span<const int> e) const {
  if (e.size() != weights_.size()) throw std::invalid_argument("exponent arity mismatch");
  long d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<long>(weights_[i]) * e[i];
  return d;
}

Stratum::Stratum(IndexSet on) : on_(std::move(on)) {
  std::sort(on_.begin(), on_.end());
  on_.erase(std::unique(on_.begin(), on_.end()), on_.end());
  if (on_.empty()) throw std::invalid_argument("stratum must be non-empty");
  if (on_.front() < 0) throw std::invalid_argument("negative variable index");
}

bool Stratum::contains(int i) const { return std::binary_search(on_.begin(), on_.end(), i); }

bool Stratum::supports(std::span<const int> e) const {
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0 && !contains(static_cast<int>(i))) return false;
  return true;
}

bool wps_is_well_formed(const WeightSystem& ws) {
  auto w = ws.weights();
  for (std::size_t skip = 0; skip < w.size(); ++skip) {
    int g = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (i != skip) g = std::gcd(g, w[i]);
    if (g != 1) return false;
  }
  return true;
}

namespace {

void enumerate_rec(std::span<const int> w, std::size_t i, int rem, Exponents& cur,
                   std::vector<Exponents>& out) {
  if (i + 1 == w.size()) {
    if (rem % w[i] == 0) {
      cur[i] = rem / w[i];
      out.push_back(cur);
    }
    return;
  }
  for (int e = 0; e * w[i] <= rem; ++e) {
    cur[i] = e;
    enumerate_rec(w, i + 1, rem - e * w[i], cur, out);
  }
  cur[i] = 0;
}

}  // namespace

std::vector<Exponents> enumerate_monomials(const WeightSystem& ws, int d) {
  std::vector<Exponents> out;
  if (d < 0) return out;
  Exponents cur(ws.size(), 0);
  enumerate_rec(ws.weights(), 0, d, cur, out);
  return out;
}

std::pair<IndexSet, IndexSet> partition_by_weight_one(const WeightSystem& ws) {
  IndexSet one, more;
  for (std::size_t i = 0; i < ws.size(); ++i) (ws[i] == 1 ? one : more).push_back(static_cast<int>(i));
  return {one, more};
}

std::vector<IndexSet> nonempty_subsets(const IndexSet& idx) {
  std::vector<IndexSet> out;
  const std::size_t n = idx.size();
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
      IndexSet s;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) s.push_back(idx[i]);
      out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

std::vector<SingularStratum> singular_strata(const WeightSystem& ws) {
  const int n = static_cast<int>(ws.size());
  std::vector<std::pair<unsigned, int>> hits;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int g = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) g = std::gcd(g, ws[i]);
    if (g > 1) hits.emplace_back(mask, g);
  }
  std::vector<SingularStratum> out;
  for (auto [mask, g] : hits) {
    bool maximal = std::none_of(hits.begin(), hits.end(), [&](const auto& h) {
      return h.first != mask && (h.first & mask) == mask;
    });
    if (!maximal) continue;
    IndexSet s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back({Stratum(std::move(s)), g});
  }
  std::sort(out.begin(), out.end(),
            [](const SingularStratum& a, const SingularStratum& b) { return a.stratum.on() < b.stratum.on(); });
  return out;
}

bool hypersurface_well_formed_generic(const WeightSystem& ws, int d) {
  const auto mons = enumerate_monomials(ws, d);
  const int dim_x = ws.dim() - 1;
  for (const auto& [stratum, g] : singular_strata(ws)) {
    bool all_vanish = std::none_of(mons.begin(), mons.end(), [&](const Exponents& e) { return stratum.supports(e); });
    int k = static_cast<int>(stratum.size());
    int dim_meet = all_vanish ? k - 1 : k - 2;
    if (dim_meet > dim_x - 2) return false;
  }
  return true;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

}  // namespace wqs
