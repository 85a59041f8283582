#include "wqs/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace wqs {

namespace {

bool has_root(const std::vector<int>& poly, int p) {
  for (int r = 0; r < p; ++r) {
    long v = 0;
    for (std::size_t i = poly.size(); i-- > 0;) v = (v * r + poly[i]) % p;
    if (v == 0) return true;
  }
  return false;
}

}  // namespace

ExtensionField::ExtensionField(int p, int e) : p_(p), e_(e), order_(1) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (e < 1 || e > 3) throw std::invalid_argument("extension degree must be 1, 2 or 3");
  for (int i = 0; i < e; ++i) order_ *= p;
  if (e == 1) {
    modulus_ = {0, 1};
    return;
  }
  // a cubic or quadratic is irreducible iff it has no root in F_p
  std::vector<int> poly(static_cast<std::size_t>(e) + 1, 0);
  poly[static_cast<std::size_t>(e)] = 1;
  long count = 1;
  for (int i = 0; i < e; ++i) count *= p;
  for (long code = 0; code < count; ++code) {
    long c = code;
    for (int i = 0; i < e; ++i) {
      poly[static_cast<std::size_t>(i)] = static_cast<int>(c % p);
      c /= p;
    }
    if (!has_root(poly, p)) {
      modulus_ = poly;
      return;
    }
  }
  throw std::logic_error("no irreducible polynomial found");
}

ExtensionField::Elem ExtensionField::one() const {
  Elem a = zero();
  a[0] = 1;
  return a;
}

ExtensionField::Elem ExtensionField::from_int(long v) const {
  Elem a = zero();
  a[0] = static_cast<int>(((v % p_) + p_) % p_);
  return a;
}

bool ExtensionField::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}

ExtensionField::Elem ExtensionField::add(const Elem& a, const Elem& b) const {
  Elem c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % p_;
  return c;
}

ExtensionField::Elem ExtensionField::sub(const Elem& a, const Elem& b) const {
  Elem c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] - b[i] + p_) % p_;
  return c;
}

ExtensionField::Elem ExtensionField::mul(const Elem& a, const Elem& b) const {
  std::vector<long> prod(2 * static_cast<std::size_t>(e_), 0);
  for (int i = 0; i < e_; ++i)
    for (int j = 0; j < e_; ++j) prod[static_cast<std::size_t>(i + j)] += static_cast<long>(a[static_cast<std::size_t>(i)]) * b[static_cast<std::size_t>(j)];
  for (int d = 2 * e_ - 2; d >= e_; --d) {
    long c = prod[static_cast<std::size_t>(d)] % p_;
    if (c == 0) continue;
    prod[static_cast<std::size_t>(d)] = 0;
    for (int i = 0; i < e_; ++i) prod[static_cast<std::size_t>(d - e_ + i)] -= c * modulus_[static_cast<std::size_t>(i)];
  }
  Elem out = zero();
  for (int i = 0; i < e_; ++i) out[static_cast<std::size_t>(i)] = static_cast<int>(((prod[static_cast<std::size_t>(i)] % p_) + p_) % p_);
  return out;
}

ExtensionField::Elem ExtensionField::pow(Elem a, long k) const {
  Elem r = one();
  while (k > 0) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

ExtensionField::Elem ExtensionField::inv(const Elem& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  return pow(a, order_ - 2);
}

ExtensionField::Elem ExtensionField::random_nonzero(std::mt19937_64& rng) const {
  std::uniform_int_distribution<int> coef(0, p_ - 1);
  while (true) {
    Elem a = zero();
    for (auto& c : a) c = coef(rng);
    if (!is_zero(a)) return a;
  }
}

int matrix_rank(const ExtensionField& F, std::vector<std::vector<ExtensionField::Elem>> rows) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && F.is_zero(rows[piv][col])) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    auto inv = F.inv(rows[rank][col]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (F.is_zero(rows[r][col])) continue;
      auto factor = F.mul(rows[r][col], inv);
      for (std::size_t c = col; c < ncols; ++c) rows[r][c] = F.sub(rows[r][c], F.mul(factor, rows[rank][c]));
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

int oracle_rank_at_points(std::span<const Exponents> lambda, const IndexSet& stratum, int p, int e, int samples,
                          std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("at least one sample");
  if (lambda.empty()) return 0;
  const ExtensionField F(p, e);
  const std::size_t n = lambda.front().size();
  std::vector<bool> on(n, false);
  for (int i : stratum) on.at(static_cast<std::size_t>(i)) = true;

  std::mt19937_64 rng(seed);
  int best = -1;
  for (int s = 0; s < samples; ++s) {
    std::vector<ExtensionField::Elem> point(n, F.zero());
    for (std::size_t i = 0; i < n; ++i)
      if (on[i]) point[i] = F.random_nonzero(rng);

    // value of coeff * x^e at the point; zero as soon as an off-stratum variable appears
    auto eval = [&](const Exponents& ex, long coeff) {
      if (coeff % p == 0) return F.zero();
      auto v = F.from_int(coeff);
      for (std::size_t i = 0; i < n; ++i) {
        if (ex[i] == 0) continue;
        if (!on[i]) return F.zero();
        v = F.mul(v, F.pow(point[i], ex[i]));
      }
      return v;
    };

    std::vector<std::vector<ExtensionField::Elem>> rows(n + 1, std::vector<ExtensionField::Elem>(lambda.size()));
    for (std::size_t c = 0; c < lambda.size(); ++c) {
      const auto& g = lambda[c];
      rows[0][c] = eval(g, 1);
      for (std::size_t i = 0; i < n; ++i) {
        if (g[i] == 0) {
          rows[i + 1][c] = F.zero();
          continue;
        }
        Exponents d = g;
        --d[i];
        rows[i + 1][c] = eval(d, g[i]);
      }
    }
    int r = matrix_rank(F, std::move(rows));
    best = best < 0 ? r : std::min(best, r);
  }
  return best;
}

}  // namespace wqs
