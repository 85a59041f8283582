#include "wqs/conditions.hpp"

#include <algorithm>
#include <array>

namespace wqs {

std::string to_string(CertKind k) {
  switch (k) {
    case CertKind::Star: return "STAR";
    case CertKind::StarPrime: return "STAR_PRIME";
    case CertKind::StarK: return "STAR_K";
  }
  return "?";
}

CertKind cert_kind_from_string(const std::string& s) {
  if (s == "STAR") return CertKind::Star;
  if (s == "STAR_PRIME") return CertKind::StarPrime;
  if (s == "STAR_K") return CertKind::StarK;
  throw std::invalid_argument("unknown certificate kind '" + s + "'");
}

void validate_shape(const Certificate& c) {
  const std::size_t n = c.stratum.size();
  if (c.xi.empty()) throw CertificateError("empty monomial subset");
  for (const auto& g : c.xi)
    if (g.size() != c.arity()) throw CertificateError("monomials of different arity");
  for (int v : c.j)
    if (v < 0 || static_cast<std::size_t>(v) >= c.arity()) throw CertificateError("variable index out of range");
  for (int v : c.stratum.on())
    if (static_cast<std::size_t>(v) >= c.arity()) throw CertificateError("stratum index out of range");
  const bool square = c.xi.size() == n && c.j.size() == n;
  const bool border = c.xi.size() == n && c.j.size() + 1 == n;
  switch (c.kind) {
    case CertKind::Star:
      if (!square) throw CertificateError("STAR needs |xi| = |J| = |I|");
      break;
    case CertKind::StarPrime:
      if (!border) throw CertificateError("STAR_PRIME needs |xi| = |I| and |J| = |I| - 1");
      break;
    case CertKind::StarK:
      if (!square && !border) throw CertificateError("STAR_K needs |xi| = |I| and |J| in {|I|, |I| - 1}");
      if (std::find(c.j.begin(), c.j.end(), c.k) != c.j.end()) throw CertificateError("STAR_K variable set contains k");
      break;
  }
}

PolyMatrix build_jacobian(std::span<const Exponents> xi, std::span<const int> j, int p) {
  if (xi.empty()) throw std::invalid_argument("empty monomial subset");
  const std::size_t arity = xi.front().size();
  PolyMatrix m(j.size(), xi.size(), p, arity);
  for (std::size_t r = 0; r < j.size(); ++r)
    for (std::size_t c = 0; c < xi.size(); ++c)
      m.at(r, c) = partial_derivative(SparsePoly::monomial(p, xi[c]), j[r]);
  return m;
}

PolyMatrix build_bordered_jacobian(std::span<const Exponents> xi, std::span<const int> j, int p) {
  if (xi.empty()) throw std::invalid_argument("empty monomial subset");
  const std::size_t arity = xi.front().size();
  PolyMatrix m(j.size() + 1, xi.size(), p, arity);
  for (std::size_t c = 0; c < xi.size(); ++c) m.at(0, c) = SparsePoly::monomial(p, xi[c]);
  for (std::size_t r = 0; r < j.size(); ++r)
    for (std::size_t c = 0; c < xi.size(); ++c)
      m.at(r + 1, c) = partial_derivative(SparsePoly::monomial(p, xi[c]), j[r]);
  return m;
}

SparsePoly restricted_determinant(const Certificate& c, int p) {
  validate_shape(c);
  PolyMatrix m = c.bordered() ? build_bordered_jacobian(c.xi, c.j, p) : build_jacobian(c.xi, c.j, p);
  return matrix_determinant(m.restricted(c.stratum));
}

Verdict check_witness(std::span<const Exponents> lambda, const Certificate& c, int p) {
  validate_shape(c);
  for (const auto& g : c.xi)
    if (std::find(lambda.begin(), lambda.end(), g) == lambda.end())
      throw CertificateError("certificate monomial outside the monomial system");
  Verdict v;
  auto mono = as_nonzero_monomial(restricted_determinant(c, p));
  v.holds = mono.has_value();
  if (v.holds) {
    v.certificate = c;
    v.determinant = mono;
  }
  if (c.expected) v.matches_expected = mono && *mono == *c.expected;
  return v;
}

namespace {

// A matrix entry that is a single term (or zero); derivatives of monomials stay like that.
struct Term {
  SparsePoly::Coeff c = 0;
  Exponents e;
};

Term entry(const Exponents& g, int row_var, const Stratum& I, int p) {
  Term t;
  if (row_var < 0) {
    if (I.supports(g)) t = {1, g};
    return t;
  }
  int ex = g[static_cast<std::size_t>(row_var)];
  if (ex == 0 || ex % p == 0) return t;
  Exponents d = g;
  --d[static_cast<std::size_t>(row_var)];
  if (I.supports(d)) t = {ex % p, std::move(d)};
  return t;
}

// Determinant of a matrix of single-term entries, as a term list.
std::optional<Exponents> single_term_det(const std::vector<std::vector<Term>>& m, int p) {
  const std::size_t n = m.size();
  std::array<std::size_t, 6> perm{};
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::vector<std::pair<Exponents, SparsePoly::Coeff>> acc;
  const std::size_t arity = [&] {
    for (const auto& row : m)
      for (const auto& t : row)
        if (t.c) return t.e.size();
    return std::size_t{0};
  }();
  if (arity == 0) return std::nullopt;
  do {
    SparsePoly::Coeff c = 1;
    Exponents e(arity, 0);
    bool zero = false;
    for (std::size_t r = 0; r < n && !zero; ++r) {
      const Term& t = m[r][perm[r]];
      if (t.c == 0) {
        zero = true;
        break;
      }
      c = c * t.c % p;
      for (std::size_t i = 0; i < arity; ++i) e[i] += t.e[i];
    }
    if (zero) continue;
    int inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    if (inversions % 2) c = (p - c) % p;
    auto it = std::find_if(acc.begin(), acc.end(), [&](const auto& x) { return x.first == e; });
    if (it == acc.end())
      acc.emplace_back(std::move(e), c);
    else
      it->second = (it->second + c) % p;
  } while (std::next_permutation(perm.begin(), perm.begin() + static_cast<long>(n)));
  std::optional<Exponents> out;
  for (auto& [e, c] : acc) {
    if (c == 0) continue;
    if (out) return std::nullopt;
    out = e;
  }
  return out;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  return idx;
}

// Pruned exhaustive search; first hit in (J lexicographic, Xi in list order).
Verdict search(std::span<const Exponents> lambda, const Stratum& I, int p, bool bordered, int avoid,
               CertKind kind) {
  Verdict none;
  if (lambda.empty()) return none;
  const std::size_t arity = lambda.front().size();
  const std::size_t size = I.size();
  const std::size_t jsize = bordered ? size - 1 : size;

  // at most one variable off the stratum, with exponent one
  std::vector<const Exponents*> cands;
  for (const auto& g : lambda) {
    int off = 0;
    bool ok = true;
    for (std::size_t i = 0; i < arity && ok; ++i) {
      if (g[i] == 0 || I.contains(static_cast<int>(i))) continue;
      ++off;
      ok = g[i] == 1 && off <= 1;
    }
    if (ok) cands.push_back(&g);
  }
  if (cands.size() < size) return none;

  IndexSet vars;
  for (std::size_t i = 0; i < arity; ++i)
    if (static_cast<int>(i) != avoid) vars.push_back(static_cast<int>(i));
  if (vars.size() < jsize) return none;

  auto jidx = first_combination(jsize);
  do {
    IndexSet J;
    for (auto t : jidx) J.push_back(vars[t]);
    std::vector<int> rows;
    if (bordered) rows.push_back(-1);
    rows.insert(rows.end(), J.begin(), J.end());

    // columns that can contribute for this J
    std::vector<std::vector<Term>> col_terms;
    std::vector<const Exponents*> live;
    for (const auto* g : cands) {
      std::vector<Term> col;
      bool any = false;
      for (int r : rows) {
        col.push_back(entry(*g, r, I, p));
        any = any || col.back().c != 0;
      }
      if (any) {
        col_terms.push_back(std::move(col));
        live.push_back(g);
      }
    }
    if (live.size() < size) continue;

    auto xidx = first_combination(size);
    std::vector<std::vector<Term>> m(rows.size(), std::vector<Term>(size));
    do {
      for (std::size_t c = 0; c < size; ++c)
        for (std::size_t r = 0; r < rows.size(); ++r) m[r][c] = col_terms[xidx[c]][r];
      if (!single_term_det(m, p)) continue;
      Certificate cert;
      cert.kind = kind;
      cert.k = avoid;
      cert.stratum = I;
      for (auto t : xidx) cert.xi.push_back(*live[t]);
      cert.j = J;
      // confirm through the exact polynomial route
      auto det = as_nonzero_monomial(restricted_determinant(cert, p));
      if (!det) continue;
      Verdict v;
      v.holds = true;
      v.certificate = std::move(cert);
      v.determinant = std::move(det);
      return v;
    } while (next_combination(xidx, live.size()));
  } while (jsize > 0 && next_combination(jidx, vars.size()));
  return none;
}

}  // namespace

Verdict holds_star(std::span<const Exponents> lambda, const Stratum& I, int p) {
  return search(lambda, I, p, false, -1, CertKind::Star);
}

Verdict holds_star_prime(std::span<const Exponents> lambda, const Stratum& I, int p) {
  return search(lambda, I, p, true, -1, CertKind::StarPrime);
}

Verdict holds_dagger(std::span<const Exponents> lambda, const Stratum& I, int p) {
  Verdict v = holds_star(lambda, I, p);
  return v.holds ? v : holds_star_prime(lambda, I, p);
}

Verdict holds_star_k(std::span<const Exponents> lambda, const Stratum& I, int k, int p) {
  Verdict v = search(lambda, I, p, false, k, CertKind::StarK);
  return v.holds ? v : search(lambda, I, p, true, k, CertKind::StarK);
}

// ---------------------------------------------------------------------------
// shortcut lemmas

namespace {

// x_i^l with l > 0 and nothing else
bool is_pure_power(const Exponents& g, int i) {
  for (std::size_t v = 0; v < g.size(); ++v)
    if ((static_cast<int>(v) == i) != (g[v] > 0)) return false;
  return true;
}

// support inside `allowed`
bool supported_in(const Exponents& g, std::initializer_list<int> allowed) {
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g[v] > 0 && std::find(allowed.begin(), allowed.end(), static_cast<int>(v)) == allowed.end()) return false;
  return true;
}

int ex(const Exponents& g, int i) { return g[static_cast<std::size_t>(i)]; }

Certificate make_cert(CertKind kind, int k, IndexSet I, MonomialList xi, IndexSet j) {
  Certificate c;
  c.kind = kind;
  c.k = k;
  c.stratum = Stratum(std::move(I));
  c.xi = std::move(xi);
  std::sort(j.begin(), j.end());
  c.j = std::move(j);
  return c;
}

bool prime_to(int v, int p) { return v % p != 0; }

}  // namespace

std::optional<ShortcutHit> shortcut_star(std::span<const Exponents> lambda, const Stratum& I, int p) {
  if (I.size() > 2) throw std::invalid_argument("shortcut_star handles strata of size at most two");
  if (lambda.empty()) return std::nullopt;
  const int n = static_cast<int>(lambda.front().size());
  const auto& on = I.on();
  auto star = [&](MonomialList xi, IndexSet j) { return make_cert(CertKind::Star, -1, on, std::move(xi), std::move(j)); };

  if (on.size() == 1) {
    const int i = on[0];
    for (const auto& g : lambda)
      if (is_pure_power(g, i) && prime_to(ex(g, i), p)) return ShortcutHit{"1", star({g}, {i})};
    for (const auto& g : lambda)
      for (int j = 0; j < n; ++j)
        if (j != i && ex(g, j) == 1 && supported_in(g, {i, j})) return ShortcutHit{"1", star({g}, {j})};
    return std::nullopt;
  }

  const int a = on[0], b = on[1];
  for (const auto& g1 : lambda)
    if (is_pure_power(g1, a) && prime_to(ex(g1, a), p))
      for (const auto& g2 : lambda)
        if (is_pure_power(g2, b) && prime_to(ex(g2, b), p)) return ShortcutHit{"2a", star({g1, g2}, {a, b})};

  for (auto [i1, i2] : {std::pair{a, b}, std::pair{b, a}})
    for (const auto& g1 : lambda)
      for (int j = 0; j < n; ++j) {
        if (I.contains(j) || ex(g1, j) != 1 || !supported_in(g1, {i1, j})) continue;
        for (const auto& g2 : lambda)
          if (is_pure_power(g2, i2) && prime_to(ex(g2, i2), p)) return ShortcutHit{"2b", star({g1, g2}, {j, i2})};
      }

  for (const auto& g1 : lambda)
    for (int j1 = 0; j1 < n; ++j1) {
      if (I.contains(j1) || ex(g1, j1) != 1 || !supported_in(g1, {a, j1})) continue;
      for (const auto& g2 : lambda)
        for (int j2 = 0; j2 < n; ++j2) {
          if (j2 == j1 || I.contains(j2) || ex(g2, j2) != 1 || !supported_in(g2, {b, j2})) continue;
          return ShortcutHit{"2c", star({g1, g2}, {j1, j2})};
        }
    }
  return std::nullopt;
}

std::optional<ShortcutHit> shortcut_star_k(std::span<const Exponents> lambda, const Stratum& I, int k, int p) {
  if (I.size() > 2) throw std::invalid_argument("shortcut_star_k handles strata of size at most two");
  if (lambda.empty()) return std::nullopt;
  const int n = static_cast<int>(lambda.front().size());
  const auto& on = I.on();
  auto cert = [&](MonomialList xi, IndexSet j) { return make_cert(CertKind::StarK, k, on, std::move(xi), std::move(j)); };
  auto off = [&](int j) { return j != k && !I.contains(j); };

  if (on.size() == 1) {
    const int i = on[0];
    for (const auto& g : lambda)
      if (is_pure_power(g, i)) return ShortcutHit{"1a", cert({g}, {})};
    for (const auto& g : lambda)
      for (int j = 0; j < n; ++j)
        if (off(j) && ex(g, i) > 0 && ex(g, j) == 1 && supported_in(g, {i, j}))
          return ShortcutHit{"1b", cert({g}, {j})};
    return std::nullopt;
  }

  if (!I.contains(k)) {
    const int a = on[0], b = on[1];
    for (std::size_t s = 0; s < lambda.size(); ++s) {
      const auto& g1 = lambda[s];
      if (!supported_in(g1, {a, b})) continue;
      for (std::size_t t = s + 1; t < lambda.size(); ++t) {
        const auto& g2 = lambda[t];
        if (!supported_in(g2, {a, b})) continue;
        if (prime_to(ex(g2, a) - ex(g1, a), p)) return ShortcutHit{"2a", cert({g1, g2}, {a})};
        if (prime_to(ex(g2, b) - ex(g1, b), p)) return ShortcutHit{"2a", cert({g1, g2}, {b})};
      }
    }
    for (auto [i1, i2] : {std::pair{a, b}, std::pair{b, a}})
      for (const auto& g1 : lambda)
        if (is_pure_power(g1, i1))
          for (const auto& g2 : lambda)
            for (int j = 0; j < n; ++j)
              if (off(j) && ex(g2, i2) > 0 && ex(g2, j) == 1 && supported_in(g2, {i2, j}))
                return ShortcutHit{"2b", cert({g1, g2}, {j})};
    for (const auto& g1 : lambda)
      for (int j1 = 0; j1 < n; ++j1) {
        if (!off(j1) || ex(g1, a) == 0 || ex(g1, j1) != 1 || !supported_in(g1, {a, j1})) continue;
        for (const auto& g2 : lambda)
          for (int j2 = 0; j2 < n; ++j2)
            if (j2 != j1 && off(j2) && ex(g2, b) > 0 && ex(g2, j2) == 1 && supported_in(g2, {b, j2}))
              return ShortcutHit{"2c", cert({g1, g2}, {j1, j2})};
      }
    return std::nullopt;
  }

  const int i = on[0] == k ? on[1] : on[0];
  // x_k^a x_i^b x_j with j off the stratum
  auto linear_off = [&](const Exponents& g, int& j_out) {
    for (int j = 0; j < n; ++j)
      if (off(j) && ex(g, j) == 1 && supported_in(g, {i, k, j})) {
        j_out = j;
        return true;
      }
    return false;
  };
  for (const auto& g1 : lambda) {
    int j1 = -1;
    if (!linear_off(g1, j1)) continue;
    for (const auto& g2 : lambda) {
      int j2 = -1;
      if (linear_off(g2, j2) && j2 != j1) return ShortcutHit{"3a", cert({g1, g2}, {j1, j2})};
    }
  }
  for (const auto& g1 : lambda) {
    int j = -1;
    if (!linear_off(g1, j)) continue;
    for (const auto& g2 : lambda)
      if (supported_in(g2, {i, k})) return ShortcutHit{"3b", cert({g1, g2}, {j})};
  }
  for (const auto& g1 : lambda)
    if (is_pure_power(g1, k))
      for (const auto& g2 : lambda)
        if (ex(g2, i) > 0 && prime_to(ex(g2, i), p) && supported_in(g2, {i, k}))
          return ShortcutHit{"3c", cert({g1, g2}, {i})};
  for (const auto& g1 : lambda)
    if (ex(g1, k) > 0 && ex(g1, i) == 1 && supported_in(g1, {i, k}))
      for (const auto& g2 : lambda)
        if (is_pure_power(g2, i) && prime_to(ex(g2, i) - 1, p)) return ShortcutHit{"3d", cert({g1, g2}, {i})};
  return std::nullopt;
}

std::optional<ZCase> shortcut_Z_qsm(std::span<const Exponents> lambda, int k, int p) {
  if (lambda.empty()) return std::nullopt;
  if (lambda.front().size() != 4) throw std::invalid_argument("shortcut_Z_qsm needs exactly four base variables");
  if (k < 0 || k > 3) throw std::invalid_argument("k out of range");
  IndexSet others;
  for (int v = 0; v < 4; ++v)
    if (v != k) others.push_back(v);

  auto pure = [&](int v) {
    std::vector<const Exponents*> out;
    for (const auto& g : lambda)
      if (is_pure_power(g, v)) out.push_back(&g);
    return out;
  };
  // x_a^l x_b with l > 0
  auto times = [&](int a, int b) {
    std::vector<const Exponents*> out;
    for (const auto& g : lambda)
      if (ex(g, a) > 0 && ex(g, b) == 1 && supported_in(g, {a, b})) out.push_back(&g);
    return out;
  };
  auto hit = [&](int id, IndexSet roles, MonomialList xi, IndexSet j) {
    ZCase z;
    z.id = id;
    z.roles = roles;
    z.cert = make_cert(CertKind::StarK, k, others, std::move(xi), std::move(j));
    return z;
  };

  std::vector<IndexSet> perms;
  IndexSet r = others;
  do perms.push_back(r);
  while (std::next_permutation(r.begin(), r.end()));

  for (int id = 1; id <= 5; ++id) {
    for (const auto& roles : perms) {
      const int x1 = roles[0], x2 = roles[1], x3 = roles[2];
      switch (id) {
        case 1:
          for (auto* g1 : pure(x1))
            for (auto* g2 : pure(x2))
              for (auto* g3 : pure(x3)) {
                IndexSet j;
                for (auto [g, v] : {std::pair{g1, x1}, std::pair{g2, x2}, std::pair{g3, x3}})
                  if (prime_to(ex(*g, v), p)) j.push_back(v);
                if (j.size() >= 2) {
                  j.resize(2);
                  return hit(1, roles, {*g1, *g2, *g3}, j);
                }
              }
          break;
        case 2:
          for (auto* g1 : pure(x1))
            for (auto* g2 : pure(x2))
              for (auto* g3 : times(x3, x1)) {
                if (!prime_to(ex(*g3, x3), p)) continue;
                if (prime_to(ex(*g1, x1), p)) return hit(2, roles, {*g1, *g2, *g3}, {x1, x3});
                if (prime_to(ex(*g2, x2), p)) return hit(2, roles, {*g1, *g2, *g3}, {x2, x3});
              }
          break;
        case 3:
          for (auto* g1 : pure(x1)) {
            if (prime_to(ex(*g1, x1), p)) continue;
            for (auto* g2 : times(x2, x1))
              for (auto* g3 : times(x3, x2)) return hit(3, roles, {*g1, *g2, *g3}, {x1, x2});
          }
          break;
        case 4:
          for (auto* g1 : times(x1, x2))
            for (auto* g2 : times(x2, x3))
              for (auto* g3 : times(x3, x1)) {
                long prod = static_cast<long>(ex(*g1, x1)) * ex(*g2, x2) * ex(*g3, x3);
                if ((prod + 1) % p != 0) return hit(4, roles, {*g1, *g2, *g3}, {x1, x2, x3});
              }
          break;
        case 5: {
          auto p1 = pure(x1);
          auto t2 = times(x1, x2);
          auto t3 = times(x1, x3);
          if (p1.empty() || t2.empty() || t3.empty()) break;
          ZCase z = hit(5, roles, {*p1[0], *t2[0], *t3[0]}, {x2, x3});
          bool ok = true;
          for (const auto& sub : nonempty_subsets(IndexSet{std::min(x2, x3), std::max(x2, x3)})) {
            z.residual.push_back(holds_star_k(lambda, Stratum(sub), k, p));
            ok = ok && z.residual.back().holds;
          }
          if (ok) return z;
          break;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace wqs
