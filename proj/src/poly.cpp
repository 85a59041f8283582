#include "wqs/poly.hpp"

#include <stdexcept>

namespace wqs {

SparsePoly::SparsePoly(int characteristic, std::size_t arity) : p_(characteristic), arity_(arity) {
  if (p_ < 0) throw std::invalid_argument("negative characteristic");
}

SparsePoly SparsePoly::monomial(int characteristic, Exponents e, Coeff c) {
  SparsePoly f(characteristic, e.size());
  f.add_term(e, c);
  return f;
}

SparsePoly SparsePoly::constant(int characteristic, std::size_t arity, Coeff c) {
  return monomial(characteristic, Exponents(arity, 0), c);
}

SparsePoly::Coeff SparsePoly::reduce(Coeff c) const {
  if (p_ == 0) return c;
  c %= p_;
  return c < 0 ? c + p_ : c;
}

void SparsePoly::check_compatible(const SparsePoly& o) const {
  if (p_ != o.p_) throw std::invalid_argument("characteristic mismatch");
  if (arity_ != o.arity_) throw std::invalid_argument("arity mismatch");
}

void SparsePoly::add_term(const Exponents& e, Coeff c) {
  if (e.size() != arity_) throw std::invalid_argument("exponent arity mismatch");
  c = reduce(c);
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (fresh) return;
  it->second = reduce(it->second + c);
  if (it->second == 0) terms_.erase(it);
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  a.check_compatible(b);
  SparsePoly out(a.p_, a.arity_);
  Exponents e(a.arity_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      SparsePoly::Coeff c = a.p_ ? (a.reduce(ca) * a.reduce(cb)) : ca * cb;
      out.add_term(e, c);
    }
  return out;
}

SparsePoly SparsePoly::operator-() const { return scaled(-1); }

SparsePoly SparsePoly::scaled(Coeff k) const {
  SparsePoly out(p_, arity_);
  for (const auto& [e, c] : terms_) out.add_term(e, c * reduce(k));
  return out;
}

SparsePoly SparsePoly::pow(unsigned k) const {
  SparsePoly out = constant(p_, arity_, 1);
  SparsePoly base = *this;
  while (k) {
    if (k & 1u) out = out * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return out;
}

SparsePoly partial_derivative(const SparsePoly& f, int i) {
  if (i < 0 || static_cast<std::size_t>(i) >= f.arity()) throw std::out_of_range("variable index out of range");
  SparsePoly out(f.characteristic(), f.arity());
  for (const auto& [e, c] : f.terms()) {
    if (e[i] == 0) continue;
    Exponents g = e;
    --g[i];
    out.add_term(g, c * e[i]);
  }
  return out;
}

SparsePoly restrict_to_stratum(const SparsePoly& f, const Stratum& I) {
  SparsePoly out(f.characteristic(), f.arity());
  for (const auto& [e, c] : f.terms())
    if (I.supports(e)) out.add_term(e, c);
  return out;
}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, int characteristic, std::size_t arity)
    : rows_(rows), cols_(cols), p_(characteristic), arity_(arity),
      cells_(rows * cols, SparsePoly(characteristic, arity)) {}

PolyMatrix PolyMatrix::restricted(const Stratum& I) const {
  PolyMatrix out(rows_, cols_, p_, arity_);
  for (std::size_t k = 0; k < cells_.size(); ++k) out.cells_[k] = restrict_to_stratum(cells_[k], I);
  return out;
}

namespace {

SparsePoly det_rec(const PolyMatrix& m, std::size_t row, std::vector<std::size_t>& cols) {
  if (cols.empty()) return SparsePoly::constant(m.characteristic(), m.arity(), 1);
  SparsePoly acc(m.characteristic(), m.arity());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const SparsePoly& a = m.at(row, cols[k]);
    if (a.is_zero()) continue;
    std::size_t c = cols[k];
    cols.erase(cols.begin() + static_cast<long>(k));
    SparsePoly minor = det_rec(m, row + 1, cols);
    cols.insert(cols.begin() + static_cast<long>(k), c);
    if (minor.is_zero()) continue;
    if (k % 2 == 0)
      acc += a * minor;
    else
      acc -= a * minor;
  }
  return acc;
}

}  // namespace

SparsePoly matrix_determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() > 6) throw std::invalid_argument("matrix larger than 6x6");
  std::vector<std::size_t> cols(m.cols());
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  return det_rec(m, 0, cols);
}

std::optional<Exponents> as_nonzero_monomial(const SparsePoly& f) {
  if (f.terms().size() != 1) return std::nullopt;
  return f.terms().begin()->first;
}

}  // namespace wqs
