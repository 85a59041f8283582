// Jacobian certificate conditions on coordinate strata.
#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wqs/poly.hpp"
#include "wqs/wps.hpp"

namespace wqs {

using MonomialList = std::vector<Exponents>;

enum class CertKind { Star, StarPrime, StarK };

std::string to_string(CertKind k);
CertKind cert_kind_from_string(const std::string& s);

struct Certificate {
  CertKind kind = CertKind::Star;
  int k = -1;  // the excluded variable for StarK
  Stratum stratum{IndexSet{0}};
  MonomialList xi;
  IndexSet j;
  std::optional<Exponents> expected;

  // the matrix carries the row of monomials on top
  bool bordered() const { return xi.size() == j.size() + 1; }
  std::size_t arity() const { return xi.empty() ? 0 : xi.front().size(); }
};

class CertificateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// throws CertificateError when the cardinalities do not fit the kind
void validate_shape(const Certificate& c);

struct Verdict {
  bool holds = false;
  std::optional<Certificate> certificate;
  std::optional<Exponents> determinant;
  // present when the certificate carried an expected monomial
  std::optional<bool> matches_expected;
};

// |J| x |Xi|, entry (i, j) = d g_j / d x_{J_i}
PolyMatrix build_jacobian(std::span<const Exponents> xi, std::span<const int> j, int p);
// the row of monomials followed by build_jacobian
PolyMatrix build_bordered_jacobian(std::span<const Exponents> xi, std::span<const int> j, int p);

// differentiate, restrict to the stratum, take the determinant
SparsePoly restricted_determinant(const Certificate& c, int p);

Verdict check_witness(std::span<const Exponents> lambda, const Certificate& c, int p);

Verdict holds_star(std::span<const Exponents> lambda, const Stratum& I, int p);
Verdict holds_star_prime(std::span<const Exponents> lambda, const Stratum& I, int p);
Verdict holds_dagger(std::span<const Exponents> lambda, const Stratum& I, int p);
Verdict holds_star_k(std::span<const Exponents> lambda, const Stratum& I, int k, int p);

struct ShortcutHit {
  std::string rule;
  Certificate cert;
};

std::optional<ShortcutHit> shortcut_star(std::span<const Exponents> lambda, const Stratum& I, int p);
std::optional<ShortcutHit> shortcut_star_k(std::span<const Exponents> lambda, const Stratum& I, int k, int p);

struct ZCase {
  int id = 0;               // 1..5
  IndexSet roles;           // the variables playing x1, x2, x3
  Certificate cert;         // the certificate on the stratum of all three
  std::vector<Verdict> residual;  // case 5 only: the strata inside {x2, x3}
};

// Quasi-smoothness criterion for Z with four base variables and k excluded.
std::optional<ZCase> shortcut_Z_qsm(std::span<const Exponents> lambda, int k, int p);

}  // namespace wqs
