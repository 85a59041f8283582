// Acceptance report: one line per criterion, exit status 1 if any line fails.
#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "properties.hpp"
#include "wqs/family_db.hpp"
#include "wqs/genericity.hpp"
#include "wqs/notation.hpp"
#include "wqs/verify.hpp"

using namespace wqs;

namespace {

struct Line {
  bool pass;
  std::string detail;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string section(const std::string& text, const std::string& start_marker, const std::string& end_marker) {
  auto a = text.find(start_marker);
  if (a == std::string::npos) throw std::runtime_error("marker not found: " + start_marker);
  auto b = text.find(end_marker, a);
  return text.substr(a, b - a);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << " s";
  return os.str();
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

struct Context {
  std::vector<FamilyRecord> db;
  std::string paper;

  const FamilyRecord& rec(int no) const { return db.at(static_cast<std::size_t>(no - 1)); }
  std::vector<const FamilyRecord*> of(Klass k) const {
    std::vector<const FamilyRecord*> out;
    for (const auto& r : db)
      if (r.klass == k) out.push_back(&r);
    return out;
  }
};

// Table 1 rows as printed: number, degree, weights, sign, index
struct PrintedRow {
  int no, d;
  std::vector<int> weights;
  std::string sign;
  int index;
};

std::vector<PrintedRow> printed_table1(const std::string& paper) {
  const std::string body = section(paper, "\\label{qswh}", "\\end{table}");
  static const std::regex row(R"((\d+) & \$X_\{?(\d+)\}? \\subset \\mathbb\{P\} \(([\d,]+)\)\$ & \$(--|-|\+)\$ & (\d+))");
  std::vector<PrintedRow> out;
  for (auto it = std::sregex_iterator(body.begin(), body.end(), row); it != std::sregex_iterator(); ++it) {
    PrintedRow r{std::stoi((*it)[1]), std::stoi((*it)[2]), {}, (*it)[4], std::stoi((*it)[5])};
    std::stringstream ws((*it)[3].str());
    for (std::string w; std::getline(ws, w, ',');) r.weights.push_back(std::stoi(w));
    out.push_back(std::move(r));
  }
  return out;
}

// the 20 families of the rationality proposition
const std::set<int> kRationalByProposition = {104, 105, 106, 111, 112, 113, 114, 115, 118, 119,
                                              120, 121, 123, 124, 125, 126, 127, 128, 129, 130};

Line criterion1(const Context& cx) {
  auto t0 = std::chrono::steady_clock::now();
  auto rows = printed_table1(cx.paper);
  int mismatches = 0;
  std::set<int> plus;
  for (const auto& r : rows) {
    auto sorted = r.weights;
    std::sort(sorted.begin(), sorted.end());
    bool rational = rationality_classify(sorted, r.d).verdict == Rationality::RationalByCriterion;
    if (rational) plus.insert(r.no);
    if (rational != (r.sign == "+")) ++mismatches;
  }
  std::set<int> db_rational;
  for (const auto* r : cx.of(Klass::Rational)) db_rational.insert(r->no);
  double s = seconds_since(t0);
  bool ok = rows.size() == 35 && mismatches == 0 && plus == kRationalByProposition && db_rational == plus && s < 1.0;
  return {ok, std::to_string(rows.size()) + " printed rows, " + std::to_string(mismatches) + " sign mismatches, " +
                  std::to_string(plus.size()) + " rational rows equal to the proposition list: " +
                  (plus == kRationalByProposition ? "yes" : "no") + " (" + fmt_seconds(s) + ", budget 1 s)"};
}

Line criterion2(const Context& cx) {
  auto t0 = std::chrono::steady_clock::now();
  auto rows = printed_table1(cx.paper);
  std::vector<int> bad;
  for (const auto& r : rows) {
    int idx = 0;
    try {
      idx = fano_index(r.weights, r.d);
    } catch (const std::domain_error&) {
    }
    const auto& rec = cx.rec(r.no);
    if (idx != r.index || !rec.table1 || rec.table1->index != r.index) bad.push_back(r.no);
  }
  double s = seconds_since(t0);
  return {rows.size() == 35 && bad.empty() && s < 1.0,
          std::to_string(rows.size() - bad.size()) + "/" + std::to_string(rows.size()) + " indices match" +
              (bad.empty() ? "" : " (differ: " + join(bad) + ")") + " (" + fmt_seconds(s) + ", budget 1 s)"};
}

// A displayed identity: monomials, variables, stratum and the printed determinant.
// `fixed_*` give the reading used when the printed inputs contain a transcription slip.
struct Identity {
  std::string label;
  std::string xi, j, stratum, shown;
  std::string fixed_xi = {}, fixed_j = {}, fixed_stratum = {}, fixed_shown = {};
};

struct IdentityOutcome {
  int literal = 0, corrected = 0, failed = 0;
  std::vector<std::string> failures;
};

void run_identities(const std::vector<Identity>& ids, const MonomialList& lambda, int p, std::size_t arity,
                    const WeightSystem& ws, CertKind kind, IdentityOutcome& out) {
  VariableNames names(arity);
  auto compute = [&](const std::string& xi, const std::string& j, const std::string& stratum)
      -> std::optional<Exponents> {
    Certificate c;
    c.kind = kind;
    c.xi = parse_monomial_list(xi, names);
    c.j = parse_variable_list(j, names);
    c.stratum = Stratum(parse_variable_list(stratum, names));
    try {
      auto v = check_witness(lambda, c, p);
      return v.determinant;
    } catch (const CertificateError&) {
      return std::nullopt;
    }
  };
  for (const auto& id : ids) {
    const Exponents shown = parse_monomial(id.shown, names);
    auto lit = compute(id.xi, id.j, id.stratum);
    if (lit && *lit == shown) {
      ++out.literal;
      continue;
    }
    // a correction is accepted only when the printed data is provably inconsistent:
    // either the printed determinant has the wrong weighted degree, or the printed
    // inputs give no certificate at all while the corrected ones reproduce the value
    bool has_fix = !id.fixed_xi.empty() || !id.fixed_j.empty() || !id.fixed_stratum.empty() || !id.fixed_shown.empty();
    if (has_fix) {
      auto fix = compute(id.fixed_xi.empty() ? id.xi : id.fixed_xi, id.fixed_j.empty() ? id.j : id.fixed_j,
                         id.fixed_stratum.empty() ? id.stratum : id.fixed_stratum);
      const Exponents target = id.fixed_shown.empty() ? shown : parse_monomial(id.fixed_shown, names);
      bool shown_inconsistent = true;
      if (!id.fixed_shown.empty()) {
        long want = 0;
        for (const auto& g : parse_monomial_list(id.fixed_xi.empty() ? id.xi : id.fixed_xi, names)) want += ws.degree_of(g);
        for (int v : parse_variable_list(id.fixed_j.empty() ? id.j : id.fixed_j, names)) want -= ws[static_cast<std::size_t>(v)];
        shown_inconsistent = ws.degree_of(shown) != want;
      } else {
        shown_inconsistent = !lit.has_value();
      }
      if (fix && *fix == target && shown_inconsistent) {
        ++out.corrected;
        continue;
      }
    }
    ++out.failed;
    out.failures.push_back(id.label);
  }
}

Line criterion3(const Context& cx) {
  const auto& r22 = cx.rec(22);
  auto lambda = base_monomials(r22);
  std::vector<Identity> ids = {
      {"y,z", "{y^7, z^7}", "{y,z}", "{y,z}", "y^6*z^6"},
      {"y,t", "{y^7, t*y^5*x}", "{x,y}", "{y,t}", "t*y^11"},
      {"z,t", "{y^7, t*z^5*x}", "{x,z}", "{y,t}", "t*z^11", "{z^7, t*z^5*x}", "", "{z,t}"},
      {"y,z,t", "{y^7, z^7, t*y^5*x}", "{x,y,z}", "{y,z,t}", "t*y^11*z^6"},
  };
  IdentityOutcome o;
  run_identities(ids, lambda, 2, 4, WeightSystem(r22.base_weights()), CertKind::Star, o);
  // the tabulated row for the same family
  bool table_ok = false;
  for (const auto* c : r22.certs_from("T3")) {
    auto v = check_witness(lambda, c->to_certificate(-1), 2);
    table_ok = v.holds && *v.determinant == parse_monomial("t*y^11*z^6", VariableNames(4));
  }
  const int total = o.literal + o.corrected + o.failed + 1;
  const int ok = o.literal + o.corrected + (table_ok ? 1 : 0);
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " reproduced (" + std::to_string(o.corrected) +
                           " after reading the printed stratum {y,t} with monomial y^7 as {z,t} with z^7)"};
}


std::string failing_families(const std::vector<VerificationReport>& reps, std::vector<int>* out = nullptr) {
  std::string s;
  for (const auto& r : reps) {
    if (r.pass) continue;
    if (out) out->push_back(r.family);
    std::string strata;
    for (const auto& ph : r.phases)
      if (!ph.pass) strata += (strata.empty() ? "" : " ") + ph.name;
    s += (s.empty() ? "" : "; ") + std::to_string(r.family) + ": " + strata;
  }
  return s;
}

int count_table_certs(const Context& cx, Klass klass, const std::string& table, int& total, int& annotated) {
  int ok = 0;
  total = annotated = 0;
  for (const auto* r : cx.of(klass)) {
    auto lambda = base_monomials(*r);
    const int k = r->cover && r->cover->k ? *r->cover->k : -1;
    for (const auto* c : r->certs_from(table)) {
      ++total;
      if (c->note) ++annotated;
      try {
        auto v = check_witness(lambda, c->to_certificate(k), *r->p);
        if (v.holds && v.matches_expected.value_or(true)) ++ok;
      } catch (const CertificateError&) {
      }
    }
  }
  return ok;
}

Line criterion4(const Context& cx) {
  int total = 0, annotated = 0;
  const int ok = count_table_certs(cx, Klass::Type1, "T3", total, annotated);
  auto t0 = std::chrono::steady_clock::now();
  VerifyOptions opt;
  opt.timing = false;
  auto reps = verify_families(cx.of(Klass::Type1), opt);
  double s = seconds_since(t0);
  std::vector<int> bad;
  std::string why = failing_families(reps, &bad);
  const bool pass = total == 32 && ok == 32 && reps.size() == 65 && bad.empty() && s <= 60.0;
  std::string d = std::to_string(ok) + "/" + std::to_string(total) + " tabulated certificates verify (" +
                  std::to_string(annotated) + " carry a transcription note); " +
                  std::to_string(reps.size() - bad.size()) + "/" + std::to_string(reps.size()) +
                  " type I families pass (" + fmt_seconds(s) + ", budget 60 s)";
  if (!bad.empty()) d += "; no certificate exists for " + why;
  return {pass, d};
}

std::map<int, int> printed_table4_cases(const std::string& paper) {
  const std::string body = section(paper, "\\label{table:typeIIqsm1}", "\\end{table}");
  static const std::regex cell(R"((\d+) &\s*(?:\$[^$]*\$)?\s*& \((\d)\))");
  std::map<int, int> out;
  for (auto it = std::sregex_iterator(body.begin(), body.end(), cell); it != std::sregex_iterator(); ++it)
    out[std::stoi((*it)[1])] = std::stoi((*it)[2]);
  return out;
}

Line criterion5(const Context& cx) {
  auto printed = printed_table4_cases(cx.paper);
  std::vector<std::string> mismatch;
  for (auto [no, want] : printed) {
    const auto& r = cx.rec(no);
    auto z = shortcut_Z_qsm(base_monomials(r), *r.cover->k, *r.p);
    const int got = z ? z->id : 0;
    if (got != want) mismatch.push_back(std::to_string(no) + " (printed " + std::to_string(want) + ", found " +
                                        (got ? std::to_string(got) : std::string("none")) + ")");
  }
  std::vector<std::string> residual_fail;
  int residual_checks = 0;
  for (int no : {18, 23, 44}) {
    const auto& r = cx.rec(no);
    const int k = *r.cover->k, p = *r.p;
    auto z = shortcut_Z_qsm(base_monomials(r), k, p);
    const StoredCert* t4 = r.certs_from("T4").empty() ? nullptr : r.certs_from("T4").front();
    if (!z || z->id != 5 || !t4 || t4->residual.empty()) {
      residual_fail.push_back(std::to_string(no) + " (no case 5 roles)");
      continue;
    }
    IndexSet pair{z->roles[1], z->roles[2]};
    std::sort(pair.begin(), pair.end());
    for (const auto& s : nonempty_subsets(pair)) {
      ++residual_checks;
      if (!holds_star_k(t4->residual, Stratum(s), k, p).holds)
        residual_fail.push_back(std::to_string(no) + " " + format_index_set(s, VariableNames(4)));
    }
  }
  const bool pass = printed.size() == 36 && mismatch.empty() && residual_fail.empty();
  std::string d = std::to_string(printed.size() - mismatch.size()) + "/" + std::to_string(printed.size()) +
                  " printed cases reproduced";
  for (const auto& m : mismatch) d += ", row " + m;
  d += "; " + std::to_string(residual_checks - static_cast<int>(residual_fail.size())) + "/" +
       std::to_string(residual_checks) + " residual strata pass using only the quoted monomials";
  for (const auto& f : residual_fail) d += ", fails for " + f;
  return {pass, d};
}

Line criterion6(const Context& cx) {
  int total = 0, annotated = 0;
  const int ok = count_table_certs(cx, Klass::Type2, "T5", total, annotated);
  auto t0 = std::chrono::steady_clock::now();
  VerifyOptions opt;
  opt.timing = false;
  auto reps = verify_families(cx.of(Klass::Type2), opt);
  double s = seconds_since(t0);
  std::vector<int> bad;
  std::string why = failing_families(reps, &bad);
  const bool pass = total == 23 && ok == 23 && reps.size() == 37 && bad.empty() && s <= 60.0;
  std::string d = std::to_string(ok) + "/" + std::to_string(total) + " boundary certificates verify (" +
                  std::to_string(annotated) + " carry a transcription note); " +
                  std::to_string(reps.size() - bad.size()) + "/" + std::to_string(reps.size()) +
                  " type II families pass (" + fmt_seconds(s) + ", budget 60 s)";
  if (!bad.empty()) d += "; failing: " + why;
  return {pass, d};
}

Line criterion7(const Context& cx) {
  IdentityOutcome o;
  // family 103 and 122: plain Jacobian minors
  run_identities({{"103 yzt", "{t^3*z, z^7*y, y^12*x}", "{x,y,z}", "{y,z,t}", "t^3*z^7*y^12"},
                  {"103 xzt", "{t^3*z, z^7*y, x^19}", "{x,y,z}", "{x,z,t}", "t^3*z^7*x^18"}},
                 base_monomials(cx.rec(103)), 2, 4, WeightSystem(cx.rec(103).base_weights()), CertKind::Star, o);
  run_identities({{"122 yzt", "{y^3*t, z^3*x, t^2*z}", "{x,y,z}", "{y,z,t}", "t^3*z^3*y^2"},
                  {"122 xzt", "{x^7, t^2*z, t*z*y*x}", "{x,y,z}", "{x,z,t}", "t^3*z*x^7"}},
                 base_monomials(cx.rec(122)), 2, 4, WeightSystem(cx.rec(122).base_weights()), CertKind::Star, o);
  const int plain_total = o.literal + o.corrected + o.failed;
  // family 19 on Z (last coordinate is the weight 4 variable)
  const WeightSystem wz({1, 3, 3, 4, 4});
  run_identities(
      {
          {"Z x", "{x^12}", "{}", "{x}", "x^12"},
          {"Z y", "{y^4}", "{}", "{y}", "y^4"},
          {"Z z", "{z^4}", "{}", "{z}", "z^4"},
          {"Z t", "{t^3}", "{}", "{t}", "t^3"},
          {"Z xy", "{x^9*z, y^4}", "{z}", "{x,y}", "x^9*y^4"},
          {"Z xz", "{x^9*y, z^4}", "{z}", "{x,z}", "x^9*z^4", "", "{y}"},
          {"Z xt", "{x^12, t^3}", "{t}", "{x,t}", "x^12*t^2"},
          {"Z yz", "{y^4, z^3*y}", "{y}", "{y,z}", "y^4*z^3"},
          {"Z yt", "{y^4, t^3}", "{z}", "{y,t}", "y^4*t^2", "", "{t}"},
          {"Z zt", "{z^4, t^3}", "{t}", "{z,t}", "z^4*t^2"},
          {"Z xyz", "{z^3*y, z*x^9, x^12}", "{y,z}", "{x,y,z}", "z^3*x^15", "", "", "", "z^3*x^21"},
          {"Z xyt", "{t^3, y*x^9, x^12}", "{y,t}", "{x,y,t}", "t^2*x^21"},
          {"Z xzt", "{t^3, z*x^9, x^12}", "{z,t}", "{x,z,t}", "t^2*x^21"},
          {"Z yzt", "{t^3, y*z^3*y, y^4}", "{y,t}", "{y,z,t}", "t^2*z^3*y^4", "{t^3, z^3*y, y^4}"},
          {"Z xyzt", "{t^3, z^3*y, z*x^9, x^12}", "{y,z,t}", "{x,y,z,t}", "t^2*z^3*x^21"},
      },
      family19_monomials("Z"), 2, 5, wz, CertKind::StarPrime, o);
  const int z_total = o.literal + o.corrected + o.failed - plain_total;
  // family 19 on X (last coordinate is the weight 2 cover variable)
  const WeightSystem wx({1, 3, 3, 4, 2});
  run_identities(
      {
          {"X w", "{w^6}", "{}", "{w}", "w^6"},
          {"X yw", "{w^6, y^3*z}", "{z}", "{y,w}", "w^6*y^3"},
          {"X zw", "{w^6, z^3*y}", "{y}", "{z,w}", "w^6*z^3"},
          {"X tw", "{w^6, t^3}", "{t}", "{t,w}", "w^6*t^2"},
          {"X yzw", "{w^4*t, y^4, y^3*z}", "{z,t}", "{y,z,w}", "w^4*y^7"},
          {"X ytw", "{w^6, t^3, z*y^3}", "{z,t}", "{y,t,w}", "w^6*t^2*y^3"},
          {"X ztw", "{w^6, t^3, z^3*y}", "{y,t}", "{z,t,w}", "w^6*t^2*z^3"},
          {"X yztw", "{w^6, t^3, z^3*y, t^2*z*x}", "{x,y,t}", "{y,z,t,w}", "w^6*t^4*z^4"},
      },
      family19_monomials("X"), 2, 5, wx, CertKind::StarPrime, o);
  const int total = o.literal + o.corrected + o.failed;
  std::string d = std::to_string(o.literal + o.corrected) + "/" + std::to_string(total) + " identities reproduced (" + std::to_string(plain_total) + " plain minors, " +
                  std::to_string(z_total) + " on Z, " + std::to_string(total - plain_total - z_total) +
                  " on the cover); " +
                  std::to_string(o.literal) + " literally, " + std::to_string(o.corrected) +
                  " after fixing a printed slip that is provably inconsistent (two variable sets, one monomial, one "
                  "determinant of impossible weighted degree)";
  for (const auto& f : o.failures) d += "; fails: " + f;
  return {o.failed == 0, d};
}

Line criterion8(const Context& cx) {
  std::vector<int> crit_fail, no_weight_one, cd_fail;
  for (const auto& r : cx.db) {
    if (r.klass != Klass::Type1 && r.klass != Klass::Type2 && r.klass != Klass::Special) continue;
    auto base = r.base_weights();
    auto crit = check_condition_crit(base, r.d, *r.p);
    if (!crit.has_weight_one) no_weight_one.push_back(r.no);
    if (r.klass != Klass::Special && !crit.ok()) crit_fail.push_back(r.no);
    std::vector<int> z = base;
    bool hyper = false;
    if (r.klass == Klass::Type2) {
      z.push_back(r.cover->m * r.weights[static_cast<std::size_t>(*r.w_pos)]);
      hyper = true;
    } else if (r.no == 19) {
      z = {1, 3, 3, 4, 4};
      hyper = true;
    }
    auto cd = check_cdgen_arithmetic(base, WeightSystem(z), r.d, hyper);
    if (cd.delta < 0 || !cd.section_exists) cd_fail.push_back(r.no);
  }
  const bool pass = crit_fail.empty() && no_weight_one == std::vector<int>{103, 122} && cd_fail.empty();
  return {pass, "condition holds for all type I and type II data" +
                    (crit_fail.empty() ? std::string() : " except " + join(crit_fail)) +
                    "; clause 1 fails exactly for " + join(no_weight_one) + "; delta and section checks fail for " +
                    (cd_fail.empty() ? std::string("none") : join(cd_fail))};
}

Line criterion9(const Context& cx) {
  auto t0 = std::chrono::steady_clock::now();
  VerifyOptions opt;
  opt.timing = false;
  opt.oracle = true;
  opt.seed = 20240601;
  opt.samples = 50;
  opt.field_degree = 3;
  auto reps = verify_families(cx.of(Klass::Type1), opt);
  int checked = 0, violations = 0;
  for (const auto& r : reps)
    for (const auto& ph : r.phases) {
      if (ph.note.find("oracle min rank") != std::string::npos) ++checked;
      if (ph.note.find("oracle rank below") != std::string::npos) ++violations;
    }
  auto snd = props::shortcut_soundness(500, 77);
  double s = seconds_since(t0);
  const bool pass = violations == 0 && snd.violations == 0 && s <= 120.0;
  return {pass, std::to_string(checked) + " certified strata cross-checked over GF(p^3), " +
                    std::to_string(violations) + " rank violations; " + std::to_string(snd.cases) +
                    " random instances with " + std::to_string(snd.hits) + " shortcut hits, " +
                    std::to_string(snd.violations) + " unsound (" + fmt_seconds(s) + ", budget 120 s)"};
}

Line criterion10() {
  const int e = props::euler_violations(1000, 101);
  const int f = props::freshman_violations(1000, 102);
  const int d = props::pth_power_derivative_violations(1000, 103);
  const int r = props::restriction_commutes_violations(1000, 104);
  return {e + f + d + r == 0, "1000 cases each: Euler " + std::to_string(e) + ", p-th power of a sum " +
                                  std::to_string(f) + ", derivative of p-th power " + std::to_string(d) +
                                  ", restriction and determinant " + std::to_string(r) + " violations"};
}

}  // namespace

int main() {
  Context cx;
  try {
    cx.db = load_family_db_file(default_db_path());
    cx.paper = read_file(WQS_PAPER);
  } catch (const std::exception& e) {
    std::cerr << "setup failed: " << e.what() << "\n";
    return 2;
  }
  const std::vector<std::pair<std::string, std::function<Line()>>> criteria = {
      {"Table 1 rationality signs", [&] { return criterion1(cx); }},
      {"Table 1 index column", [&] { return criterion2(cx); }},
      {"family 22 worked example", [&] { return criterion3(cx); }},
      {"type I certificates and sweep", [&] { return criterion4(cx); }},
      {"Z criterion cases and residuals", [&] { return criterion5(cx); }},
      {"type II boundary certificates and sweep", [&] { return criterion6(cx); }},
      {"special family determinants", [&] { return criterion7(cx); }},
      {"genericity arithmetic", [&] { return criterion8(cx); }},
      {"random evaluation oracle and shortcut soundness", [&] { return criterion9(cx); }},
      {"algebraic identities", [] { return criterion10(); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Line l;
    try {
      l = criteria[i].second();
    } catch (const std::exception& e) {
      l = {false, std::string("error: ") + e.what()};
    }
    failed += l.pass ? 0 : 1;
    std::cout << "criterion " << i + 1 << " " << (l.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << l.detail << "\n";
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass\n";
  return failed ? 1 : 0;
}
