#include "wqs/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "wqs/genericity.hpp"
#include "wqs/notation.hpp"
#include "wqs/oracle.hpp"

namespace wqs {

namespace {

const StoredCert* find_cert(const FamilyRecord& rec, const std::string& table, const IndexSet& stratum) {
  for (const auto* c : rec.certs_from(table))
    if (c->stratum == stratum) return c;
  return nullptr;
}

std::string stratum_label(const IndexSet& s, std::size_t arity) { return format_index_set(s, VariableNames(arity)); }

void append(std::string& note, const std::string& more) {
  if (more.empty()) return;
  if (!note.empty()) note += "; ";
  note += more;
}

PhaseResult from_verdict(std::string name, const Verdict& v, std::string note) {
  PhaseResult r;
  r.name = std::move(name);
  r.pass = v.holds;
  r.certificate = v.certificate;
  r.determinant = v.determinant;
  r.note = std::move(note);
  return r;
}

// A stratum check: shortcut or tabulated certificate first, search as fallback.
struct StratumCheck {
  const MonomialList& lambda;
  int p;
  int k;  // -1 for the plain condition
  const VerifyOptions& opt;

  Verdict search(const Stratum& I) const {
    return k < 0 ? holds_star(lambda, I, p) : holds_star_k(lambda, I, k, p);
  }

  PhaseResult small(const std::string& name, const Stratum& I) const {
    auto hit = k < 0 ? shortcut_star(lambda, I, p) : shortcut_star_k(lambda, I, k, p);
    if (hit) {
      Verdict v = check_witness(lambda, hit->cert, p);
      if (v.holds) return finish(from_verdict(name, v, "shortcut " + hit->rule), I);
      Verdict s = search(I);
      return finish(from_verdict(name, s, "shortcut " + hit->rule + " did not verify; search"), I);
    }
    return finish(from_verdict(name, search(I), "search"), I);
  }

  PhaseResult tabulated(const std::string& name, const Stratum& I, const StoredCert* stored) const {
    std::string note;
    if (stored) {
      note = "table " + stored->table;
      if (stored->note) append(note, *stored->note);
      try {
        Verdict v = check_witness(lambda, stored->to_certificate(k), p);
        if (v.holds && v.matches_expected.value_or(true)) return finish(from_verdict(name, v, note), I);
        append(note, v.holds ? "determinant differs from the stored one" : "determinant is not a nonzero monomial");
      } catch (const CertificateError& e) {
        append(note, e.what());
      }
      Verdict s = search(I);
      append(note, s.holds ? "certificate mismatch, search succeeded" : "certificate mismatch, search failed");
      return finish(from_verdict(name, s, note), I);
    }
    return finish(from_verdict(name, search(I), "search"), I);
  }

  PhaseResult finish(PhaseResult r, const Stratum& I) const {
    if (!opt.oracle || !r.pass) return r;
    int rank = oracle_rank_at_points(lambda, I.on(), p, opt.field_degree, opt.samples, opt.seed);
    append(r.note, "oracle min rank " + std::to_string(rank));
    if (rank < static_cast<int>(I.size())) {
      r.pass = false;
      append(r.note, "oracle rank below stratum size");
    }
    return r;
  }
};

IndexSet heavy_indices(const std::vector<int>& w) {
  IndexSet s;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] > 1) s.push_back(static_cast<int>(i));
  return s;
}

void common_phases(const FamilyRecord& rec, VerificationReport& rep) {
  std::vector<int> sorted = rec.weights;
  std::sort(sorted.begin(), sorted.end());
  auto cls = rationality_classify(sorted, rec.d);
  PhaseResult c;
  c.name = "classification";
  c.pass = (cls.verdict == Rationality::RationalByCriterion) == (rec.klass == Klass::Rational);
  c.note = to_string(cls.verdict) + " (" + cls.clause + ")";
  try {
    int idx = fano_index(rec.weights, rec.d);
    append(c.note, "index " + std::to_string(idx));
    if (rec.table1 && rec.table1->index != idx) {
      c.pass = false;
      append(c.note, "Table 1 lists index " + std::to_string(rec.table1->index));
    }
  } catch (const std::domain_error& e) {
    c.pass = false;
    append(c.note, e.what());
  }
  if (rec.klass == Klass::Excluded) append(c.note, "excluded: cubic threefold");
  rep.phases.push_back(std::move(c));
}

void genericity_phases(const FamilyRecord& rec, const std::vector<int>& base, const WeightSystem& z_ambient,
                       bool z_hypersurface, VerificationReport& rep) {
  auto crit = check_condition_crit(base, rec.d, *rec.p);
  PhaseResult pc;
  pc.name = "crit-condition";
  pc.pass = crit.ok();
  pc.note = std::string("clauses ") + (crit.has_weight_one ? "1" : "-") + (crit.degree_bound ? "2" : "-") +
            (crit.char_two_clause ? "3" : "-");
  if (rec.klass == Klass::Special && !crit.has_weight_one) {
    pc.name = "crit-condition (not applicable)";
    pc.pass = true;
    append(pc.note, "no weight one coordinate; the family is handled by a dedicated open set");
  }
  rep.phases.push_back(std::move(pc));

  auto cd = check_cdgen_arithmetic(base, z_ambient, rec.d, z_hypersurface);
  PhaseResult pd;
  pd.name = "cdgen";
  pd.pass = cd.ok();
  pd.note = "delta " + std::to_string(cd.delta) + (cd.section_exists ? ", section exists" : ", no section") +
            (cd.wf ? ", well formed" : ", not well formed") + (cd.n_ok ? "" : ", dimension below three");
  rep.phases.push_back(std::move(pd));
}

WeightSystem z_ambient_of(const FamilyRecord& rec) {
  std::vector<int> w = rec.base_weights();
  if (rec.klass == Klass::Type2) w.push_back(rec.cover->m * rec.weights[static_cast<std::size_t>(*rec.w_pos)]);
  return WeightSystem(std::move(w));
}

void settle(VerificationReport& rep) {
  rep.pass = !rep.phases.empty() &&
             std::all_of(rep.phases.begin(), rep.phases.end(), [](const PhaseResult& r) { return r.pass; });
}

template <class F>
VerificationReport timed(const FamilyRecord& rec, const VerifyOptions& opt, F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.family = rec.no;
  body(rep);
  settle(rep);
  if (opt.timing)
    rep.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

MonomialList base_monomials(const FamilyRecord& rec) {
  return enumerate_monomials(WeightSystem(rec.base_weights()), rec.d);
}

MonomialList family19_monomials(const std::string& space) {
  MonomialList out;
  for (auto e : enumerate_monomials(WeightSystem({1, 3, 3, 4}), 12)) {
    e.push_back(0);
    out.push_back(std::move(e));
  }
  if (space == "Z") {
    out.push_back({0, 0, 0, 0, 3});  // wbar^3
    out.push_back({0, 0, 0, 1, 2});  // wbar^2 t
  } else if (space == "X") {
    out.push_back({0, 0, 0, 0, 6});  // w^6
    out.push_back({0, 0, 0, 1, 4});  // w^4 t
  } else {
    throw std::invalid_argument("space must be Z or X");
  }
  std::sort(out.begin(), out.end());
  return out;
}

VerificationReport verify_typeI_family(const FamilyRecord& rec, const VerifyOptions& opt) {
  if (rec.klass != Klass::Type1 || !rec.p || !rec.cover || !rec.w_pos)
    throw std::invalid_argument("family " + std::to_string(rec.no) + " is not a type I record");
  const int a_w = rec.weights[static_cast<std::size_t>(*rec.w_pos)];
  if (rec.d % a_w != 0 || (rec.d / a_w) % *rec.p != 0)
    throw std::invalid_argument("family " + std::to_string(rec.no) + ": cover exponent not divisible by p");
  return timed(rec, opt, [&](VerificationReport& rep) {
    const auto base = rec.base_weights();
    const MonomialList lambda = base_monomials(rec);
    StratumCheck check{lambda, *rec.p, -1, opt};
    for (const auto& s : nonempty_subsets(heavy_indices(base))) {
      const Stratum I(s);
      const std::string name = "X-boundary-qsm " + stratum_label(s, 4);
      rep.phases.push_back(s.size() <= 2 ? check.small(name, I) : check.tabulated(name, I, find_cert(rec, "T3", s)));
    }
    genericity_phases(rec, base, WeightSystem(base), false, rep);
    common_phases(rec, rep);
  });
}

VerificationReport verify_typeII_family(const FamilyRecord& rec, const VerifyOptions& opt) {
  if (rec.klass != Klass::Type2 || !rec.p || !rec.cover || !rec.cover->k || !rec.w_pos)
    throw std::invalid_argument("family " + std::to_string(rec.no) + " is not a type II record");
  if (rec.cover->m % *rec.p != 0) throw std::invalid_argument("family " + std::to_string(rec.no) + ": p does not divide m");
  return timed(rec, opt, [&](VerificationReport& rep) {
    const auto base = rec.base_weights();
    const int k = *rec.cover->k, p = *rec.p;
    const MonomialList lambda = base_monomials(rec);
    StratumCheck check{lambda, p, k, opt};

    IndexSet others;
    for (int v = 0; v < 4; ++v)
      if (v != k) others.push_back(v);
    const StoredCert* t4 = find_cert(rec, "T4", others);
    auto zc = shortcut_Z_qsm(lambda, k, p);
    for (const auto& s : nonempty_subsets(others)) {
      const Stratum I(s);
      const std::string name = "Z-qsm " + stratum_label(s, 4);
      if (s.size() <= 2) {
        rep.phases.push_back(check.small(name, I));
        continue;
      }
      PhaseResult r = check.tabulated(name, I, t4);
      std::string crit = zc ? "criterion case " + std::to_string(zc->id) : "no criterion case applies";
      if (t4 && t4->case_id) crit += ", table lists case " + std::to_string(*t4->case_id);
      append(r.note, crit);
      rep.phases.push_back(std::move(r));
    }

    if (base[static_cast<std::size_t>(k)] >= 2) {
      for (const auto& s : nonempty_subsets(heavy_indices(base))) {
        const Stratum I(s);
        const std::string name = "X-boundary-qsm " + stratum_label(s, 4);
        rep.phases.push_back(s.size() <= 2 ? check.small(name, I) : check.tabulated(name, I, find_cert(rec, "T5", s)));
      }
    }
    genericity_phases(rec, base, z_ambient_of(rec), true, rep);
    common_phases(rec, rep);
  });
}

VerificationReport verify_special_family(const FamilyRecord& rec, const VerifyOptions& opt) {
  if (rec.no != 19 && rec.no != 103 && rec.no != 122)
    throw std::invalid_argument("no scripted certificates for family " + std::to_string(rec.no));
  return timed(rec, opt, [&](VerificationReport& rep) {
    const auto base = rec.base_weights();
    const MonomialList plain = base_monomials(rec);
    const MonomialList on_z = rec.no == 19 ? family19_monomials("Z") : MonomialList{};
    const MonomialList on_x = rec.no == 19 ? family19_monomials("X") : MonomialList{};
    for (const auto& stored : rec.certs) {
      const MonomialList& lambda = stored.space == std::optional<std::string>("Z")   ? on_z
                                   : stored.space == std::optional<std::string>("X") ? on_x
                                                                                     : plain;
      const std::size_t arity = stored.xi.front().size();
      std::string name = "script " + (stored.space ? *stored.space + " " : std::string()) +
                         stratum_label(stored.stratum, arity);
      std::string note = "table " + stored.table;
      if (stored.note) append(note, *stored.note);
      PhaseResult r;
      try {
        Verdict v = check_witness(lambda, stored.to_certificate(-1), *rec.p);
        r = from_verdict(name, v, note);
        if (!v.matches_expected.value_or(true)) {
          r.pass = false;
          append(r.note, "determinant differs from the stored one");
        }
      } catch (const CertificateError& e) {
        r.name = name;
        r.note = note + "; " + e.what();
      }
      if (r.pass && opt.oracle && stored.xi.size() == stored.stratum.size()) {
        int rank = oracle_rank_at_points(lambda, stored.stratum, *rec.p, opt.field_degree, opt.samples, opt.seed);
        append(r.note, "oracle min rank " + std::to_string(rank));
        if (rank < static_cast<int>(stored.stratum.size())) r.pass = false;
      }
      rep.phases.push_back(std::move(r));
    }
    if (rec.no == 19)
      genericity_phases(rec, base, WeightSystem({1, 3, 3, 4, 4}), true, rep);
    else
      genericity_phases(rec, base, WeightSystem(base), false, rep);
    common_phases(rec, rep);
  });
}

VerificationReport verify_family(const FamilyRecord& rec, const VerifyOptions& opt) {
  switch (rec.klass) {
    case Klass::Type1: return verify_typeI_family(rec, opt);
    case Klass::Type2: return verify_typeII_family(rec, opt);
    case Klass::Special: return verify_special_family(rec, opt);
    default: return timed(rec, opt, [&](VerificationReport& rep) { common_phases(rec, rep); });
  }
}

std::vector<VerificationReport> verify_families(const std::vector<const FamilyRecord*>& recs,
                                                const VerifyOptions& opt) {
  std::vector<VerificationReport> out(recs.size());
  const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < recs.size(); i = next++) out[i] = verify_family(*recs[i], opt);
    }));
  for (auto& f : pool) f.get();
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.family < b.family; });
  return out;
}

namespace {

nlohmann::ordered_json cert_json(const Certificate& c) {
  VariableNames names(c.arity());
  nlohmann::ordered_json j;
  j["kind"] = to_string(c.kind);
  if (c.kind == CertKind::StarK) j["k"] = names.name(c.k);
  j["stratum"] = format_index_set(c.stratum.on(), names);
  j["xi"] = nlohmann::ordered_json::array();
  for (const auto& g : c.xi) j["xi"].push_back(format_monomial(g, names));
  j["j"] = format_index_set(c.j, names);
  return j;
}

std::string cert_text(const Certificate& c) {
  VariableNames names(c.arity());
  std::string s = to_string(c.kind) + " {";
  for (std::size_t i = 0; i < c.xi.size(); ++i) s += (i ? ", " : "") + format_monomial(c.xi[i], names);
  return s + "}_" + format_index_set(c.j, names);
}

}  // namespace

std::string report_json(const std::vector<VerificationReport>& reports) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["family"] = r.family;
    j["phases"] = nlohmann::ordered_json::array();
    for (const auto& ph : r.phases) {
      nlohmann::ordered_json pj;
      pj["name"] = ph.name;
      pj["pass"] = ph.pass;
      if (ph.certificate) pj["certificate"] = cert_json(*ph.certificate);
      if (ph.determinant) pj["determinant"] = format_monomial(*ph.determinant, VariableNames(ph.determinant->size()));
      if (!ph.note.empty()) pj["note"] = ph.note;
      j["phases"].push_back(std::move(pj));
    }
    j["pass"] = r.pass;
    j["millis"] = r.millis;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string report_text(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << "family " << r.family << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.millis << " ms)\n";
    for (const auto& ph : r.phases) {
      os << "  [" << (ph.pass ? "pass" : "FAIL") << "] " << ph.name;
      if (ph.certificate) os << "  " << cert_text(*ph.certificate);
      if (ph.determinant) os << "  det " << format_monomial(*ph.determinant, VariableNames(ph.determinant->size()));
      if (!ph.note.empty()) os << "  (" << ph.note << ")";
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace wqs
