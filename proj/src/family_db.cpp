#include "wqs/family_db.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "wqs/genericity.hpp"

#ifndef WQS_DEFAULT_DB
#define WQS_DEFAULT_DB "data/families.json"
#endif

namespace wqs {

using nlohmann::json;

std::string to_string(Klass k) {
  switch (k) {
    case Klass::Rational: return "RATIONAL";
    case Klass::Type1: return "TYPE1";
    case Klass::Type2: return "TYPE2";
    case Klass::Special: return "SPECIAL";
    case Klass::Known: return "KNOWN";
    case Klass::Excluded: return "EXCLUDED";
  }
  return "?";
}

Klass klass_from_string(const std::string& s) {
  for (Klass k : {Klass::Rational, Klass::Type1, Klass::Type2, Klass::Special, Klass::Known, Klass::Excluded})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown class '" + s + "'");
}

Certificate StoredCert::to_certificate(int k) const {
  Certificate c;
  c.kind = kind;
  c.k = kind == CertKind::StarK ? k : -1;
  c.stratum = Stratum(stratum);
  c.xi = xi;
  c.j = j;
  c.expected = expected;
  return c;
}

std::vector<int> FamilyRecord::base_weights() const {
  std::vector<int> b;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (!w_pos || static_cast<int>(i) != *w_pos) b.push_back(weights[i]);
  return b;
}

std::vector<const StoredCert*> FamilyRecord::certs_from(const std::string& table) const {
  std::vector<const StoredCert*> out;
  for (const auto& c : certs)
    if (c.table == table) out.push_back(&c);
  return out;
}

namespace {

// Field access with a path in every error message.
class Reader {
 public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {}

  const json& need(const char* key) const {
    if (!j_.is_object()) fail("expected an object");
    auto it = j_.find(key);
    if (it == j_.end()) fail(std::string("missing field '") + key + "'");
    return *it;
  }
  bool present(const char* key) const {
    auto it = j_.find(key);
    return it != j_.end() && !it->is_null();
  }
  int integer(const char* key) const {
    const json& v = need(key);
    if (!v.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
  }
  std::optional<int> opt_integer(const char* key) const {
    if (!present(key)) return std::nullopt;
    return integer(key);
  }
  std::string text(const char* key) const {
    const json& v = need(key);
    if (!v.is_string()) fail(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
  }
  std::optional<std::string> opt_text(const char* key) const {
    if (!present(key)) return std::nullopt;
    return text(key);
  }
  std::vector<int> ints(const char* key) const { return int_array(need(key), key); }
  MonomialList monomials(const char* key) const {
    const json& v = need(key);
    if (!v.is_array()) fail(std::string("field '") + key + "' must be an array");
    MonomialList out;
    for (const auto& e : v) out.push_back(int_array(e, key));
    return out;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw DbError(where_ + ": " + msg); }
  const std::string& where() const { return where_; }

 private:
  std::vector<int> int_array(const json& v, const char* key) const {
    if (!v.is_array()) fail(std::string("field '") + key + "' must be an array of integers");
    std::vector<int> out;
    for (const auto& x : v) {
      if (!x.is_number_integer()) fail(std::string("field '") + key + "' must be an array of integers");
      out.push_back(x.get<int>());
    }
    return out;
  }

  const json& j_;
  std::string where_;
};

StoredCert read_cert(const json& j, const std::string& where) {
  Reader r(j, where);
  StoredCert c;
  c.table = r.text("table");
  static const std::set<std::string> tables{"T3", "T4", "T5", "S19", "S103", "S122"};
  if (!tables.count(c.table)) r.fail("unknown table '" + c.table + "'");
  try {
    c.kind = cert_kind_from_string(r.text("kind"));
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }
  c.stratum = r.ints("stratum");
  c.xi = r.monomials("xi");
  c.j = r.ints("j");
  if (r.present("expected")) c.expected = r.ints("expected");
  c.case_id = r.opt_integer("case");
  if (c.case_id && (*c.case_id < 1 || *c.case_id > 5)) r.fail("case must be between 1 and 5");
  c.space = r.opt_text("space");
  c.printed = r.opt_text("printed");
  c.note = r.opt_text("note");
  if (r.present("residual")) c.residual = r.monomials("residual");
  if (c.stratum.empty()) r.fail("empty stratum");
  if (c.xi.empty()) r.fail("empty monomial list");
  for (const auto& g : c.xi)
    if (g.size() != c.xi.front().size()) r.fail("monomials of different arity");
  return c;
}

FamilyRecord read_record(const json& j, std::size_t pos) {
  Reader r(j, "families[" + std::to_string(pos) + "]");
  FamilyRecord f;
  f.no = r.integer("no");
  Reader rn(j, "family " + std::to_string(f.no));
  if (f.no < 1 || f.no > 130) rn.fail("family number out of range");
  f.d = rn.integer("d");
  f.weights = rn.ints("weights");
  if (f.weights.size() != 5) rn.fail("weights must have five entries");
  for (int a : f.weights)
    if (a < 1) rn.fail("weights must be positive");
  f.w_pos = rn.opt_integer("w_pos");
  if (f.w_pos && (*f.w_pos < 0 || *f.w_pos > 4)) rn.fail("w_pos out of range");
  try {
    f.klass = klass_from_string(rn.text("klass"));
  } catch (const std::invalid_argument& e) {
    rn.fail(e.what());
  }
  f.p = rn.opt_integer("p");
  if (f.p && !is_prime(*f.p)) rn.fail("p = " + std::to_string(*f.p) + " is not prime");
  if (rn.present("cover")) {
    Reader rc(rn.need("cover"), rn.where() + " cover");
    Cover c;
    c.m = rc.integer("m");
    c.k = rc.opt_integer("k");
    if (c.k && (*c.k < 0 || *c.k > 3)) rc.fail("k out of range");
    f.cover = c;
  }
  if (rn.present("certs")) {
    const json& cs = rn.need("certs");
    if (!cs.is_array()) rn.fail("certs must be an array");
    for (std::size_t i = 0; i < cs.size(); ++i)
      f.certs.push_back(read_cert(cs[i], rn.where() + " certs[" + std::to_string(i) + "]"));
  }
  if (rn.present("table1")) {
    Reader rt(rn.need("table1"), rn.where() + " table1");
    f.table1 = Table1Entry{rt.text("sign"), rt.integer("index")};
    if (f.table1->sign != "+" && f.table1->sign != "-" && f.table1->sign != "--") rt.fail("bad sign");
  }
  if (rn.present("notes")) {
    const json& ns = rn.need("notes");
    if (!ns.is_array()) rn.fail("notes must be an array");
    for (const auto& n : ns) {
      if (!n.is_string()) rn.fail("notes must be strings");
      f.notes.push_back(n.get<std::string>());
    }
  }
  return f;
}

json write_cert(const StoredCert& c) {
  json j;
  j["table"] = c.table;
  j["kind"] = to_string(c.kind);
  j["stratum"] = c.stratum;
  j["xi"] = c.xi;
  j["j"] = c.j;
  j["expected"] = c.expected ? json(*c.expected) : json(nullptr);
  if (c.case_id) j["case"] = *c.case_id;
  if (c.space) j["space"] = *c.space;
  if (c.printed) j["printed"] = *c.printed;
  if (c.note) j["note"] = *c.note;
  if (!c.residual.empty()) j["residual"] = c.residual;
  return j;
}

json write_record(const FamilyRecord& f) {
  json j;
  j["no"] = f.no;
  j["d"] = f.d;
  j["weights"] = f.weights;
  j["w_pos"] = f.w_pos ? json(*f.w_pos) : json(nullptr);
  j["klass"] = to_string(f.klass);
  j["p"] = f.p ? json(*f.p) : json(nullptr);
  if (f.cover)
    j["cover"] = {{"m", f.cover->m}, {"k", f.cover->k ? json(*f.cover->k) : json(nullptr)}};
  else
    j["cover"] = nullptr;
  j["certs"] = json::array();
  for (const auto& c : f.certs) j["certs"].push_back(write_cert(c));
  if (f.table1) j["table1"] = {{"sign", f.table1->sign}, {"index", f.table1->index}};
  j["notes"] = f.notes;
  return j;
}

}  // namespace

std::vector<FamilyRecord> load_family_db(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DbError(std::string("malformed JSON: ") + e.what());
  }
  Reader top(doc, "document");
  if (top.integer("schema_version") != 1) top.fail("unsupported schema_version");
  const json& fams = top.need("families");
  if (!fams.is_array()) top.fail("families must be an array");
  std::vector<FamilyRecord> out;
  std::set<int> seen;
  for (std::size_t i = 0; i < fams.size(); ++i) {
    out.push_back(read_record(fams[i], i));
    if (!seen.insert(out.back().no).second) throw DbError("family " + std::to_string(out.back().no) + ": duplicate number");
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.no < b.no; });
  return out;
}

std::vector<FamilyRecord> load_family_db_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DbError("cannot open " + path);
  return load_family_db(in);
}

std::string serialize_family_db(const std::vector<FamilyRecord>& recs) {
  json doc;
  doc["schema_version"] = 1;
  doc["families"] = json::array();
  for (const auto& f : recs) doc["families"].push_back(write_record(f));
  return doc.dump(1);
}

std::string default_db_path() {
  if (const char* env = std::getenv("WQS_DB"); env && *env) return env;
  return WQS_DEFAULT_DB;
}

std::vector<Finding> validate_db(const std::vector<FamilyRecord>& recs) {
  std::vector<Finding> out;
  auto err = [&](int no, std::string msg) { out.push_back({Finding::Severity::Error, no, std::move(msg)}); };

  std::map<Klass, int> counts;
  std::set<int> numbers;
  for (const auto& f : recs) {
    ++counts[f.klass];
    numbers.insert(f.no);
  }
  const std::map<Klass, int> want{{Klass::Type1, 65}, {Klass::Type2, 37}, {Klass::Special, 3},
                                  {Klass::Rational, 20}, {Klass::Known, 4}, {Klass::Excluded, 1}};
  for (auto [k, n] : want)
    if (counts[k] != n)
      err(0, to_string(k) + " count is " + std::to_string(counts[k]) + ", expected " + std::to_string(n));
  for (int no = 1; no <= 130; ++no)
    if (!numbers.count(no)) err(0, "family " + std::to_string(no) + " is missing");
  if (recs.size() != numbers.size()) err(0, "duplicate family numbers");

  int t3 = 0, t4 = 0, t4_case5 = 0, t5 = 0;
  for (const auto& f : recs) {
    const bool covered = f.klass == Klass::Type1 || f.klass == Klass::Type2 || f.klass == Klass::Special;
    if (covered && (!f.p || !f.cover || !f.w_pos)) {
      err(f.no, "missing p, cover or cover position");
      continue;
    }
    if (!covered && (f.p || f.cover)) err(f.no, "p or cover present on a family without a cover");

    std::vector<int> sorted = f.weights;
    std::sort(sorted.begin(), sorted.end());
    const bool rational = rationality_classify(sorted, f.d).verdict == Rationality::RationalByCriterion;
    if (rational != (f.klass == Klass::Rational)) err(f.no, "classifier disagrees with Table 1 sign");
    int index = 0;
    try {
      index = fano_index(f.weights, f.d);
    } catch (const std::domain_error& e) {
      err(f.no, e.what());
    }
    if (f.table1) {
      if (rational != (f.table1->sign == "+")) err(f.no, "classifier disagrees with Table 1 sign");
      if (index != f.table1->index)
        err(f.no, "index " + std::to_string(index) + " disagrees with Table 1 index " + std::to_string(f.table1->index));
    } else if (index > 1) {
      err(f.no, "index above one without a Table 1 entry");
    }

    if (covered) {
      const int p = *f.p, a_w = f.weights[static_cast<std::size_t>(*f.w_pos)];
      const int m = f.cover->m;
      if (m % p != 0) err(f.no, "p ∤ m");
      if (f.klass == Klass::Type1 || f.klass == Klass::Special) {
        if (f.d % a_w != 0 && f.klass == Klass::Type1) err(f.no, "degree not divisible by the cover weight");
        if (f.klass == Klass::Type1 && m * a_w != f.d) err(f.no, "cover exponent disagrees with d / a_w");
      }
      if (f.klass == Klass::Type2) {
        if (!f.cover->k) {
          err(f.no, "missing cover variable");
        } else if (m * a_w + f.base_weights()[static_cast<std::size_t>(*f.cover->k)] != f.d) {
          err(f.no, "d differs from m * a_w + a_k");
        }
      }
    }

    for (const auto& c : f.certs) {
      if (c.table == "T3") ++t3;
      if (c.table == "T4") {
        ++t4;
        if (c.case_id == 5) ++t4_case5;
        if (!c.case_id) err(f.no, "Table 4 entry without a case number");
      }
      if (c.table == "T5") ++t5;
      try {
        validate_shape(c.to_certificate(f.cover && f.cover->k ? *f.cover->k : -1));
      } catch (const CertificateError& e) {
        err(f.no, std::string("certificate shape: ") + e.what());
      }
    }
  }
  if (t3 != 32) err(0, "Table 3 has " + std::to_string(t3) + " rows, expected 32");
  if (t4 != 36) err(0, "Table 4 has " + std::to_string(t4) + " rows, expected 36");
  if (t4_case5 != 3) err(0, "Table 4 has " + std::to_string(t4_case5) + " case (5) rows, expected 3");
  if (t5 != 23) err(0, "Table 5 has " + std::to_string(t5) + " rows, expected 23");
  return out;
}

}  // namespace wqs
