#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "wqs/family_db.hpp"
#include "wqs/genericity.hpp"
#include "wqs/notation.hpp"
#include "wqs/verify.hpp"

namespace wqs::cli {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string families = "all";
  std::string klass;
  std::string format = "text";
  bool oracle = false;
  std::uint64_t seed = 1;
  int samples = 50;
  std::string db;
  bool no_timing = false;
};

int parse_int(std::string_view s, const std::string& what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw InputError("malformed " + what + ": '" + std::string(s) + "'");
  return v;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream is(t);
  for (std::string tok; is >> tok;) out.push_back(parse_int(tok, what));
  return out;
}

// "all", or numbers and ranges separated by commas: 1,5,10-12
std::set<int> parse_family_numbers(const std::string& text) {
  std::set<int> out;
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream is(t);
  for (std::string tok; is >> tok;) {
    auto dash = tok.find('-', 1);
    if (dash == std::string::npos) {
      out.insert(parse_int(tok, "family number"));
    } else {
      int lo = parse_int(std::string_view(tok).substr(0, dash), "family range");
      int hi = parse_int(std::string_view(tok).substr(dash + 1), "family range");
      if (lo > hi) throw InputError("empty family range " + tok);
      for (int i = lo; i <= hi; ++i) out.insert(i);
    }
  }
  return out;
}

std::vector<FamilyRecord> load(const RunConfig& cfg) {
  try {
    return load_family_db_file(cfg.db.empty() ? default_db_path() : cfg.db);
  } catch (const DbError& e) {
    throw InputError(e.what());
  }
}

std::vector<const FamilyRecord*> select(const std::vector<FamilyRecord>& db, const RunConfig& cfg) {
  std::vector<const FamilyRecord*> out;
  std::optional<Klass> klass;
  if (!cfg.klass.empty()) {
    std::string up = cfg.klass;
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
    try {
      klass = klass_from_string(up);
    } catch (const std::exception&) {
      throw InputError("unknown class " + cfg.klass);
    }
  }
  if (cfg.families == "all") {
    for (const auto& r : db)
      if (!klass || r.klass == *klass) out.push_back(&r);
  } else {
    for (int n : parse_family_numbers(cfg.families)) {
      auto it = std::find_if(db.begin(), db.end(), [n](const FamilyRecord& r) { return r.no == n; });
      if (it == db.end()) throw InputError("unknown family " + std::to_string(n));
      if (!klass || it->klass == *klass) out.push_back(&*it);
    }
  }
  if (out.empty()) throw InputError("empty selection");
  return out;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  auto db = load(cfg);
  auto sel = select(db, cfg);
  VerifyOptions opt;
  opt.oracle = cfg.oracle;
  opt.seed = cfg.seed;
  opt.samples = cfg.samples;
  opt.timing = !cfg.no_timing;
  auto reports = verify_families(sel, opt);
  out << (cfg.format == "json" ? report_json(reports) : report_text(reports));
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; }) ? 0 : 1;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  auto db = load(cfg);
  auto sel = select(db, cfg);
  auto rows = nlohmann::ordered_json::array();
  for (const auto* r : sel) {
    std::vector<int> sorted = r->weights;
    std::sort(sorted.begin(), sorted.end());
    auto v = rationality_classify(sorted, r->d);
    nlohmann::ordered_json row;
    row["family"] = r->no;
    row["weights"] = r->weights;
    row["degree"] = r->d;
    try {
      row["index"] = fano_index(r->weights, r->d);
    } catch (const std::domain_error&) {
      row["index"] = nullptr;
    }
    row["sign"] = v.verdict == Rationality::RationalByCriterion ? "+" : "-";
    row["verdict"] = to_string(v.verdict);
    row["clause"] = v.clause;
    row["class"] = to_string(r->klass);
    if (r->klass == Klass::Excluded) row["note"] = "excluded: cubic threefold";
    rows.push_back(std::move(row));
  }
  if (cfg.format == "json") {
    out << rows.dump(2) << "\n";
    return 0;
  }
  for (const auto& row : rows) {
    out << row["family"].get<int>() << "\tP(" << join(row["weights"].get<std::vector<int>>()) << ")\td="
        << row["degree"].get<int>() << "\tind=" << (row["index"].is_null() ? std::string("-") : row["index"].dump())
        << "\t" << row["sign"].get<std::string>() << "\t" << row["verdict"].get<std::string>() << "\t"
        << row["clause"].get<std::string>();
    if (row.contains("note")) out << "\t" << row["note"].get<std::string>();
    out << "\n";
  }
  return 0;
}

struct DetArgs {
  std::string weights;
  int p = 2;
  std::string xi;
  std::string j;
  std::string stratum;
  bool bordered = false;
};

int cmd_det(const DetArgs& a, std::ostream& out) {
  auto w = parse_int_list(a.weights, "weight");
  if (w.size() < 2) throw InputError("need at least two weights");
  if (!is_prime(a.p)) throw InputError("p must be prime");
  WeightSystem ws(w);
  VariableNames names(w.size());
  Certificate c;
  try {
    c.xi = parse_monomial_list(a.xi, names);
    c.j = parse_variable_list(a.j, names);
    if (a.stratum.empty()) {
      IndexSet s;
      for (const auto& g : c.xi)
        for (std::size_t i = 0; i < g.size(); ++i)
          if (g[i] > 0) s.push_back(static_cast<int>(i));
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      c.stratum = Stratum(s);
    } else {
      c.stratum = Stratum(parse_variable_list(a.stratum, names));
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (c.xi.empty()) throw InputError("no monomials given");
  const long deg = ws.degree_of(c.xi.front());
  for (const auto& g : c.xi)
    if (ws.degree_of(g) != deg) throw InputError("monomials of different weighted degree");
  c.kind = a.bordered ? CertKind::StarPrime : CertKind::Star;
  SparsePoly det(a.p, w.size());
  try {
    det = restricted_determinant(c, a.p);
  } catch (const CertificateError& e) {
    throw InputError(e.what());
  }
  out << format_poly(det, names) << "\n";
  return as_nonzero_monomial(det) ? 0 : 1;
}

int cmd_dump_db(const RunConfig& cfg, bool check, std::ostream& out) {
  auto db = load(cfg);
  if (!check) {
    out << serialize_family_db(db);
    return 0;
  }
  bool errors = false;
  for (const auto& f : validate_db(db)) {
    const bool err = f.severity == Finding::Severity::Error;
    errors |= err;
    out << (err ? "error" : "warning") << "\tfamily " << f.family << "\t" << f.message << "\n";
  }
  out << db.size() << " records, " << (errors ? "errors found" : "consistent") << "\n";
  return errors ? 1 : 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-smoothness certificate verifier for weighted Fano hypersurface families"};
  app.require_subcommand(1);
  RunConfig cfg;
  DetArgs det;
  bool check = false;

  auto add_selection = [&](CLI::App* sub) {
    sub->add_option("--families", cfg.families, "all, or numbers and ranges such as 1,5,10-12");
    sub->add_option("--class", cfg.klass, "rational, type1, type2, special, known or excluded");
    sub->add_option("--db", cfg.db, "family database (default: $WQS_DB or the bundled file)");
  };
  auto* verify = app.add_subcommand("verify", "run every applicable phase for the selected families");
  add_selection(verify);
  verify->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));
  verify->add_flag("--oracle", cfg.oracle, "cross-check found certificates by random evaluation");
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--samples", cfg.samples)->check(CLI::PositiveNumber);
  verify->add_flag("--no-timing", cfg.no_timing, "report zero milliseconds for byte-stable output");

  auto* classify = app.add_subcommand("classify", "rationality criterion and Fano index");
  add_selection(classify);
  classify->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

  auto* detc = app.add_subcommand("det", "restricted determinant of a Jacobian minor");
  detc->add_option("--weights", det.weights, "comma separated weights")->required();
  detc->add_option("--p", det.p, "characteristic")->required();
  detc->add_option("--xi", det.xi, "monomials, e.g. '{y^7, t*y^5*x}'")->required();
  detc->add_option("--j", det.j, "variables to differentiate by, e.g. '{x,y}'");
  detc->add_option("--stratum", det.stratum, "nonzero variables (default: support of the monomials)");
  detc->add_flag("--bordered", det.bordered, "prepend the row of monomials");

  auto* dump = app.add_subcommand("dump-db", "print the family database");
  dump->add_option("--db", cfg.db);
  dump->add_flag("--check", check, "run the consistency checks instead");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify(cfg, out);
    if (*classify) return cmd_classify(cfg, out);
    if (*detc) return cmd_det(det, out);
    return cmd_dump_db(cfg, check, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace wqs::cli
