// The 130 families, their tabulated certificates and consistency checks.
#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wqs/conditions.hpp"

namespace wqs {

enum class Klass { Rational, Type1, Type2, Special, Known, Excluded };
std::string to_string(Klass k);
Klass klass_from_string(const std::string& s);

struct Cover {
  int m = 0;
  std::optional<int> k;  // index into the base coordinates (x, y, z, t)
};

struct Table1Entry {
  std::string sign;  // "+", "-" or "--"
  int index = 0;
};

// One tabulated certificate as stored on disk.
struct StoredCert {
  std::string table;  // T3, T4, T5, S19, S103, S122
  CertKind kind = CertKind::Star;
  IndexSet stratum;
  MonomialList xi;
  IndexSet j;
  std::optional<Exponents> expected;
  std::optional<int> case_id;
  std::optional<std::string> space;    // "Z" or "X" for family 19
  std::optional<std::string> printed;  // the text as printed, when corrected
  std::optional<std::string> note;
  MonomialList residual;

  Certificate to_certificate(int k) const;
};

struct FamilyRecord {
  int no = 0;
  int d = 0;
  std::vector<int> weights;  // table order
  std::optional<int> w_pos;
  Klass klass = Klass::Known;
  std::optional<int> p;
  std::optional<Cover> cover;
  std::vector<StoredCert> certs;
  std::optional<Table1Entry> table1;
  std::vector<std::string> notes;

  // weights with the cover coordinate removed
  std::vector<int> base_weights() const;
  std::vector<const StoredCert*> certs_from(const std::string& table) const;
};

class DbError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<FamilyRecord> load_family_db(std::istream& in);
std::vector<FamilyRecord> load_family_db_file(const std::string& path);
std::string serialize_family_db(const std::vector<FamilyRecord>& recs);

// WQS_DB from the environment, else the data file of the source tree
std::string default_db_path();

struct Finding {
  enum class Severity { Warning, Error } severity = Severity::Error;
  int family = 0;  // 0 for whole-database findings
  std::string message;
};

std::vector<Finding> validate_db(const std::vector<FamilyRecord>& recs);


}  // namespace wqs
