// Per-family verification: quasi-smoothness phases, genericity, classification.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wqs/conditions.hpp"
#include "wqs/family_db.hpp"

namespace wqs {

struct VerifyOptions {
  bool oracle = false;
  std::uint64_t seed = 1;
  int samples = 50;
  int field_degree = 2;
  bool timing = true;
};

struct PhaseResult {
  std::string name;
  bool pass = false;
  std::optional<Certificate> certificate;
  std::optional<Exponents> determinant;
  std::string note;
};

struct VerificationReport {
  int family = 0;
  std::vector<PhaseResult> phases;
  bool pass = false;
  long millis = 0;
};

VerificationReport verify_typeI_family(const FamilyRecord& rec, const VerifyOptions& opt = {});
VerificationReport verify_typeII_family(const FamilyRecord& rec, const VerifyOptions& opt = {});
VerificationReport verify_special_family(const FamilyRecord& rec, const VerifyOptions& opt = {});

// all applicable phases for any class
VerificationReport verify_family(const FamilyRecord& rec, const VerifyOptions& opt = {});

// concurrent; results in ascending family number
std::vector<VerificationReport> verify_families(const std::vector<const FamilyRecord*>& recs,
                                                const VerifyOptions& opt = {});

// monomial systems used by the phases
MonomialList base_monomials(const FamilyRecord& rec);
MonomialList family19_monomials(const std::string& space);

std::string report_json(const std::vector<VerificationReport>& reports);
std::string report_text(const std::vector<VerificationReport>& reports);

}  // namespace wqs
