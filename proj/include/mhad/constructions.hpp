#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "mhad/designs.hpp"
#include "mhad/error.hpp"
#include "mhad/sign_matrix.hpp"

namespace mhad {

// One evaluated congruence lhs == rhs (mod m), residues canonical.
struct Congruence {
  std::string text;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  bool holds() const noexcept { return lhs == rhs; }
};

// The three direct-sum congruences, evaluated as written:
//   v2 == -v1 + 4k1 - 4lambda1,  2k2 == 2k1 - 4lambda1,  4lambda2 == -4lambda1  (mod m)
struct CompatibilityReport {
  std::array<Congruence, 3> conditions;

  bool condition1() const noexcept { return conditions[0].holds(); }
  bool condition2() const noexcept { return conditions[1].holds(); }
  bool condition3() const noexcept { return conditions[2].holds(); }
  bool overall() const noexcept { return condition1() && condition2() && condition3(); }
  std::string describe() const;
};

class IncompatibleDesignsError : public Error {
public:
  explicit IncompatibleDesignsError(CompatibilityReport report);
  const CompatibilityReport& report() const noexcept { return report_; }

private:
  CompatibilityReport report_;
};

// v == 4(k - lambda) (mod m): the condition for 2D - J to be an MH(v, m).
Congruence two_design_condition(const DesignParams& p);

// 2D - J (0 -> -1, 1 -> +1). Throws ConditionViolated with both sides of the
// congruence when it fails.
SignMatrix two_design_hadamard(const ModularDesign& d);

// Entrywise 2D - J without any condition check.
SignMatrix to_sign_matrix(const BinaryMatrix& d);

// [[D1, J], [J^T, D2]].
BinaryMatrix direct_sum(const ModularDesign& d1, const ModularDesign& d2);

CompatibilityReport check_compatible(const DesignParams& p1, const DesignParams& p2);

// 2(D1 (+) D2) - J; throws IncompatibleDesignsError carrying the report.
SignMatrix direct_sum_hadamard(const ModularDesign& d1, const ModularDesign& d2);

}  // namespace mhad
