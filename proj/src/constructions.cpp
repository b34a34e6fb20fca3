#include "mhad/constructions.hpp"

#include <sstream>

#include "mhad/number_theory.hpp"

namespace mhad {

std::string CompatibilityReport::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < conditions.size(); ++i) {
    const auto& c = conditions[i];
    os << "condition " << (i + 1) << ": " << c.text << " -> " << c.lhs << (c.holds() ? " == " : " != ") << c.rhs
       << '\n';
  }
  return os.str();
}

IncompatibleDesignsError::IncompatibleDesignsError(CompatibilityReport report)
    : Error(ErrorCode::IncompatibleDesigns, "designs are not direct-sum compatible:\n" + report.describe()),
      report_(std::move(report)) {}

Congruence two_design_condition(const DesignParams& p) {
  const auto m = p.m();
  return {"v == 4(k - lambda) (mod " + std::to_string(m) + ")", mod(p.v(), m), mod(4 * (p.k() - p.lambda()), m)};
}

SignMatrix to_sign_matrix(const BinaryMatrix& d) {
  SignMatrix h(d.order());
  h.bits() = d.bits();
  h.bits().complement();
  return h;
}

SignMatrix two_design_hadamard(const ModularDesign& d) {
  const auto c = two_design_condition(d.params());
  if (!c.holds())
    throw Error(ErrorCode::ConditionViolated, "2D-J needs " + c.text + " for " + d.params().to_string() + ": lhs " +
                                                  std::to_string(c.lhs) + ", rhs " + std::to_string(c.rhs));
  return to_sign_matrix(d.matrix());
}

BinaryMatrix direct_sum(const ModularDesign& d1, const ModularDesign& d2) {
  const std::size_t v1 = d1.matrix().order();
  const std::size_t v2 = d2.matrix().order();
  BinaryMatrix out(v1 + v2);
  for (std::size_t r = 0; r < v1; ++r) {
    out.bits().copy_bits(r, 0, d1.matrix().bits(), r, 0, v1);
    out.bits().set_range(r, v1, v2, true);
  }
  for (std::size_t r = 0; r < v2; ++r) {
    out.bits().set_range(v1 + r, 0, v1, true);
    out.bits().copy_bits(v1 + r, v1, d2.matrix().bits(), r, 0, v2);
  }
  return out;
}

CompatibilityReport check_compatible(const DesignParams& p1, const DesignParams& p2) {
  if (p1.m() != p2.m())
    throw Error(ErrorCode::ModulusMismatch, "direct sum needs a common modulus, got " + std::to_string(p1.m()) +
                                                " and " + std::to_string(p2.m()));
  const auto m = p1.m();
  const std::string suffix = " (mod " + std::to_string(m) + ")";
  CompatibilityReport report;
  report.conditions[0] = {"v2 == -v1 + 4k1 - 4lambda1" + suffix, mod(p2.v(), m),
                          mod(-p1.v() + 4 * p1.k() - 4 * p1.lambda(), m)};
  report.conditions[1] = {"2k2 == 2k1 - 4lambda1" + suffix, mod(2 * p2.k(), m), mod(2 * p1.k() - 4 * p1.lambda(), m)};
  report.conditions[2] = {"4lambda2 == -4lambda1" + suffix, mod(4 * p2.lambda(), m), mod(-4 * p1.lambda(), m)};
  return report;
}

SignMatrix direct_sum_hadamard(const ModularDesign& d1, const ModularDesign& d2) {
  auto report = check_compatible(d1.params(), d2.params());
  if (!report.overall()) throw IncompatibleDesignsError(std::move(report));
  return to_sign_matrix(direct_sum(d1, d2));
}

}  // namespace mhad
