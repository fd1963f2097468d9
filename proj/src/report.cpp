#include "llt/report.hpp"

#include <algorithm>
#include <cmath>

namespace llt {

void ValidityReport::record(const std::string& law, std::vector<int> index,
                            double residual, double tol) {
  auto& slot = residuals[law];
  // NaN must never pass silently.
  if (std::isnan(residual)) residual = INFINITY;
  slot = std::max(slot, residual);
  max_residual = std::max(max_residual, residual);
  if (residual > tol) {
    passed = false;
    ++violation_count;
    ++failures[law];
    if (violations.size() < kMaxViolations) {
      violations.push_back({law, std::move(index), residual});
    }
  }
}

void ValidityReport::touch(const std::string& law) { residuals.try_emplace(law, 0.0); }

void ValidityReport::fail(const std::string& law, std::vector<int> index,
                          double residual) {
  record(law, std::move(index), std::isfinite(residual) ? residual : INFINITY,
         -1.0);
}

void ValidityReport::merge(const ValidityReport& other,
                           const std::string& prefix) {
  passed = passed && other.passed;
  max_residual = std::max(max_residual, other.max_residual);
  violation_count += other.violation_count;
  for (const auto& v : other.violations) {
    if (violations.size() >= kMaxViolations) break;
    violations.push_back({prefix + v.law, v.index, v.residual});
  }
  for (const auto& [law, r] : other.residuals) {
    auto& slot = residuals[prefix + law];
    slot = std::max(slot, r);
  }
  for (const auto& [law, count] : other.failures) failures[prefix + law] += count;
  for (const auto& [name, f] : other.flags) flags[prefix + name] = f;
}

double ValidityReport::residual(const std::string& law) const {
  auto it = residuals.find(law);
  return it == residuals.end() ? 0.0 : it->second;
}

bool ValidityReport::law_passed(const std::string& law) const {
  return failures.find(law) == failures.end();
}

ConstraintError::ConstraintError(std::string constraint, double residual,
                                 ValidityReport report)
    : std::runtime_error(constraint + " violated (max residual " +
                         std::to_string(residual) + ")"),
      constraint_(std::move(constraint)),
      residual_(residual),
      report_(std::move(report)) {}

}  // namespace llt
