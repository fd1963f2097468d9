#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace llt {

/// Malformed input: wrong shapes, out-of-range indices, inconsistent
/// dimensions. Distinct from an axiom failing on well-formed data.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An input violates a documented precondition of an operation, such as a
/// morphism whose group component is not a homomorphism.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point or group element left the coordinate chart (matrix log domain).
class ChartError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A partially defined operation was evaluated outside its domain
/// (e.g. (g, p) outside Omega, or a vector outside a required subspace).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested operation needs data that was not supplied, such as a
/// faithful representation for an algebra with nontrivial center.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Violation {
  std::string law;
  std::vector<int> index;
  double residual = 0.0;
};

/// Outcome of an axiom check. Residuals are recorded per law; anything above
/// the tolerance marks the report as failed and is listed (up to
/// kMaxViolations entries).
struct ValidityReport {
  static constexpr std::size_t kMaxViolations = 20;

  bool passed = true;
  double max_residual = 0.0;
  std::vector<Violation> violations;
  std::size_t violation_count = 0;
  std::map<std::string, double> residuals;
  std::map<std::string, std::size_t> failures;  // violation count per law
  std::map<std::string, bool> flags;

  void record(const std::string& law, std::vector<int> index, double residual,
              double tol);
  /// Registers a law with zero residual so it shows up in the report even
  /// when nothing was evaluated (e.g. empty index sets).
  void touch(const std::string& law);
  void fail(const std::string& law, std::vector<int> index, double residual);
  void merge(const ValidityReport& other, const std::string& prefix = "");

  double residual(const std::string& law) const;
  bool law_passed(const std::string& law) const;
  explicit operator bool() const { return passed; }
};

/// Thrown by constructors that validate axioms (build_triple and friends).
class ConstraintError : public std::runtime_error {
 public:
  ConstraintError(std::string constraint, double residual,
                  ValidityReport report);

  const std::string& constraint() const { return constraint_; }
  double residual() const { return residual_; }
  const ValidityReport& report() const { return report_; }

 private:
  std::string constraint_;
  double residual_;
  ValidityReport report_;
};

}  // namespace llt
