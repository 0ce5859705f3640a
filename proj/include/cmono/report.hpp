#pragma once
// Verification reports: named cases with a metric, a tolerance and a verdict.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace cmono {

enum class Metric {
  Residual,       // pass when value <= tol
  MinEigenvalue,  // pass when value >= -tol
  LowerBound,     // pass when value >= tol (negative controls, nonzero checks)
};

struct CaseResult {
  std::string id;
  std::string anchor;
  Metric metric = Metric::Residual;
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string note;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CaseResult> cases;

  CaseResult& add(std::string id, std::string anchor, double value, double tol,
                  Metric metric = Metric::Residual, std::string note = {});
  /// Adds a failing case describing an exception.
  void add_error(std::string id, std::string anchor, const std::string& what);
  void merge(const VerificationReport& other);

  bool passed() const;
  std::size_t failures() const;
  /// Worst value among cases whose id starts with `prefix` (max for
  /// residuals, min otherwise).
  double worst(const std::string& prefix) const;
  bool passed(const std::string& prefix) const;

  nlohmann::json to_json() const;
};

inline constexpr int kReportVersion = 1;

}  // namespace cmono
