#include "cmono/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cmono {

namespace {

bool verdict(Metric m, double value, double tol) {
  if (!std::isfinite(value)) return false;
  switch (m) {
    case Metric::Residual: return value <= tol;
    case Metric::MinEigenvalue: return value >= -tol;
    case Metric::LowerBound: return value >= tol;
  }
  return false;
}

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::Residual: return "residual";
    case Metric::MinEigenvalue: return "min_eigenvalue";
    case Metric::LowerBound: return "lower_bound";
  }
  return "?";
}

bool has_prefix(const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0; }

}  // namespace

CaseResult& VerificationReport::add(std::string id, std::string anchor, double value, double tol,
                                    Metric metric, std::string note) {
  CaseResult c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.metric = metric;
  c.value = value;
  c.tol = tol;
  c.pass = verdict(metric, value, tol);
  c.note = std::move(note);
  cases.push_back(std::move(c));
  return cases.back();
}

void VerificationReport::add_error(std::string id, std::string anchor, const std::string& what) {
  CaseResult& c = add(std::move(id), std::move(anchor), std::numeric_limits<double>::quiet_NaN(), 0.0);
  c.note = what;
  c.pass = false;
}

void VerificationReport::merge(const VerificationReport& other) {
  cases.insert(cases.end(), other.cases.begin(), other.cases.end());
}

bool VerificationReport::passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; });
}

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return !c.pass; }));
}

double VerificationReport::worst(const std::string& prefix) const {
  double w = std::numeric_limits<double>::quiet_NaN();
  for (const CaseResult& c : cases) {
    if (!has_prefix(c.id, prefix)) continue;
    if (std::isnan(w)) {
      w = c.value;
    } else if (c.metric == Metric::Residual) {
      w = std::max(w, c.value);
    } else {
      w = std::min(w, c.value);
    }
  }
  return w;
}

bool VerificationReport::passed(const std::string& prefix) const {
  bool any = false;
  for (const CaseResult& c : cases) {
    if (!has_prefix(c.id, prefix)) continue;
    any = true;
    if (!c.pass) return false;
  }
  return any;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["report_version"] = kReportVersion;
  j["suite"] = suite;
  j["seed"] = seed;
  nlohmann::json arr = nlohmann::json::array();
  for (const CaseResult& c : cases) {
    nlohmann::json e;
    e["id"] = c.id;
    e["paper_anchor"] = c.anchor;
    e["metric"] = metric_name(c.metric);
    if (std::isfinite(c.value))
      e["value"] = c.value;
    else
      e["value"] = nullptr;
    e["tol"] = c.tol;
    e["pass"] = c.pass;
    if (!c.note.empty()) e["note"] = c.note;
    arr.push_back(std::move(e));
  }
  j["cases"] = std::move(arr);
  j["summary"] = {{"total", cases.size()}, {"passed", cases.size() - failures()}, {"failed", failures()}};
  return j;
}

}  // namespace cmono
