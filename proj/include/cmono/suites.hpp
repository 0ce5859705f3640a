#pragma once
// Verification suites. Each check returns a report whose cases carry a
// metric, a tolerance and a verdict; suites merge the checks of one area.

#include <cstdint>
#include <string>
#include <vector>

#include "cmono/report.hpp"
#include "cmono/scenario.hpp"

namespace cmono {

struct SuiteOptions {
  std::uint64_t seed = 1;
  double tol = 1e-9;       // equalities
  double eig_tol = 1e-8;   // minimal eigenvalues
  int rounds = 50;         // Gram rounds
  std::string scenario;    // optional override, slotted by content
};

/// Bundled scenarios, with an optional user scenario replacing the slot it fits.
struct ScenarioSet {
  Scenario scalar;     // B = C, three copies of M_2 with phi, psi and thetas
  Scenario diag;       // B = diagonal M_2
  Scenario remark45;   // trace states and centered letters
  Scenario nested_unital;
  Scenario nested_nonunital;
};
ScenarioSet load_scenarios(const SuiteOptions& opt);

// Individual checks.
VerificationReport check_scalar_fock(const Scenario& s, const SuiteOptions& opt, int max_len = 5);
VerificationReport check_bimodule_moments(const Scenario& s, const SuiteOptions& opt, int max_len = 5);
VerificationReport check_order_independence(const Scenario& scalar, const Scenario& diag, const SuiteOptions& opt,
                                            int n_words = 200, int n_orders = 10, int max_len = 6);
VerificationReport check_cfree(const Scenario& s, const SuiteOptions& opt, int n_words = 200);
VerificationReport check_cp_gram(const Scenario& s, const SuiteOptions& opt);
VerificationReport check_peak_identity(const Scenario& s, const SuiteOptions& opt);
VerificationReport check_remark45(const Scenario& s, const SuiteOptions& opt);
VerificationReport check_cond_exp(const Scenario& s, const SuiteOptions& opt, int n_words = 60);
VerificationReport check_induced(const Scenario& s, const SuiteOptions& opt, int n_words = 40);
VerificationReport check_free_product(const Scenario& s, const SuiteOptions& opt);
VerificationReport check_embedding(const Scenario& s, const SuiteOptions& opt, const std::string& label,
                                   int n_polys = 50);
VerificationReport check_cp_embedding(const Scenario& s, const SuiteOptions& opt, int n_random = 100);

const std::vector<std::string>& suite_names();
/// Throws Error(Precondition) for an unknown suite name.
VerificationReport run_suite(const std::string& name, const ScenarioSet& set, const SuiteOptions& opt);

}  // namespace cmono
