#pragma once
// Scenario files: algebra families, maps, nestings and words in JSON.
//
// Complex numbers are [re, im] pairs and matrices row-major nested arrays.
// Algebras are {"kind": "full"|"diagonal"|"scalars"|"block_full"|
// "block_scalars", ...} or {"basis": [matrix, ...]}.

#include <array>
#include <optional>
#include <string>

#include "cmono/bimodule_fock.hpp"
#include "cmono/moments.hpp"
#include "json.hpp"

namespace cmono {

using nlohmann::json;

struct Scenario {
  Family family;
  std::optional<MapFamily> maps;                // "thetas"
  std::optional<std::array<Letter, 3>> remark45;  // "remark45.letters"
  std::optional<NestedScenario> nesting;         // "Btilde" + "nesting"
};

json complex_to_json(cd z);
cd complex_from_json(const json& j);
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);

AlgebraSpec algebra_from_json(const json& j);
/// sum_r K_r a K_r^*; identity when `j` has no "kraus" entry.
LinearMap kraus_map_from_json(const json& j, Eigen::Index in_dim, Eigen::Index out_dim);

/// Errors in structure or values are reported as ErrorKind::Schema unless a
/// more specific kind applies (NonState, NotAlgebra, ...).
Scenario scenario_from_json(const json& j);
Scenario load_scenario(const std::string& path);
json load_json_file(const std::string& path);

json word_to_json(const Word& w);
Word word_from_json(const json& j);

/// Path of a scenario shipped in the repository.
std::string bundled_scenario_path(const std::string& name);
Scenario bundled_scenario(const std::string& name);

/// (A_i, phi_i = psi_i o theta_i) over (D_i, psi_i) with D_i = target of theta_i.
CpScenario cp_scenario_from(const Scenario& s);

}  // namespace cmono
