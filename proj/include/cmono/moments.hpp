#pragma once
// Recursive evaluation of monotone, c-monotone and map-product moments.

#include <functional>
#include <map>
#include <random>

#include "cmono/word.hpp"

namespace cmono {

/// Bimodule maps theta_i : A_i -> D with B embedded in D.
struct MapFamily {
  AlgebraSpec d;
  LinearMap b_embed;                // B -> D
  std::map<int, LinearMap> theta;  // index -> (A_i -> D)
};

/// Where each rule may be applied. `Canonical` always takes the leftmost
/// occurrence of the largest index; `Random` picks uniformly among every
/// admissible position.
enum class OrderPolicy { Canonical, Random };

struct EvalOptions {
  OrderPolicy policy = OrderPolicy::Canonical;
  std::mt19937_64* rng = nullptr;  // required for Random
};

/// B-valued monotone moment psi(w).
Mat eval_monotone(const Family& family, const Word& w, const EvalOptions& opt = {});

/// Scalar c-monotone moment phi(w). Requires B = C and every phi_i.
cd eval_cmonotone(const Family& family, const Word& w, const EvalOptions& opt = {});

/// Monotone product of maps (D-valued). theta_i|_B must be the identity.
Mat eval_map_product(const Family& family, const MapFamily& maps, const Word& w,
                     const EvalOptions& opt = {});

/// Checks theta_i(iota(b)) = b_embed(b) and shapes; throws ContextMismatch.
void validate_map_family(const Family& family, const MapFamily& maps, double tol = 1e-9);

/// The family with D = B and theta_i = psi_i.
MapFamily psi_as_maps(const Family& family);

/// Largest pairwise deviation among `n_orders` randomly ordered evaluations
/// (plus the canonical one).
double order_deviation(const std::function<Mat(const EvalOptions&)>& evaluate, int n_orders,
                       std::mt19937_64& rng);

/// Two-level evaluation: indices are grouped into consecutive blocks of the
/// order, the product is formed inside every block and then across blocks.
Mat eval_map_product_grouped(const Family& family, const MapFamily& maps, const Word& w,
                             const std::vector<std::vector<int>>& groups);

}  // namespace cmono
