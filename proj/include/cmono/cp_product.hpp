#pragma once
// Free and monotone products of B-bimodule maps, unitalization of a member
// and positivity checks (Choi matrix, sampled Gram matrices).

#include <cstdint>
#include <functional>
#include <random>

#include "cmono/moments.hpp"
#include "cmono/report.hpp"

namespace cmono {

/// theta_*(w): every letter is split into its centered part and psi(a), and
/// centered alternating words map to theta_{i_1}(a_1) ... theta_{i_n}(a_n).
Mat free_product_maps(const Family& family, const MapFamily& maps, const Word& w);

/// Monotone product of maps extended linearly to polynomials.
Mat monotone_product_maps(const Family& family, const MapFamily& maps, const NCPoly& p);

/// Ã = A ⊕ B realized block-diagonally: b 1 + a = diag(a + iota(b), b).
struct Unitalization {
  Member member;         // Ã with psi~ (lowest: psi~(b1 + a) = b; otherwise b + psi(a))
  LinearMap theta;       // theta~(b1 + a) = b + theta(a)
  Mat e;                 // 1~ - 1_A
  LinearMap lift;        // a -> diag(a, 0)
};
Unitalization unitalize(const Member& member, const LinearMap& theta, const AlgebraSpec& b, bool lowest);

/// The unitalized two-member family and maps.
std::pair<Family, MapFamily> unitalize_pair(const Family& family, const MapFamily& maps);

/// Free product of the unitalized maps against the monotone product of the
/// original maps on random alternating words (two-member families).
VerificationReport verify_cfree_monot(const Family& family, const MapFamily& maps, std::mt19937_64& rng,
                                      int n_words = 200, int max_len = 6, double tol = 1e-9);

/// Smallest eigenvalue of the Choi matrix [theta(E_pq)] of a map on M_d.
double cp_check_choi(const AlgebraSpec& source, const LinearMap& theta);

struct GramOptions {
  int rounds = 50;
  int max_m = 6;
  int max_len = 3;
  std::uint64_t seed = 0;
};

struct GramResult {
  double min_eigenvalue = 0.0;
  std::vector<double> per_round;
  double asymmetry = 0.0;  // max || G - G^* ||
};

/// Gram matrices [theta(w_p^* w_q)] over random word samples. Rounds use
/// independent streams derived from `seed` and run in parallel; `theta` must
/// be safe to call concurrently.
GramResult cp_check_gram(const Family& family, const std::function<Mat(const Word&)>& theta,
                         const GramOptions& opt);

/// a -> sum_r K_r a K_r^* with Kraus operators normalized so that theta(1) = 1.
/// Throws Precondition when rank * d_in < d_out (sum K K^* would be singular).
LinearMap random_unital_cp_map(std::mt19937_64& rng, Eigen::Index d_in, Eigen::Index d_out, int rank);

/// a -> a^T, unital and positive but not completely positive.
LinearMap transpose_map(Eigen::Index d);

}  // namespace cmono
