#pragma once
// Finite-dimensional *-algebras realized inside M_d, states, conditional
// expectations and scalar GNS representations.

#include <cstdint>
#include <vector>

#include "cmono/linalg.hpp"

namespace cmono {

/// Unital *-subalgebra of M_d given by a linearly independent basis.
class AlgebraSpec {
 public:
  AlgebraSpec() = default;
  explicit AlgebraSpec(std::vector<Mat> basis, double tol = 1e-9);

  static AlgebraSpec full_matrix(Eigen::Index d);
  static AlgebraSpec diagonal(Eigen::Index d);
  /// C * I_d.
  static AlgebraSpec scalars(Eigen::Index d = 1);
  /// Block-diagonal direct sum; basis is the union of the padded bases.
  static AlgebraSpec direct_sum(const AlgebraSpec& a, const AlgebraSpec& b);

  Eigen::Index dim() const { return d_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<Mat>& basis() const { return basis_; }
  /// Index of a basis element equal to the identity, or -1.
  int unit_index() const { return unit_; }
  bool is_full_matrix() const { return size() == d_ * d_; }

  /// Least-squares coefficients of `a` in the basis.
  Vec coords(const Mat& a) const;
  Mat element(const Vec& c) const;
  /// Distance from `a` to the span (Frobenius).
  double membership_residual(const Mat& a) const;
  bool contains(const Mat& a, double tol = 1e-9) const { return membership_residual(a) <= tol; }

  /// Matrix of x -> a x (resp. x a) in basis coordinates.
  Mat left_mult_matrix(const Mat& a) const;
  Mat right_mult_matrix(const Mat& a) const;

  /// Gaussian combination of basis elements scaled to unit operator norm.
  Mat random_element(std::mt19937_64& rng) const;

 private:
  Eigen::Index d_ = 0;
  std::vector<Mat> basis_;
  Mat basis_matrix_;  // d^2 x m, column p = vec(b_p)
  Mat pinv_;          // m x d^2
  int unit_ = -1;
};

/// State phi(a) = tr(rho a) given by a density matrix.
class StateSpec {
 public:
  StateSpec() = default;
  explicit StateSpec(Mat density, double tol = 1e-9);

  const Mat& density() const { return rho_; }
  cd operator()(const Mat& a) const { return (rho_.cwiseProduct(a.transpose())).sum(); }
  bool faithful(double tol = 1e-10) const { return min_eigenvalue(rho_) > tol; }

 private:
  Mat rho_;
};

/// Positive B-bimodule projection psi: A -> B together with the embedding
/// iota: B -> A. Both are stored as maps on the ambient matrix spaces.
class CondExpSpec {
 public:
  CondExpSpec() = default;
  CondExpSpec(AlgebraSpec source, AlgebraSpec target, LinearMap embedding, LinearMap map,
              double tol = 1e-9);

  /// B = C, iota(lambda) = lambda I, psi = phi.
  static CondExpSpec from_state(const AlgebraSpec& a, const StateSpec& phi);
  /// A inside M_d onto the diagonal matrices.
  static CondExpSpec diagonal_compression(const AlgebraSpec& a);
  static CondExpSpec identity(const AlgebraSpec& b);

  const AlgebraSpec& source() const { return source_; }
  const AlgebraSpec& target() const { return target_; }
  const LinearMap& embedding() const { return embedding_; }
  const LinearMap& map() const { return map_; }

  Mat operator()(const Mat& a) const { return map_(a); }
  Mat embed(const Mat& b) const { return embedding_(b); }

 private:
  AlgebraSpec source_;
  AlgebraSpec target_;
  LinearMap embedding_;
  LinearMap map_;
};

/// *-representation of an algebra on C^dim with a distinguished unit vector.
struct Representation {
  Eigen::Index dim = 0;
  LinearMap action;  // M_d -> M_dim
  Vec xi;

  Mat operator()(const Mat& a) const { return action(a); }
};

/// Largest deviation from multiplicativity and *-preservation on basis pairs.
double representation_defect(const AlgebraSpec& a, const Representation& rep);

/// Coefficient matrix V (m x r) whose columns are orthonormal for the
/// semi-inner product given by `gram` and whose first column is equivalent to
/// `point` modulo the null space. `point` must have norm 1.
Mat pointed_orthonormal_basis(const Mat& gram, const Vec& point, double cutoff = kGramCutoff);

/// GNS of (A, phi): dim = rank of [phi(b_p^* b_q)], xi = class of 1 = e_0.
Representation gns(const AlgebraSpec& a, const StateSpec& phi);

/// Common-vector realization of two states on H_phi (+) H_psi.
struct PairedGns {
  Representation pi;     // reproduces phi at xi
  Representation sigma;  // reproduces psi at xi
};
PairedGns paired_gns(const AlgebraSpec& a, const StateSpec& phi, const StateSpec& psi);

}  // namespace cmono
