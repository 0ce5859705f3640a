#pragma once
// Scalar monotone Fock space over finitely many pointed Hilbert spaces
// (H_i, xi_i) with xi_i = e_0, the maps V_k and omega_k, the projections P_k
// and the representations j_k built from paired GNS data.

#include <map>
#include <utility>
#include <vector>

#include "cmono/report.hpp"
#include "cmono/word.hpp"

namespace cmono {

/// One tensor slot: algebra index and basis vector e_slot of H_index
/// (slot >= 1, so the vector lies in H_index°).
struct Slot {
  int index = 0;
  Eigen::Index slot = 0;
  auto operator<=>(const Slot&) const = default;
};
using FockBasisVector = std::vector<Slot>;  // empty = vacuum; indices strictly decreasing

class MonotoneFock {
 public:
  /// dims: index -> dim H_index (>= 1).
  explicit MonotoneFock(const std::map<int, Eigen::Index>& dims);

  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<FockBasisVector>& basis() const { return basis_; }
  Eigen::Index position(const FockBasisVector& v) const;  // -1 when absent
  Eigen::Index local_dim(int k) const;
  const std::vector<int>& indices() const { return indices_; }

  /// Basis positions spanning H(k) (vacuum and first index <= k).
  std::vector<Eigen::Index> upto(int k) const;
  /// Diagonal mask of H(k)° (H(k) without the vacuum).
  Mat reduced_upto_projection(int k) const;

  /// V_k : H -> H_k ⊗ H(k-1), rows ordered c * dim H(k-1) + s.
  Mat make_Vk(int k) const;
  /// V_k^*(T ⊗ I)V_k via the explicit matrix of V_k.
  Mat omega_dense(int k, const Mat& t) const;
  /// Same operator assembled entrywise.
  Mat omega(int k, const Mat& t) const;
  /// Projection onto C xi ⊕ H_k°.
  Mat P(int k) const;

 private:
  /// Index below k in H(k-1) coordinates, or -1.
  Eigen::Index sub_position(int k, Eigen::Index full) const;

  std::vector<int> indices_;
  std::map<int, Eigen::Index> dims_;
  std::vector<FockBasisVector> basis_;
  std::map<FockBasisVector, Eigen::Index> lookup_;
};

/// Fock model of a family with pairs (phi_i, psi_i) on scalar B.
class ScalarFockModel {
 public:
  /// Strict mode rejects phi != psi on the smallest index.
  explicit ScalarFockModel(const Family& family, bool strict = false);

  const MonotoneFock& fock() const { return fock_; }
  const Family& family() const { return family_; }
  const PairedGns& gns(int k) const { return gns_.at(k); }
  /// True when phi and psi differ on the smallest index (allowed in relaxed mode).
  bool minimal_pair_differs() const { return minimal_pair_differs_; }

  Mat j(int k, const Mat& a) const;
  /// j_{i_1}(a_1) ... j_{i_n}(a_n) xi (coefficient included).
  Vec apply_word(const Word& w) const;
  /// Phi(j(w)) = <j(w) xi, xi>.
  cd vacuum(const Word& w) const;
  cd vacuum_state(const Mat& t) const { return t(0, 0); }

 private:
  Family family_;
  MonotoneFock fock_;
  std::map<int, PairedGns> gns_;
  bool minimal_pair_differs_ = false;
};

/// Distance of j(w)xi - Phi(j(w))xi from H(i_1)°.
double vacuum_split_residual(const ScalarFockModel& m, const Word& w);

/// Closed-form moment rule at the canonical peak of w: |Phi(j(w)) - rhs| for the rule
/// that applies, plus the deviation from eval_cmonotone.
struct MomentRuleResidual {
  std::string pattern;  // "first", "last", "peak" or "single"
  double rule = 0.0;
  double oracle = 0.0;
};
MomentRuleResidual moment_rule_residual(const ScalarFockModel& m, const Word& w);

}  // namespace cmono
