#pragma once
// Verifiers built on the monotone and free product bimodules: moment rules,
// the peak identity, the free-product counterexample, the conditional
// expectation onto one factor, induced representations, embeddings of
// products and the completely positive map between products.

#include <array>
#include <map>
#include <random>

#include "cmono/moments.hpp"
#include "cmono/product_bimodule.hpp"

namespace cmono {

/// B-norm of a B-valued difference (largest singular value).
inline double b_norm(const Mat& x) { return operator_norm(x); }

/// Moment rule at the canonical position of w and agreement with the
/// recursive evaluator.
struct RuleResidual {
  std::string pattern;  // "single", "first", "last", "peak" or "empty"
  double rule = 0.0;
  double oracle = 0.0;
};
RuleResidual prop41_residual(const ProductBimodule& m, const Family& family, const Word& w);

/// || a1 a2 a3 - a1 psi(a2) a3 || with psi(a2) acting by left B action.
double remark42_identity_residual(const ProductBimodule& m, const Family& family,
                                  const std::array<Letter, 3>& letters);
/// For k < l: || (ab - a psi(b)) restricted to E minus E_l° ⊗ E(l-1) ||.
double remark42_restriction_residual(const ProductBimodule& m, const Family& family, const Letter& a,
                                     const Letter& b);

/// Largest deviation between u_i(a) and j_i(a) on the monotone summands.
double free_restriction_residual(const ProductBimodule& free_product, const ProductBimodule& monotone, int k,
                                 const Mat& a);

struct Remark45Result {
  double lhs_norm = 0.0;       // || A1 psi(A2) A3 (f3 ⊗ f2) ||
  double rhs_norm = 0.0;       // || A1 A2 A3 (f3 ⊗ f2) ||
  double component_norm = 0.0; // part of the rhs vector lying in E_{i1}° ⊗ xi B
  double predicted_norm = 0.0; // || a1^ <g, g> || with g = <f2, f2> (a3^*)^
  Mat f2_inner;                // <f2, f2>
  Mat f3_inner;                // <f3, f3>
};
/// Letters must sit on indices i1 < i2 > i3 with psi(a_j) = 0.
Remark45Result counterexample_remark45(const Family& family, const std::array<Letter, 3>& letters, int n_max = 4);

/// Psi_{i0}(x) = Q x Q pulled back to A_{i0}.
class CondExpPsi {
 public:
  CondExpPsi(const ProductBimodule& m, const Family& family, int i0);
  int index() const { return i0_; }
  /// Q x Q on the range of Q, for a dense operator over all tuples.
  Mat compress(const Mat& x) const;
  /// Element of A_{i0}; throws NotInImage when the residual exceeds `tol`.
  Mat operator()(const Mat& x, double tol = 1e-8) const;

 private:
  ProductBimodule m_;
  Family family_;
  int i0_;
  std::vector<Eigen::Index> rows_;
  Mat basis_images_;  // column p = vec(compress(j(b_p)))
};

/// Induced representation of the generated algebra on F ⊗_rho K where rho is
/// the left action of A_{i0} on K = E_{i0} ⊗ C^{dim B}. Requires i0 to be the
/// smallest index.
class InducedRepresentation {
 public:
  InducedRepresentation(const Family& family, int i0);
  Eigen::Index dim() const { return dim_; }
  Eigen::Index k_dim() const { return k_dim_; }
  /// rho on K.
  Mat rho(const Mat& a) const;
  Mat letter(int i, const Mat& a) const;
  Mat word(const Word& w) const;

 private:
  Family family_;
  int i0_;
  std::unique_ptr<ProductBimodule> product_;
  BModule k_;
  std::vector<Tuple> tuples_;
  Eigen::Index dim_ = 0;
  Eigen::Index k_dim_ = 0;
};

/// Inclusions A_i ⊆ Ã_i and B ⊆ B̃ for the embedding theorem.
struct NestedScenario {
  Family small;
  Family tilde;
  std::map<int, LinearMap> kappa;  // A_i -> Ã_i
  LinearMap iota;                  // B -> B̃
};
bool nested_is_unital(const NestedScenario& s, double tol = 1e-12);
/// A_i + C(1 - kappa(1)) over B + C(1 - iota(1)), realized inside Ã_i, B̃.
NestedScenario pad_nested(const NestedScenario& s);

struct EmbeddingResult {
  double max_norm_gap = 0.0;     // max | ||sigma(x)|| - ||sigma~(x)|| |
  double min_excess = 0.0;       // min ( ||sigma~(x)|| - ||sigma(x)|| )
  double moment_residual = 0.0;  // max || psi~(sigma~(w)) - iota(psi(sigma(w))) ||
  double padded_gap = 0.0;       // same norm gap against the padded product (non-unital case)
  bool padded = false;
  int polynomials = 0;
};
EmbeddingResult verify_embedding_prop46(const NestedScenario& s, std::mt19937_64& rng, int n_polys = 50,
                                        int max_len = 4, int terms = 3);

/// theta_i : A_i -> D_i over common B with psi_i o theta_i = phi_i.
struct CpScenario {
  Family a;  // (A_i, phi_i)
  Family d;  // (D_i, psi_i)
  std::map<int, LinearMap> theta;
};

class CpEmbedding {
 public:
  explicit CpEmbedding(const CpScenario& s, double tol = 1e-9);
  const ProductBimodule& e() const { return *e_; }
  const ProductBimodule& f() const { return *f_; }
  const Mat& v() const { return v_; }
  const Mat& v_factor(int i) const { return v_factors_.at(i); }
  const BModule& f_factor(int i) const { return f_->factor(i); }

  /// theta(w) = v^* sigma(w) v as an operator on E.
  Mat theta(const Word& w) const;
  /// j^E_i(theta_i(a)).
  Mat target_letter(int i, const Mat& a) const;

 private:
  CpScenario s_;
  std::unique_ptr<ProductBimodule> e_;
  std::unique_ptr<ProductBimodule> f_;
  std::map<int, Mat> v_factors_;
  Mat v_;
  std::vector<Tuple> e_tuples_;
  std::vector<Tuple> f_tuples_;
};

}  // namespace cmono
