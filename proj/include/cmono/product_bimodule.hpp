#pragma once
// Monotone and free products of pointed Hilbert B-bimodules.
//
// The product is the direct sum of xi B and the tensor chains
// E_{t_0}° ⊗_B E_{t_1}° ⊗_B ... for index tuples t (strictly decreasing in
// the monotone case, alternating and length-bounded in the free case).
// Vectors are stored blockwise with several columns at once, so dense
// matrices and multi-vector products use the same code path.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "cmono/bmodule.hpp"
#include "cmono/word.hpp"

namespace cmono {

using Tuple = std::vector<int>;
using BlockVector = std::map<Tuple, Mat>;

enum class ProductKind { Monotone, Free };

class ProductBimodule {
 public:
  /// `factors` must be pointed modules (xi, n_xi set) with a right and a left
  /// B action; `left` carries the action of the factor algebra.
  ProductBimodule(AlgebraSpec b, std::map<int, BModule> factors, ProductKind kind, int n_max = 0);
  /// Same with the vacuum summand xi B replaced by `base`, a module carrying a
  /// left B action (used for induced representations).
  ProductBimodule(AlgebraSpec b, std::map<int, BModule> factors, BModule base);

  /// Builds every E_i = L^2(A_i, psi_i) from a family.
  static ProductBimodule from_family(const Family& family, ProductKind kind, int n_max = 0);

  ProductKind kind() const { return kind_; }
  int n_max() const { return n_max_; }
  const AlgebraSpec& b() const { return b_; }
  const BModule& factor(int k) const;
  std::vector<int> indices() const;

  /// Summand for tuple t (the vacuum module xi B when t is empty).
  const BModule& summand(const Tuple& t) const;
  /// Tensor data of a non-empty tuple: E_{t_0}° ⊗ summand(tail).
  const TensorModule& tensor(const Tuple& t) const;
  bool admissible(const Tuple& t) const;

  /// Every tuple of the monotone product, or of the free product up to n_max.
  std::vector<Tuple> all_tuples() const;
  /// Column offsets of the dense layout over `tuples`.
  std::map<Tuple, Eigen::Index> offsets(const std::vector<Tuple>& tuples, Eigen::Index* total = nullptr) const;

  /// Lift of an operator T on E_k: the action of T ⊗ Id through the
  /// structure isometry for index k.
  BlockVector apply_operator(int k, const Mat& t, const BlockVector& y) const;
  BlockVector apply_letter(int k, const Mat& a, const BlockVector& y) const {
    return apply_operator(k, factor(k).left(a), y);
  }
  /// Left multiplication by b in B on every summand.
  BlockVector apply_left_b(const Mat& b, const BlockVector& y) const;
  /// Letters applied right to left; bare B letters act by apply_left_b.
  BlockVector apply_word(const Word& w, const BlockVector& y) const;

  BlockVector vacuum_vector() const;
  /// <xi, y> for a single-column y.
  Mat vacuum_inner(const BlockVector& y) const;
  /// psi(j(w)) = <xi, j(w) xi>.
  Mat vacuum_expectation(const Word& w) const;

  /// Dense matrices over the given tuple layout (monotone default: all).
  Mat dense(const std::function<BlockVector(const BlockVector&)>& op, const std::vector<Tuple>& tuples) const;
  Mat dense_letter(int k, const Mat& a) const;
  Mat dense_left_b(const Mat& b) const;
  Mat dense_word(const Word& w) const;
  Eigen::Index total_dim() const;
  /// Conversions between block vectors and stacked dense columns.
  BlockVector from_dense(const Mat& x, const std::vector<Tuple>& tuples) const;
  Mat to_dense(const BlockVector& y, const std::vector<Tuple>& tuples, Eigen::Index cols) const;

 private:
  AlgebraSpec b_;
  std::map<int, BModule> factors_;
  std::map<int, BModule> reduced_;
  ProductKind kind_;
  int n_max_;
  BModule vacuum_;
  struct Cache {
    std::recursive_mutex mutex;
    std::map<Tuple, std::unique_ptr<TensorModule>> tensors;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

void add_block(BlockVector& y, const Tuple& t, const Mat& m);

}  // namespace cmono
