#pragma once
// Finite-dimensional Hilbert modules with values in a matrix algebra.
//
// A module is described in coordinates that are orthonormal for the
// scalarized inner product tr<x, y>. Inner products take values in
// value_dim x value_dim matrices and are linear in the second variable.

#include "cmono/algebra.hpp"

namespace cmono {

struct BModule {
  Eigen::Index n = 0;
  Eigen::Index value_dim = 1;
  /// (n*v) x (n*v); block (p, q) is <e_p, e_q>.
  Mat gram;
  /// b -> matrix of x -> x b (absent for scalar spaces).
  LinearMap right;
  /// b -> matrix of x -> b x.
  LinearMap left_b;
  /// a -> matrix of the left action of an algebra (absent when none).
  LinearMap left;
  /// Distinguished vector; coordinates [0, n_xi) span xi B and the
  /// remaining ones span the orthogonal complement E°.
  Vec xi;
  Eigen::Index n_xi = 0;

  Mat block(Eigen::Index p, Eigen::Index q) const {
    return gram.block(p * value_dim, q * value_dim, value_dim, value_dim);
  }
  Mat inner(const Vec& x, const Vec& y) const;
  Eigen::Index n_reduced() const { return n - n_xi; }
};

/// Tensor product over B with its quotient data: raw index p * nF + q maps to
/// module coordinates through `coords`; `lift` is a right inverse.
struct TensorModule {
  BModule module;
  Mat coords;  // n x (nE * nF)
  Mat lift;    // (nE * nF) x n
  Eigen::Index n_left = 0;
  Eigen::Index n_right = 0;

  /// Operator on the quotient induced by a raw operator.
  Mat induced(const Mat& raw_op) const { return coords * raw_op * lift; }
};

/// Largest violation of the module axioms on basis vectors and B basis
/// elements; the left action (when present) is tested on `left_basis`.
double module_defect(const BModule& e, const AlgebraSpec& b, const std::vector<Mat>& left_basis = {});

/// L^2(A, psi) with xi = class of 1, split as xi B (+) E°.
BModule gns_module(const AlgebraSpec& a, const CondExpSpec& psi);

/// E ⊗_B F. The inner product of E takes values on which `action` acts on F
/// (default: F.left_b). Left actions of E carry over as T ⊗ I, the right
/// action of F as I ⊗ R.
TensorModule tensor_over(const BModule& e, const BModule& f, const LinearMap& action = {});

/// Rotate coordinates so that xi B comes first. `b` is the algebra acting on
/// the right; `xi` must satisfy <xi, xi> = 1.
/// When `rotation` is given it receives R with new coordinates x' = R^* x.
BModule make_pointed(const BModule& e, const Vec& xi, const AlgebraSpec& b, Mat* rotation = nullptr);

/// The complement E° as a module of its own (left B action and right action
/// restricted; no distinguished vector).
BModule reduced(const BModule& e);

/// Same module in new orthonormal coordinates x' = R^* x for unitary R.
BModule rotate(const BModule& e, const Mat& r);

}  // namespace cmono
