#pragma once
// Dense complex linear algebra helpers shared by every module.

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cmono/error.hpp"

namespace cmono {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Absolute eigenvalue cutoff for Gram matrices when forming quotients.
inline constexpr double kGramCutoff = 1e-10;

/// Column-major vectorization, vec(a)[i + j*rows] = a(i, j).
Vec vectorize(const Mat& a);
Mat unvectorize(const Vec& v, Eigen::Index rows, Eigen::Index cols);

Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);

/// Smallest eigenvalue of the Hermitian part of `a`.
double min_eigenvalue(const Mat& a);
/// Largest singular value.
double operator_norm(const Mat& a);
Mat hermitian_part(const Mat& a);

/// Columns U spanning the range of a PSD Gram matrix G with U* G U = I.
/// Eigenvalues below `cutoff` are dropped.
Mat gram_orthonormal_range(const Mat& gram, double cutoff = kGramCutoff);

/// Orthonormal basis (standard inner product) of the orthogonal complement of
/// span(columns of q) inside C^n; `q` must have orthonormal columns.
Mat orthonormal_complement(const Mat& q);

/// Orthonormal basis of the column span of `a` (rank decided by `cutoff`).
Mat orthonormal_span(const Mat& a, double cutoff = 1e-12);

Mat matrix_sqrt_psd(const Mat& a);
Mat inverse_sqrt_psd(const Mat& a);

/// Standard complex Gaussian matrix (independent real and imaginary parts,
/// each N(0, 1/2)).
Mat random_gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols);
/// Gaussian matrix rescaled to unit operator norm.
Mat random_unit_norm(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols);
/// Random density matrix with full rank (Wishart, trace-normalized).
Mat random_density(std::mt19937_64& rng, Eigen::Index d);

/// Seed derivation for independent per-round streams (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// A linear map between matrix spaces M_in -> M_out, stored as the
/// (out^2 x in^2) matrix acting on column-major vectorizations.
class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(Eigen::Index in_dim, Eigen::Index out_dim, Mat matrix);

  static LinearMap from_function(Eigen::Index in_dim, Eigen::Index out_dim,
                                 const std::function<Mat(const Mat&)>& f);
  static LinearMap identity(Eigen::Index d);

  Eigen::Index in_dim() const { return in_dim_; }
  Eigen::Index out_dim() const { return out_dim_; }
  const Mat& matrix() const { return matrix_; }
  bool empty() const { return in_dim_ == 0 && out_dim_ == 0; }

  Mat operator()(const Mat& a) const;
  /// (this o inner)(a) = this(inner(a))
  LinearMap compose(const LinearMap& inner) const;

 private:
  Eigen::Index in_dim_ = 0;
  Eigen::Index out_dim_ = 0;
  Mat matrix_;
};

}  // namespace cmono
