#include "cmono/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace cmono {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonState: return "NonState";
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::NotAlgebra: return "NotAlgebra";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UnknownIndex: return "UnknownIndex";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::MixedB: return "MixedB";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::DegenerateChoice: return "DegenerateChoice";
    case ErrorKind::NotInImage: return "NotInImage";
    case ErrorKind::NotFullAlgebra: return "NotFullAlgebra";
    case ErrorKind::CompatibilityFail: return "CompatibilityFail";
    case ErrorKind::NonUnitalInclusion: return "NonUnitalInclusion";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::Schema: return "Schema";
  }
  return "Error";
}

Vec vectorize(const Mat& a) { return Eigen::Map<const Vec>(a.data(), a.size()); }

Mat unvectorize(const Vec& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw Error(ErrorKind::ShapeMismatch, "unvectorize");
  return Eigen::Map<const Mat>(v.data(), rows, cols);
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Mat hermitian_part(const Mat& a) { return 0.5 * (a + a.adjoint()); }

double min_eigenvalue(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double operator_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

Mat gram_orthonormal_range(const Mat& gram, double cutoff) {
  const Eigen::Index n = gram.rows();
  if (n == 0) return Mat(0, 0);
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(gram));
  const auto& ev = es.eigenvalues();
  if (ev.minCoeff() < -std::max(cutoff, 1e-8 * std::max(1.0, ev.maxCoeff())))
    throw Error(ErrorKind::NonPositive,
                "Gram matrix has eigenvalue " + std::to_string(ev.minCoeff()));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = n - 1; i >= 0; --i)
    if (ev(i) > cutoff) keep.push_back(i);
  Mat u(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    u.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]) / std::sqrt(ev(keep[c]));
  return u;
}

Mat orthonormal_span(const Mat& a, double cutoff) {
  if (a.cols() == 0 || a.rows() == 0) return Mat(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cutoff * std::max(1.0, s(0))) ++r;
  return svd.matrixU().leftCols(r);
}

Mat orthonormal_complement(const Mat& q) {
  const Eigen::Index n = q.rows();
  Mat proj = Mat::Identity(n, n) - q * q.adjoint();
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(proj));
  Mat out(n, n - q.cols());
  Eigen::Index c = 0;
  for (Eigen::Index i = n - 1; i >= 0 && c < out.cols(); --i) out.col(c++) = es.eigenvectors().col(i);
  return out;
}

Mat matrix_sqrt_psd(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(a));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat inverse_sqrt_psd(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(a));
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw Error(ErrorKind::NonPositive, "inverse_sqrt_psd of a singular matrix");
  Eigen::VectorXd ev = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * ev.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat random_gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = cd(n(rng), n(rng));
  return m;
}

Mat random_unit_norm(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  Mat m = random_gaussian(rng, rows, cols);
  const double nrm = operator_norm(m);
  return nrm > 0 ? Mat(m / nrm) : m;
}

Mat random_density(std::mt19937_64& rng, Eigen::Index d) {
  Mat g = random_gaussian(rng, d, d);
  Mat rho = g * g.adjoint() + 0.1 * Mat::Identity(d, d);
  return rho / rho.trace().real();
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

LinearMap::LinearMap(Eigen::Index in_dim, Eigen::Index out_dim, Mat matrix)
    : in_dim_(in_dim), out_dim_(out_dim), matrix_(std::move(matrix)) {
  if (matrix_.rows() != out_dim_ * out_dim_ || matrix_.cols() != in_dim_ * in_dim_)
    throw Error(ErrorKind::ShapeMismatch, "LinearMap matrix has wrong shape");
}

LinearMap LinearMap::from_function(Eigen::Index in_dim, Eigen::Index out_dim,
                                   const std::function<Mat(const Mat&)>& f) {
  Mat m(out_dim * out_dim, in_dim * in_dim);
  for (Eigen::Index j = 0; j < in_dim; ++j)
    for (Eigen::Index i = 0; i < in_dim; ++i) {
      Mat e = Mat::Zero(in_dim, in_dim);
      e(i, j) = 1.0;
      Mat img = f(e);
      if (img.rows() != out_dim || img.cols() != out_dim)
        throw Error(ErrorKind::ShapeMismatch, "LinearMap::from_function: image shape");
      m.col(i + j * in_dim) = vectorize(img);
    }
  return LinearMap(in_dim, out_dim, std::move(m));
}

LinearMap LinearMap::identity(Eigen::Index d) {
  return LinearMap(d, d, Mat::Identity(d * d, d * d));
}

Mat LinearMap::operator()(const Mat& a) const {
  if (a.rows() != in_dim_ || a.cols() != in_dim_)
    throw Error(ErrorKind::ShapeMismatch, "LinearMap applied to " + std::to_string(a.rows()) +
                                              "x" + std::to_string(a.cols()) + ", expected " +
                                              std::to_string(in_dim_));
  return unvectorize(matrix_ * vectorize(a), out_dim_, out_dim_);
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
  if (inner.out_dim_ != in_dim_) throw Error(ErrorKind::ShapeMismatch, "LinearMap::compose");
  return LinearMap(inner.in_dim_, out_dim_, matrix_ * inner.matrix_);
}

}  // namespace cmono
