#include "cmono/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace cmono {

namespace {

Mat matrix_unit(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
  Mat e = Mat::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

AlgebraSpec::AlgebraSpec(std::vector<Mat> basis, double tol) : basis_(std::move(basis)) {
  if (basis_.empty()) throw Error(ErrorKind::NotAlgebra, "empty basis");
  d_ = basis_.front().rows();
  const Eigen::Index m = size();
  basis_matrix_.resize(d_ * d_, m);
  for (Eigen::Index p = 0; p < m; ++p) {
    const Mat& b = basis_[static_cast<std::size_t>(p)];
    if (b.rows() != d_ || b.cols() != d_)
      throw Error(ErrorKind::ShapeMismatch, "basis elements must share one square shape");
    basis_matrix_.col(p) = vectorize(b);
  }
  Eigen::JacobiSVD<Mat> svd(basis_matrix_, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (s(m - 1) <= 1e-10 * std::max(1.0, s(0)))
    throw Error(ErrorKind::NotAlgebra, "basis is linearly dependent");
  pinv_ = svd.matrixV() * s.cwiseInverse().cast<cd>().asDiagonal() * svd.matrixU().adjoint();

  const Mat id = Mat::Identity(d_, d_);
  if (membership_residual(id) > tol)
    throw Error(ErrorKind::NotAlgebra, "identity is not in the span");
  for (Eigen::Index p = 0; p < m; ++p) {
    const Mat& bp = basis_[static_cast<std::size_t>(p)];
    if ((bp - id).norm() <= tol) unit_ = static_cast<int>(p);
    if (membership_residual(bp.adjoint()) > tol)
      throw Error(ErrorKind::NotAlgebra, "span is not closed under adjoint");
    for (Eigen::Index q = 0; q < m; ++q)
      if (membership_residual(bp * basis_[static_cast<std::size_t>(q)]) > tol)
        throw Error(ErrorKind::NotAlgebra, "span is not closed under multiplication");
  }
}

AlgebraSpec AlgebraSpec::full_matrix(Eigen::Index d) {
  std::vector<Mat> basis;
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) basis.push_back(matrix_unit(d, i, j));
  return AlgebraSpec(std::move(basis));
}

AlgebraSpec AlgebraSpec::diagonal(Eigen::Index d) {
  std::vector<Mat> basis;
  for (Eigen::Index i = 0; i < d; ++i) basis.push_back(matrix_unit(d, i, i));
  return AlgebraSpec(std::move(basis));
}

AlgebraSpec AlgebraSpec::scalars(Eigen::Index d) {
  return AlgebraSpec(std::vector<Mat>{Mat::Identity(d, d)});
}

AlgebraSpec AlgebraSpec::direct_sum(const AlgebraSpec& a, const AlgebraSpec& b) {
  const Eigen::Index d = a.dim() + b.dim();
  std::vector<Mat> basis;
  for (const Mat& x : a.basis()) {
    Mat e = Mat::Zero(d, d);
    e.topLeftCorner(a.dim(), a.dim()) = x;
    basis.push_back(e);
  }
  for (const Mat& y : b.basis()) {
    Mat e = Mat::Zero(d, d);
    e.bottomRightCorner(b.dim(), b.dim()) = y;
    basis.push_back(e);
  }
  return AlgebraSpec(std::move(basis));
}

Vec AlgebraSpec::coords(const Mat& a) const {
  if (a.rows() != d_ || a.cols() != d_) throw Error(ErrorKind::ShapeMismatch, "coords");
  return pinv_ * vectorize(a);
}

Mat AlgebraSpec::element(const Vec& c) const {
  if (c.size() != size()) throw Error(ErrorKind::ShapeMismatch, "element");
  return unvectorize(basis_matrix_ * c, d_, d_);
}

double AlgebraSpec::membership_residual(const Mat& a) const {
  return (element(coords(a)) - a).norm();
}

Mat AlgebraSpec::left_mult_matrix(const Mat& a) const {
  Mat m(size(), size());
  for (Eigen::Index p = 0; p < size(); ++p) m.col(p) = coords(a * basis_[static_cast<std::size_t>(p)]);
  return m;
}

Mat AlgebraSpec::right_mult_matrix(const Mat& a) const {
  Mat m(size(), size());
  for (Eigen::Index p = 0; p < size(); ++p) m.col(p) = coords(basis_[static_cast<std::size_t>(p)] * a);
  return m;
}

Mat AlgebraSpec::random_element(std::mt19937_64& rng) const {
  Mat c = random_gaussian(rng, size(), 1);
  Mat a = element(c.col(0));
  const double nrm = operator_norm(a);
  return nrm > 0 ? Mat(a / nrm) : a;
}

StateSpec::StateSpec(Mat density, double tol) : rho_(std::move(density)) {
  if (rho_.rows() != rho_.cols()) throw Error(ErrorKind::NonState, "density must be square");
  if ((rho_ - rho_.adjoint()).norm() > tol) throw Error(ErrorKind::NonState, "density is not Hermitian");
  if (min_eigenvalue(rho_) < -tol) throw Error(ErrorKind::NonState, "density is not positive");
  if (std::abs(rho_.trace() - cd(1.0)) > tol) throw Error(ErrorKind::NonState, "density trace is not 1");
}

CondExpSpec::CondExpSpec(AlgebraSpec source, AlgebraSpec target, LinearMap embedding, LinearMap map,
                         double tol)
    : source_(std::move(source)),
      target_(std::move(target)),
      embedding_(std::move(embedding)),
      map_(std::move(map)) {
  const Eigen::Index da = source_.dim();
  const Eigen::Index db = target_.dim();
  if (embedding_.in_dim() != db || embedding_.out_dim() != da || map_.in_dim() != da ||
      map_.out_dim() != db)
    throw Error(ErrorKind::ShapeMismatch, "conditional expectation maps have wrong shapes");

  if ((embed(Mat::Identity(db, db)) - Mat::Identity(da, da)).norm() > tol)
    throw Error(ErrorKind::NonUnitalInclusion, "embedding is not unital");
  for (const Mat& b : target_.basis()) {
    const Mat ib = embed(b);
    if (!source_.contains(ib, tol)) throw Error(ErrorKind::NonState, "embedding leaves the source algebra");
    if ((map_(ib) - b).norm() > tol) throw Error(ErrorKind::NonState, "psi is not the identity on B");
    if ((embed(b.adjoint()) - ib.adjoint()).norm() > tol)
      throw Error(ErrorKind::NonState, "embedding is not *-preserving");
    for (const Mat& c : target_.basis())
      if ((embed(b * c) - ib * embed(c)).norm() > tol)
        throw Error(ErrorKind::NonState, "embedding is not multiplicative");
  }
  for (const Mat& a : source_.basis()) {
    const Mat pa = map_(a);
    if (!target_.contains(pa, tol)) throw Error(ErrorKind::NonState, "psi leaves B");
    for (const Mat& b1 : target_.basis())
      for (const Mat& b2 : target_.basis())
        if ((map_(embed(b1) * a * embed(b2)) - b1 * pa * b2).norm() > tol)
          throw Error(ErrorKind::NonState, "psi is not a B-bimodule map");
  }
  std::mt19937_64 rng(0x5eedULL);
  for (int s = 0; s < 16; ++s) {
    const Mat a = source_.random_element(rng);
    if (min_eigenvalue(map_(a.adjoint() * a)) < -tol)
      throw Error(ErrorKind::NonPositive, "psi(a* a) is not positive");
  }
}

CondExpSpec CondExpSpec::from_state(const AlgebraSpec& a, const StateSpec& phi) {
  const Eigen::Index d = a.dim();
  if (phi.density().rows() != d) throw Error(ErrorKind::ShapeMismatch, "state size");
  LinearMap emb = LinearMap::from_function(1, d, [d](const Mat& x) {
    return Mat(x(0, 0) * Mat::Identity(d, d));
  });
  LinearMap map = LinearMap::from_function(d, 1, [&phi](const Mat& x) {
    Mat r(1, 1);
    r(0, 0) = phi(x);
    return r;
  });
  return CondExpSpec(a, AlgebraSpec::scalars(1), std::move(emb), std::move(map));
}

CondExpSpec CondExpSpec::diagonal_compression(const AlgebraSpec& a) {
  const Eigen::Index d = a.dim();
  LinearMap id = LinearMap::identity(d);
  LinearMap diag = LinearMap::from_function(d, d, [](const Mat& x) {
    return Mat(x.diagonal().asDiagonal());
  });
  return CondExpSpec(a, AlgebraSpec::diagonal(d), std::move(id), std::move(diag));
}

CondExpSpec CondExpSpec::identity(const AlgebraSpec& b) {
  return CondExpSpec(b, b, LinearMap::identity(b.dim()), LinearMap::identity(b.dim()));
}

double representation_defect(const AlgebraSpec& a, const Representation& rep) {
  double worst = 0.0;
  for (const Mat& x : a.basis()) {
    const Mat px = rep(x);
    worst = std::max(worst, (rep(Mat(x.adjoint())) - px.adjoint()).norm());
    for (const Mat& y : a.basis()) worst = std::max(worst, (rep(Mat(x * y)) - px * rep(y)).norm());
  }
  return worst;
}

Mat pointed_orthonormal_basis(const Mat& gram, const Vec& point, double cutoff) {
  const Mat u = gram_orthonormal_range(gram, cutoff);
  if (u.cols() == 0) throw Error(ErrorKind::NonPositive, "zero Gram matrix");
  Vec q = u.adjoint() * gram * point;
  const double nq = q.norm();
  if (nq < 1e-12) throw Error(ErrorKind::NonPositive, "distinguished vector is null");
  q /= nq;
  Mat qm = q;
  Mat rot(u.cols(), u.cols());
  rot.col(0) = q;
  rot.rightCols(u.cols() - 1) = orthonormal_complement(qm);
  return u * rot;
}

Representation gns(const AlgebraSpec& a, const StateSpec& phi) {
  const Eigen::Index m = a.size();
  const Eigen::Index d = a.dim();
  if (phi.density().rows() != d) throw Error(ErrorKind::ShapeMismatch, "state size");
  Mat gram(m, m);
  for (Eigen::Index p = 0; p < m; ++p)
    for (Eigen::Index q = 0; q < m; ++q)
      gram(p, q) = phi(Mat(a.basis()[static_cast<std::size_t>(p)].adjoint() *
                           a.basis()[static_cast<std::size_t>(q)]));
  const Vec unit = a.coords(Mat::Identity(d, d));
  const Mat v = pointed_orthonormal_basis(gram, unit);
  const Eigen::Index r = v.cols();
  std::vector<Mat> w(static_cast<std::size_t>(r));
  for (Eigen::Index k = 0; k < r; ++k) w[static_cast<std::size_t>(k)] = a.element(v.col(k));
  Representation rep;
  rep.dim = r;
  rep.action = LinearMap::from_function(d, r, [&](const Mat& x) {
    Mat out(r, r);
    for (Eigen::Index l = 0; l < r; ++l) {
      const Mat xw = x * w[static_cast<std::size_t>(l)];
      for (Eigen::Index k = 0; k < r; ++k)
        out(k, l) = phi(Mat(w[static_cast<std::size_t>(k)].adjoint() * xw));
    }
    return out;
  });
  rep.xi = Vec::Unit(r, 0);
  return rep;
}

PairedGns paired_gns(const AlgebraSpec& a, const StateSpec& phi, const StateSpec& psi) {
  const Representation rp = gns(a, phi);
  const Representation rs = gns(a, psi);
  const Eigen::Index n1 = rp.dim;
  const Eigen::Index n = n1 + rs.dim;
  const Eigen::Index d = a.dim();
  Vec w = Vec::Unit(n, 0) - Vec::Unit(n, n1);
  const Mat swap = Mat::Identity(n, n) - w * w.adjoint();
  auto direct = [&](const Mat& x) {
    Mat out = Mat::Zero(n, n);
    out.topLeftCorner(n1, n1) = rp(x);
    out.bottomRightCorner(rs.dim, rs.dim) = rs(x);
    return out;
  };
  PairedGns out;
  out.pi.dim = out.sigma.dim = n;
  out.pi.xi = out.sigma.xi = Vec::Unit(n, 0);
  out.pi.action = LinearMap::from_function(d, n, direct);
  out.sigma.action = LinearMap::from_function(d, n, [&](const Mat& x) {
    return Mat(swap.adjoint() * direct(x) * swap);
  });
  return out;
}

}  // namespace cmono
