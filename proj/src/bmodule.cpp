#include "cmono/bmodule.hpp"

#include <algorithm>

namespace cmono {

namespace {

LinearMap sandwich(const LinearMap& l, const Mat& pre, const Mat& post) {
  if (l.empty()) return {};
  return LinearMap::from_function(l.in_dim(), pre.rows(),
                                  [&](const Mat& x) { return Mat(pre * l(x) * post); });
}

LinearMap sub_block(const LinearMap& l, Eigen::Index start, Eigen::Index len) {
  if (l.empty()) return {};
  return LinearMap::from_function(l.in_dim(), len, [&](const Mat& x) {
    return Mat(l(x).block(start, start, len, len));
  });
}

Mat block_traces(const Mat& gram, Eigen::Index n, Eigen::Index v) {
  Mat s(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q) s(p, q) = gram.block(p * v, q * v, v, v).trace();
  return s;
}

Mat kron_identity(const Mat& a, Eigen::Index v) {
  return v == 1 ? a : kron(a, Mat(Mat::Identity(v, v)));
}

Mat identity_kron(Eigen::Index n, const Mat& a) {
  return n == 1 ? a : kron(Mat(Mat::Identity(n, n)), a);
}

}  // namespace

Mat BModule::inner(const Vec& x, const Vec& y) const {
  if (x.size() != n || y.size() != n) throw Error(ErrorKind::ShapeMismatch, "module inner product");
  const Mat xk = kron_identity(Mat(x), value_dim);
  const Mat yk = kron_identity(Mat(y), value_dim);
  return xk.adjoint() * gram * yk;
}

double module_defect(const BModule& e, const AlgebraSpec& b, const std::vector<Mat>& left_basis) {
  double worst = 0.0;
  for (Eigen::Index p = 0; p < e.n; ++p)
    for (Eigen::Index q = 0; q < e.n; ++q)
      worst = std::max(worst, (e.block(p, q).adjoint() - e.block(q, p)).norm());
  if (e.n > 0) worst = std::max(worst, std::max(0.0, -min_eigenvalue(e.gram)));

  auto adjoint_defect = [&](const LinearMap& act, const Mat& a) {
    const Mat t = act(a);
    const Mat ts = act(Mat(a.adjoint()));
    double w = 0.0;
    for (Eigen::Index p = 0; p < e.n; ++p)
      for (Eigen::Index q = 0; q < e.n; ++q) {
        const Vec ep = Vec::Unit(e.n, p);
        const Vec eq = Vec::Unit(e.n, q);
        w = std::max(w, (e.inner(t * ep, eq) - e.inner(ep, ts * eq)).norm());
      }
    return w;
  };

  if (!e.right.empty()) {
    for (const Mat& c : b.basis()) {
      const Mat r = e.right(c);
      for (Eigen::Index p = 0; p < e.n; ++p)
        for (Eigen::Index q = 0; q < e.n; ++q) {
          const Vec ep = Vec::Unit(e.n, p);
          const Vec eq = Vec::Unit(e.n, q);
          worst = std::max(worst, (e.inner(ep, r * eq) - e.block(p, q) * c).norm());
        }
    }
  }
  if (!e.left_b.empty())
    for (const Mat& c : b.basis()) worst = std::max(worst, adjoint_defect(e.left_b, c));
  if (!e.left.empty())
    for (const Mat& a : left_basis) worst = std::max(worst, adjoint_defect(e.left, a));
  return worst;
}

BModule gns_module(const AlgebraSpec& a, const CondExpSpec& psi) {
  const AlgebraSpec& b = psi.target();
  const Eigen::Index m = a.size();
  const Eigen::Index v = b.dim();
  const auto& basis = a.basis();

  Mat raw(m * v, m * v);
  for (Eigen::Index p = 0; p < m; ++p)
    for (Eigen::Index q = 0; q < m; ++q)
      raw.block(p * v, q * v, v, v) =
          psi(Mat(basis[static_cast<std::size_t>(p)].adjoint() * basis[static_cast<std::size_t>(q)]));
  const Mat s = block_traces(raw, m, v);
  const Mat u = gram_orthonormal_range(s);
  const Mat to_q = u.adjoint() * s;  // raw coefficients -> orthonormal coordinates

  Mat xb(u.cols(), b.size());
  for (Eigen::Index j = 0; j < b.size(); ++j)
    xb.col(j) = to_q * a.coords(psi.embed(b.basis()[static_cast<std::size_t>(j)]));
  const Mat qx = orthonormal_span(xb);
  Mat rot(u.cols(), u.cols());
  rot.leftCols(qx.cols()) = qx;
  rot.rightCols(u.cols() - qx.cols()) = orthonormal_complement(qx);

  const Mat vmat = u * rot;                  // coordinates -> raw coefficients
  const Mat wmat = rot.adjoint() * to_q;     // raw coefficients -> coordinates

  BModule e;
  e.n = vmat.cols();
  e.value_dim = v;
  const Mat vk = kron_identity(vmat, v);
  e.gram = vk.adjoint() * raw * vk;
  e.gram = hermitian_part(e.gram);
  const Eigen::Index da = a.dim();
  e.left = LinearMap::from_function(da, e.n, [&](const Mat& x) {
    return Mat(wmat * a.left_mult_matrix(x) * vmat);
  });
  e.right = LinearMap::from_function(v, e.n, [&](const Mat& c) {
    return Mat(wmat * a.right_mult_matrix(psi.embed(c)) * vmat);
  });
  e.left_b = LinearMap::from_function(v, e.n, [&](const Mat& c) {
    return Mat(wmat * a.left_mult_matrix(psi.embed(c)) * vmat);
  });
  e.xi = wmat * a.coords(Mat::Identity(da, da));
  e.n_xi = qx.cols();
  return e;
}

TensorModule tensor_over(const BModule& e, const BModule& f, const LinearMap& action) {
  const LinearMap& act = action.empty() ? f.left_b : action;
  if (act.empty()) throw Error(ErrorKind::ShapeMismatch, "tensor_over: right factor has no left action");
  if (act.in_dim() != e.value_dim || act.out_dim() != f.n)
    throw Error(ErrorKind::ShapeMismatch, "tensor_over: action does not match the factors");
  const Eigen::Index ne = e.n;
  const Eigen::Index nf = f.n;
  const Eigen::Index v = f.value_dim;
  const Eigen::Index w = nf * v;

  Mat raw(ne * w, ne * w);
  for (Eigen::Index p = 0; p < ne; ++p)
    for (Eigen::Index q = p; q < ne; ++q) {
      const Mat blk = f.gram * kron_identity(act(e.block(p, q)), v);
      raw.block(p * w, q * w, w, w) = blk;
      if (q != p) raw.block(q * w, p * w, w, w) = blk.adjoint();
    }

  TensorModule t;
  t.n_left = ne;
  t.n_right = nf;
  const Mat s = block_traces(raw, ne * nf, v);
  const Mat u = gram_orthonormal_range(s);
  t.lift = u;
  t.coords = u.adjoint() * s;

  BModule& m = t.module;
  m.n = u.cols();
  m.value_dim = v;
  const Mat uk = kron_identity(u, v);
  m.gram = hermitian_part(Mat(uk.adjoint() * raw * uk));
  if (!f.right.empty())
    m.right = LinearMap::from_function(f.right.in_dim(), m.n, [&](const Mat& c) {
      return t.induced(identity_kron(ne, f.right(c)));
    });
  if (!e.left_b.empty())
    m.left_b = LinearMap::from_function(e.left_b.in_dim(), m.n, [&](const Mat& c) {
      return t.induced(kron_identity(e.left_b(c), nf));
    });
  if (!e.left.empty())
    m.left = LinearMap::from_function(e.left.in_dim(), m.n, [&](const Mat& x) {
      return t.induced(kron_identity(e.left(x), nf));
    });
  return t;
}

BModule rotate(const BModule& e, const Mat& r) {
  BModule out = e;
  const Mat rk = kron_identity(r, e.value_dim);
  out.gram = hermitian_part(Mat(rk.adjoint() * e.gram * rk));
  const Mat ra = r.adjoint();
  out.right = sandwich(e.right, ra, r);
  out.left_b = sandwich(e.left_b, ra, r);
  out.left = sandwich(e.left, ra, r);
  if (e.xi.size() > 0) out.xi = ra * e.xi;
  return out;
}

BModule make_pointed(const BModule& e, const Vec& xi, const AlgebraSpec& b, Mat* rotation) {
  if (e.right.empty()) throw Error(ErrorKind::Precondition, "make_pointed needs a right action");
  if ((e.inner(xi, xi) - Mat::Identity(e.value_dim, e.value_dim)).norm() > 1e-8)
    throw Error(ErrorKind::Precondition, "distinguished vector must satisfy <xi, xi> = 1");
  Mat xb(e.n, b.size());
  for (Eigen::Index j = 0; j < b.size(); ++j) xb.col(j) = e.right(b.basis()[static_cast<std::size_t>(j)]) * xi;
  const Mat qx = orthonormal_span(xb);
  Mat rot(e.n, e.n);
  rot.leftCols(qx.cols()) = qx;
  rot.rightCols(e.n - qx.cols()) = orthonormal_complement(qx);
  BModule out = rotate(e, rot);
  out.xi = rot.adjoint() * xi;
  out.n_xi = qx.cols();
  if (rotation != nullptr) *rotation = rot;
  return out;
}

BModule reduced(const BModule& e) {
  BModule out;
  const Eigen::Index k = e.n_xi;
  const Eigen::Index len = e.n - k;
  const Eigen::Index v = e.value_dim;
  out.n = len;
  out.value_dim = v;
  out.gram = e.gram.block(k * v, k * v, len * v, len * v);
  out.right = sub_block(e.right, k, len);
  out.left_b = sub_block(e.left_b, k, len);
  return out;
}

}  // namespace cmono
