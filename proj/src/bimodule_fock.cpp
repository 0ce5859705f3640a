#include "cmono/bimodule_fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmono/kernels.hpp"

namespace cmono {

namespace {

Word slice(const Word& w, std::size_t from, std::size_t to) {
  return Word{cd(1.0, 0.0), std::vector<Letter>(w.letters.begin() + static_cast<std::ptrdiff_t>(from),
                                                w.letters.begin() + static_cast<std::ptrdiff_t>(to))};
}

Word concat(Word a, const Word& b) {
  a.letters.insert(a.letters.end(), b.letters.begin(), b.letters.end());
  a.coeff *= b.coeff;
  return a;
}

double block_norm(const ProductBimodule& m, const BlockVector& y) {
  Mat acc = Mat::Zero(m.b().dim(), m.b().dim());
  for (const auto& [t, blk] : y) {
    const Vec col = blk.col(0);
    acc += m.summand(t).inner(col, col);
  }
  return std::sqrt(std::max(0.0, b_norm(acc)));
}

Mat select_columns(const Mat& x, const std::vector<Eigen::Index>& cols) {
  Mat out(x.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = x.col(cols[c]);
  return out;
}

}  // namespace

RuleResidual prop41_residual(const ProductBimodule& m, const Family& family, const Word& w) {
  RuleResidual r;
  const Mat lhs = m.vacuum_expectation(w);
  r.oracle = b_norm(lhs - eval_monotone(family, w));
  const auto& l = w.letters;
  const std::size_t n = l.size();
  const Mat one = Mat::Identity(m.b().dim(), m.b().dim());
  if (n == 0) {
    r.pattern = "empty";
    r.rule = b_norm(lhs - w.coeff * one);
    return r;
  }
  auto psi = [&](const Letter& x) { return family.psi(x.index, x.element); };
  if (n == 1) {
    r.pattern = "single";
    r.rule = b_norm(lhs - w.coeff * psi(l[0]));
    return r;
  }
  std::size_t s = 0;
  for (std::size_t t = 1; t < n; ++t)
    if (l[t].index > l[s].index) s = t;
  Mat rhs;
  if (s == 0) {
    r.pattern = "first";
    rhs = psi(l[0]) * m.vacuum_expectation(slice(w, 1, n));
  } else if (s + 1 == n) {
    r.pattern = "last";
    rhs = m.vacuum_expectation(slice(w, 0, n - 1)) * psi(l[n - 1]);
  } else {
    r.pattern = "peak";
    Word mid = slice(w, 0, s);
    mid.letters.push_back(Letter{kAmalgam, psi(l[s])});
    rhs = m.vacuum_expectation(concat(mid, slice(w, s + 1, n)));
  }
  r.rule = b_norm(lhs - w.coeff * rhs);
  return r;
}

double remark42_identity_residual(const ProductBimodule& m, const Family& family,
                                  const std::array<Letter, 3>& letters) {
  const auto& [a1, a2, a3] = letters;
  if (!(a1.index < a2.index && a3.index < a2.index))
    throw Error(ErrorKind::Precondition, "the middle letter must carry the largest index");
  const Mat d1 = m.dense_letter(a1.index, a1.element);
  const Mat d2 = m.dense_letter(a2.index, a2.element);
  const Mat d3 = m.dense_letter(a3.index, a3.element);
  const Mat lb = m.dense_left_b(family.psi(a2.index, a2.element));
  const Mat lhs = kernels::multiply(d1, kernels::multiply(d2, d3));
  const Mat rhs = kernels::multiply(d1, kernels::multiply(lb, d3));
  return operator_norm(lhs - rhs);
}

double remark42_restriction_residual(const ProductBimodule& m, const Family& family, const Letter& a,
                                     const Letter& b) {
  if (!(a.index < b.index)) throw Error(ErrorKind::Precondition, "restriction needs k < l");
  const auto tuples = m.all_tuples();
  Eigen::Index total = 0;
  const auto off = m.offsets(tuples, &total);
  std::vector<Eigen::Index> cols;
  for (const Tuple& t : tuples) {
    if (!t.empty() && t.front() == b.index) continue;
    const Eigen::Index n = m.summand(t).n;
    for (Eigen::Index c = 0; c < n; ++c) cols.push_back(off.at(t) + c);
  }
  const Mat da = m.dense_letter(a.index, a.element);
  const Mat db = m.dense_letter(b.index, b.element);
  const Mat lb = m.dense_left_b(family.psi(b.index, b.element));
  const Mat diff = kernels::multiply(da, db) - kernels::multiply(da, lb);
  return operator_norm(select_columns(diff, cols));
}

double free_restriction_residual(const ProductBimodule& free_product, const ProductBimodule& monotone, int k,
                                 const Mat& a) {
  if (free_product.kind() != ProductKind::Free || monotone.kind() != ProductKind::Monotone)
    throw Error(ErrorKind::Precondition, "expected a free and a monotone product");
  double worst = 0.0;
  for (const Tuple& t : monotone.all_tuples()) {
    const Eigen::Index n = monotone.summand(t).n;
    const BlockVector y{{t, Mat::Identity(n, n)}};
    const BlockVector u = free_product.apply_letter(k, a, y);
    const BlockVector j = monotone.apply_letter(k, a, y);
    for (const auto& [tu, blk] : u) {
      auto it = j.find(tu);
      worst = std::max(worst, operator_norm(it == j.end() ? blk : Mat(blk - it->second)));
    }
    for (const auto& [tj, blk] : j)
      if (!u.count(tj)) worst = std::max(worst, operator_norm(blk));
  }
  return worst;
}

Remark45Result counterexample_remark45(const Family& family, const std::array<Letter, 3>& letters, int n_max) {
  const auto& [a1, a2, a3] = letters;
  const int i1 = a1.index, i2 = a2.index, i3 = a3.index;
  if (!(i1 < i2 && i3 < i2 && i1 != i3))
    throw Error(ErrorKind::Precondition, "indices must satisfy i1 < i2 > i3 with i1 != i3");
  for (const Letter& l : letters)
    if (b_norm(family.psi(l.index, l.element)) > 1e-10)
      throw Error(ErrorKind::Precondition, "letters must be centered");
  const ProductBimodule fp = ProductBimodule::from_family(family, ProductKind::Free, std::max(n_max, 3));

  const BModule& e2 = fp.factor(i2);
  const BModule& e3 = fp.factor(i3);
  const BModule& e1 = fp.factor(i1);
  const Vec f2 = e2.left(a2.element.adjoint()) * e2.xi;
  Remark45Result r;
  r.f2_inner = e2.inner(f2, f2);
  const Vec g = e3.left(a3.element.adjoint()) * e3.xi;
  const Vec f3 = e3.left_b(r.f2_inner) * g;
  r.f3_inner = e3.inner(f3, f3);
  if (b_norm(r.f3_inner) <= 1e-12) throw Error(ErrorKind::DegenerateChoice, "<f3, f3> vanishes");

  const BModule& vac = fp.summand({});
  const TensorModule& t2 = fp.tensor({i2});
  const TensorModule& t32 = fp.tensor({i3, i2});
  const Vec y2 = t2.coords * kron(Vec(f2.tail(e2.n_reduced())), vac.xi);
  const Vec y = t32.coords * kron(Vec(f3.tail(e3.n_reduced())), y2);
  const BlockVector start{{Tuple{i3, i2}, Mat(y)}};

  const BlockVector after3 = fp.apply_letter(i3, a3.element, start);
  const BlockVector rhs = fp.apply_letter(i1, a1.element, fp.apply_letter(i2, a2.element, after3));
  const BlockVector lhs =
      fp.apply_letter(i1, a1.element, fp.apply_left_b(family.psi(i2, a2.element), after3));
  r.lhs_norm = block_norm(fp, lhs);
  r.rhs_norm = block_norm(fp, rhs);
  BlockVector head;
  if (auto it = rhs.find(Tuple{i1}); it != rhs.end()) head.emplace(it->first, it->second);
  r.component_norm = block_norm(fp, head);

  const Vec h = e1.right(r.f3_inner) * (e1.left(a1.element) * e1.xi);
  r.predicted_norm = std::sqrt(std::max(0.0, b_norm(e1.inner(h, h))));
  return r;
}

CondExpPsi::CondExpPsi(const ProductBimodule& m, const Family& family, int i0)
    : m_(m), family_(family), i0_(i0) {
  if (m.kind() != ProductKind::Monotone) throw Error(ErrorKind::Precondition, "expected a monotone product");
  const auto tuples = m.all_tuples();
  const auto off = m.offsets(tuples);
  for (const Tuple& t : {Tuple{}, Tuple{i0}}) {
    const Eigen::Index n = m.summand(t).n;
    for (Eigen::Index c = 0; c < n; ++c) rows_.push_back(off.at(t) + c);
  }
  const auto& basis = family.member(i0).algebra.basis();
  const Eigen::Index q = static_cast<Eigen::Index>(rows_.size());
  basis_images_.resize(q * q, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t p = 0; p < basis.size(); ++p)
    basis_images_.col(static_cast<Eigen::Index>(p)) = vectorize(compress(m.dense_letter(i0, basis[p])));
}

Mat CondExpPsi::compress(const Mat& x) const {
  const Eigen::Index q = static_cast<Eigen::Index>(rows_.size());
  Mat out(q, q);
  for (Eigen::Index r = 0; r < q; ++r)
    for (Eigen::Index c = 0; c < q; ++c) out(r, c) = x(rows_[static_cast<std::size_t>(r)], rows_[static_cast<std::size_t>(c)]);
  return out;
}

Mat CondExpPsi::operator()(const Mat& x, double tol) const {
  const Vec target = vectorize(compress(x));
  const Vec c = basis_images_.colPivHouseholderQr().solve(target);
  const double res = (basis_images_ * c - target).norm();
  if (res > tol * std::max(1.0, target.norm()))
    throw Error(ErrorKind::NotInImage, "compression is not the image of the factor algebra");
  return family_.member(i0_).algebra.element(c);
}

InducedRepresentation::InducedRepresentation(const Family& family, int i0) : family_(family), i0_(i0) {
  if (family.indices().empty() || family.indices().front() != i0)
    throw Error(ErrorKind::Precondition, "induced representation needs the smallest index");
  const AlgebraSpec& b = family.b();
  const Eigen::Index db = b.dim();
  BModule cb;
  cb.n = db;
  cb.value_dim = 1;
  cb.gram = Mat::Identity(db, db);
  cb.left_b = LinearMap::identity(db);
  const Member& m0 = family.member(i0);
  k_ = tensor_over(gns_module(m0.algebra, m0.psi), cb, cb.left_b).module;
  k_dim_ = k_.n;

  std::map<int, BModule> factors;
  for (int i : family.indices()) {
    if (i == i0) continue;
    const Member& m = family.member(i);
    factors.emplace(i, gns_module(m.algebra, m.psi));
  }
  if (factors.empty()) {
    tuples_ = {Tuple{}};
    dim_ = k_dim_;
  } else {
    product_ = std::make_unique<ProductBimodule>(b, std::move(factors), k_);
    tuples_ = product_->all_tuples();
    dim_ = product_->total_dim();
  }
}

Mat InducedRepresentation::rho(const Mat& a) const { return k_.left(a); }

Mat InducedRepresentation::letter(int i, const Mat& a) const {
  if (i == kAmalgam) return product_ ? product_->dense_left_b(a) : k_.left_b(a);
  if (i == i0_) {
    Mat out = Mat::Zero(dim_, dim_);
    out.topLeftCorner(k_dim_, k_dim_) = rho(a);
    return out;
  }
  if (!product_) throw Error(ErrorKind::UnknownIndex, "index " + std::to_string(i));
  return product_->dense_letter(i, a);
}

Mat InducedRepresentation::word(const Word& w) const {
  Mat out = Mat::Identity(dim_, dim_);
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out = kernels::multiply(letter(it->index, it->element), out);
  return w.coeff * out;
}

bool nested_is_unital(const NestedScenario& s, double tol) {
  const Eigen::Index db = s.small.b().dim();
  const Eigen::Index dbt = s.tilde.b().dim();
  if ((s.iota(Mat::Identity(db, db)) - Mat::Identity(dbt, dbt)).norm() > tol) return false;
  for (int i : s.small.indices()) {
    const Eigen::Index d = s.small.member(i).algebra.dim();
    const Eigen::Index dt = s.tilde.member(i).algebra.dim();
    if ((s.kappa.at(i)(Mat::Identity(d, d)) - Mat::Identity(dt, dt)).norm() > tol) return false;
  }
  return true;
}

NestedScenario pad_nested(const NestedScenario& s) {
  auto padded_basis = [](const std::vector<Mat>& images, const Mat& gap) {
    std::vector<Mat> basis = images;
    if (gap.norm() > 1e-12) basis.push_back(gap);
    return basis;
  };
  const Eigen::Index db = s.small.b().dim();
  const Eigen::Index dbt = s.tilde.b().dim();
  std::vector<Mat> b_images;
  for (const Mat& x : s.small.b().basis()) b_images.push_back(s.iota(x));
  const AlgebraSpec b_pad(padded_basis(b_images, Mat::Identity(dbt, dbt) - s.iota(Mat::Identity(db, db))));

  std::vector<Member> members;
  NestedScenario out;
  for (int i : s.small.indices()) {
    const Member& small = s.small.member(i);
    const Member& tilde = s.tilde.member(i);
    const LinearMap& kappa = s.kappa.at(i);
    const Eigen::Index d = small.algebra.dim();
    const Eigen::Index dt = tilde.algebra.dim();
    std::vector<Mat> images;
    for (const Mat& x : small.algebra.basis()) images.push_back(kappa(x));
    const AlgebraSpec a_pad(padded_basis(images, Mat::Identity(dt, dt) - kappa(Mat::Identity(d, d))));
    Member m;
    m.index = i;
    m.algebra = a_pad;
    m.psi = CondExpSpec(a_pad, b_pad, tilde.psi.embedding(), tilde.psi.map());
    members.push_back(std::move(m));
    out.kappa.emplace(i, LinearMap::identity(dt));
  }
  out.small = Family(b_pad, std::move(members));
  out.tilde = s.tilde;
  out.iota = LinearMap::identity(dbt);
  return out;
}

EmbeddingResult verify_embedding_prop46(const NestedScenario& s, std::mt19937_64& rng, int n_polys, int max_len,
                                        int terms) {
  EmbeddingResult r;
  r.min_excess = std::numeric_limits<double>::infinity();
  const ProductBimodule e = ProductBimodule::from_family(s.small, ProductKind::Monotone);
  const ProductBimodule et = ProductBimodule::from_family(s.tilde, ProductKind::Monotone);
  r.padded = !nested_is_unital(s);
  std::unique_ptr<ProductBimodule> ep;
  if (r.padded) ep = std::make_unique<ProductBimodule>(ProductBimodule::from_family(pad_nested(s).small,
                                                                                     ProductKind::Monotone));
  auto lift = [&](const Word& w) {
    Word out = w;
    for (Letter& l : out.letters) l.element = s.kappa.at(l.index)(l.element);
    return out;
  };
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int p = 0; p < n_polys; ++p) {
    Mat x = Mat::Zero(e.total_dim(), e.total_dim());
    Mat xt = Mat::Zero(et.total_dim(), et.total_dim());
    Mat xp = ep ? Mat(Mat::Zero(ep->total_dim(), ep->total_dim())) : Mat();
    for (int t = 0; t < terms; ++t) {
      Word w = sample_random_word(rng, max_len, s.small);
      w.coeff = cd(gauss(rng), gauss(rng));
      const Word wt = lift(w);
      x += e.dense_word(w);
      xt += et.dense_word(wt);
      if (ep) xp += ep->dense_word(wt);
      const Mat mom = s.iota(e.vacuum_expectation(w));
      r.moment_residual = std::max(r.moment_residual, b_norm(et.vacuum_expectation(wt) - mom));
    }
    x += Mat(x.adjoint());
    xt += Mat(xt.adjoint());
    const double n = operator_norm(x);
    const double nt = operator_norm(xt);
    r.max_norm_gap = std::max(r.max_norm_gap, std::abs(nt - n));
    r.min_excess = std::min(r.min_excess, nt - n);
    if (ep) {
      xp += Mat(xp.adjoint());
      r.padded_gap = std::max(r.padded_gap, std::abs(nt - operator_norm(xp)));
    }
    ++r.polynomials;
  }
  return r;
}

namespace {

BModule stinespring_module(const AlgebraSpec& a, const Member& am, const LinearMap& theta) {
  const auto& basis = a.basis();
  const Eigen::Index n = a.size();
  const Eigen::Index v = theta.out_dim();
  BModule x;
  x.n = n;
  x.value_dim = v;
  x.gram = Mat(n * v, n * v);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q)
      x.gram.block(p * v, q * v, v, v) =
          theta(Mat(basis[static_cast<std::size_t>(p)].adjoint() * basis[static_cast<std::size_t>(q)]));
  x.gram = hermitian_part(x.gram);
  x.left = LinearMap::from_function(a.dim(), n, [&](const Mat& y) { return a.left_mult_matrix(y); });
  const Eigen::Index db = am.psi.target().dim();
  x.left_b = LinearMap::from_function(db, n, [&](const Mat& b) { return a.left_mult_matrix(am.psi.embed(b)); });
  x.xi = a.coords(Mat::Identity(a.dim(), a.dim()));
  return x;
}

}  // namespace

CpEmbedding::CpEmbedding(const CpScenario& s, double tol) : s_(s) {
  if (s.a.indices() != s.d.indices()) throw Error(ErrorKind::ContextMismatch, "families have different indices");
  if (!s.a.scalar_b() || !s.d.scalar_b()) throw Error(ErrorKind::ContextMismatch, "expected B = C");
  for (int i : s.a.indices()) {
    auto it = s.theta.find(i);
    if (it == s.theta.end()) throw Error(ErrorKind::UnknownIndex, "no map for index " + std::to_string(i));
    const Member& am = s.a.member(i);
    const Member& dm = s.d.member(i);
    const LinearMap& th = it->second;
    if (th.in_dim() != am.algebra.dim() || th.out_dim() != dm.algebra.dim())
      throw Error(ErrorKind::ShapeMismatch, "theta_" + std::to_string(i));
    const Eigen::Index da = am.algebra.dim();
    const Eigen::Index dd = dm.algebra.dim();
    if ((th(Mat::Identity(da, da)) - Mat::Identity(dd, dd)).norm() > tol)
      throw Error(ErrorKind::CompatibilityFail, "theta_" + std::to_string(i) + " is not unital");
    for (const Mat& b : am.algebra.basis())
      if (b_norm(dm.psi(th(b)) - am.psi(b)) > tol)
        throw Error(ErrorKind::CompatibilityFail, "psi o theta differs from phi on index " + std::to_string(i));
  }
  e_ = std::make_unique<ProductBimodule>(ProductBimodule::from_family(s.d, ProductKind::Monotone));

  std::map<int, BModule> f_factors;
  for (int i : s.a.indices()) {
    const Member& am = s.a.member(i);
    const BModule& ei = e_->factor(i);
    const BModule x = stinespring_module(am.algebra, am, s.theta.at(i));
    const TensorModule tm = tensor_over(x, ei, ei.left);
    const Vec eta = tm.coords * kron(x.xi, ei.xi);
    Mat rot;
    BModule fi = make_pointed(tm.module, eta, s.a.b(), &rot);
    v_factors_.emplace(i, Mat(rot.adjoint() * tm.coords * kron(Mat(x.xi), Mat(Mat::Identity(ei.n, ei.n)))));
    f_factors.emplace(i, std::move(fi));
  }
  f_ = std::make_unique<ProductBimodule>(s.a.b(), std::move(f_factors), ProductKind::Monotone);
  e_tuples_ = e_->all_tuples();
  f_tuples_ = f_->all_tuples();
  if (e_tuples_ != f_tuples_) throw Error(ErrorKind::ContextMismatch, "product layouts differ");

  std::map<Tuple, Mat> vt;
  Eigen::Index rows = 0, cols = 0;
  for (const Tuple& t : e_tuples_) {
    Mat blk;
    if (t.empty()) {
      blk = Mat::Identity(f_->summand(t).n, e_->summand(t).n);
    } else {
      const int i = t.front();
      const Tuple tail(t.begin() + 1, t.end());
      const Mat& vi = v_factors_.at(i);
      const BModule& fi = f_->factor(i);
      const BModule& ei = e_->factor(i);
      const Mat v_red = vi.bottomRightCorner(fi.n_reduced(), ei.n_reduced());
      blk = f_->tensor(t).coords * kron(v_red, vt.at(tail)) * e_->tensor(t).lift;
    }
    rows += blk.rows();
    cols += blk.cols();
    vt.emplace(t, std::move(blk));
  }
  v_ = Mat::Zero(rows, cols);
  Eigen::Index r0 = 0, c0 = 0;
  for (const Tuple& t : e_tuples_) {
    const Mat& blk = vt.at(t);
    v_.block(r0, c0, blk.rows(), blk.cols()) = blk;
    r0 += blk.rows();
    c0 += blk.cols();
  }
}

Mat CpEmbedding::theta(const Word& w) const {
  const BlockVector y = f_->from_dense(v_, f_tuples_);
  const Mat z = f_->to_dense(f_->apply_word(w, y), f_tuples_, v_.cols());
  return kernels::multiply(v_.adjoint(), z);
}

Mat CpEmbedding::target_letter(int i, const Mat& a) const { return e_->dense_letter(i, s_.theta.at(i)(a)); }

}  // namespace cmono
