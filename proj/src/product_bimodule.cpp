#include "cmono/product_bimodule.hpp"

#include "cmono/kernels.hpp"

namespace cmono {

void add_block(BlockVector& y, const Tuple& t, const Mat& m) {
  auto it = y.find(t);
  if (it == y.end())
    y.emplace(t, m);
  else
    it->second += m;
}

ProductBimodule::ProductBimodule(AlgebraSpec b, std::map<int, BModule> factors, ProductKind kind, int n_max)
    : b_(std::move(b)), factors_(std::move(factors)), kind_(kind), n_max_(n_max) {
  if (factors_.empty()) throw Error(ErrorKind::EmptyFamily, "product of no modules");
  if (kind_ == ProductKind::Free && n_max_ < 1)
    throw Error(ErrorKind::Precondition, "free product needs a truncation depth");
  for (const auto& [i, e] : factors_) {
    if (e.value_dim != b_.dim()) throw Error(ErrorKind::MixedB, "module " + std::to_string(i) + " has another B");
    if (e.xi.size() != e.n || e.n_xi < 1)
      throw Error(ErrorKind::Precondition, "module " + std::to_string(i) + " is not pointed");
    if (e.right.empty() || e.left_b.empty())
      throw Error(ErrorKind::Precondition, "module " + std::to_string(i) + " lacks B actions");
    reduced_.emplace(i, reduced(e));
  }
  vacuum_ = gns_module(b_, CondExpSpec::identity(b_));
}

ProductBimodule::ProductBimodule(AlgebraSpec b, std::map<int, BModule> factors, BModule base)
    : ProductBimodule(std::move(b), std::move(factors), ProductKind::Monotone) {
  if (base.left_b.empty() || base.left_b.in_dim() != b_.dim())
    throw Error(ErrorKind::Precondition, "base module needs a left B action");
  vacuum_ = std::move(base);
}

ProductBimodule ProductBimodule::from_family(const Family& family, ProductKind kind, int n_max) {
  std::map<int, BModule> f;
  for (int i : family.indices()) {
    const Member& m = family.member(i);
    f.emplace(i, gns_module(m.algebra, m.psi));
  }
  return ProductBimodule(family.b(), std::move(f), kind, n_max);
}

const BModule& ProductBimodule::factor(int k) const {
  auto it = factors_.find(k);
  if (it == factors_.end()) throw Error(ErrorKind::UnknownIndex, "index " + std::to_string(k));
  return it->second;
}

std::vector<int> ProductBimodule::indices() const {
  std::vector<int> out;
  for (const auto& kv : factors_) out.push_back(kv.first);
  return out;
}

bool ProductBimodule::admissible(const Tuple& t) const {
  for (std::size_t s = 0; s < t.size(); ++s) {
    if (!factors_.count(t[s])) return false;
    if (s == 0) continue;
    if (kind_ == ProductKind::Monotone ? t[s] >= t[s - 1] : t[s] == t[s - 1]) return false;
  }
  return kind_ == ProductKind::Monotone || static_cast<int>(t.size()) <= n_max_;
}

const TensorModule& ProductBimodule::tensor(const Tuple& t) const {
  if (t.empty()) throw Error(ErrorKind::Precondition, "the vacuum summand is not a tensor product");
  std::lock_guard<std::recursive_mutex> lock(cache_->mutex);
  auto it = cache_->tensors.find(t);
  if (it != cache_->tensors.end()) return *it->second;
  if (!admissible(t)) {
    if (kind_ == ProductKind::Free && static_cast<int>(t.size()) > n_max_)
      throw Error(ErrorKind::DepthExceeded, "tensor length " + std::to_string(t.size()) + " beyond truncation " +
                                                std::to_string(n_max_));
    throw Error(ErrorKind::Precondition, "tuple is not admissible");
  }
  const Tuple tail(t.begin() + 1, t.end());
  const BModule& rest = summand(tail);
  auto tm = std::make_unique<TensorModule>(tensor_over(reduced_.at(t.front()), rest));
  const TensorModule& ref = *tm;
  cache_->tensors.emplace(t, std::move(tm));
  return ref;
}

const BModule& ProductBimodule::summand(const Tuple& t) const {
  if (t.empty()) return vacuum_;
  return tensor(t).module;
}

std::vector<Tuple> ProductBimodule::all_tuples() const {
  std::vector<Tuple> out{{}};
  std::size_t begin = 0;
  while (begin < out.size()) {
    const std::size_t end = out.size();
    for (std::size_t s = begin; s < end; ++s) {
      for (const auto& kv : factors_) {
        Tuple next = out[s];
        next.push_back(kv.first);
        if (admissible(next)) out.push_back(std::move(next));
      }
    }
    begin = end;
  }
  return out;
}

std::map<Tuple, Eigen::Index> ProductBimodule::offsets(const std::vector<Tuple>& tuples, Eigen::Index* total) const {
  std::map<Tuple, Eigen::Index> off;
  Eigen::Index pos = 0;
  for (const Tuple& t : tuples) {
    off.emplace(t, pos);
    pos += summand(t).n;
  }
  if (total != nullptr) *total = pos;
  return off;
}

BlockVector ProductBimodule::apply_operator(int k, const Mat& t, const BlockVector& y) const {
  const BModule& ek = factor(k);
  if (t.rows() != ek.n || t.cols() != ek.n) throw Error(ErrorKind::ShapeMismatch, "operator on E_k");
  const Eigen::Index nx = ek.n_xi;
  const Eigen::Index no = ek.n - nx;
  const Vec txi = t * ek.xi;
  const Mat beta = ek.inner(ek.xi, txi);
  const Vec x_tail = txi.tail(no);
  const bool creates = x_tail.norm() > 0.0;
  const Mat t_tail = t.bottomRightCorner(no, no);
  std::vector<Mat> beta_p(static_cast<std::size_t>(no));
  for (Eigen::Index p = 0; p < no; ++p)
    beta_p[static_cast<std::size_t>(p)] = ek.inner(ek.xi, Vec(t.col(nx + p)));

  BlockVector out;
  for (const auto& [tup, blk] : y) {
    if (blk.cols() == 0) continue;
    if (tup.empty() || tup.front() < k) {
      const BModule& m = summand(tup);
      add_block(out, tup, kernels::multiply(m.left_b(beta), blk));
      if (creates) {
        Tuple up{k};
        up.insert(up.end(), tup.begin(), tup.end());
        if (kind_ == ProductKind::Free && static_cast<int>(up.size()) > n_max_) {
          if (blk.norm() > 0.0)
            throw Error(ErrorKind::DepthExceeded, "creation beyond truncation depth " + std::to_string(n_max_));
          continue;
        }
        const TensorModule& tm = tensor(up);
        add_block(out, up, kernels::multiply(tm.coords, kron(Mat(x_tail), blk)));
      }
    } else if (tup.front() == k) {
      const TensorModule& tm = tensor(tup);
      const Tuple rest(tup.begin() + 1, tup.end());
      const BModule& mr = summand(rest);
      const Eigen::Index nr = mr.n;
      const Mat raw = kernels::multiply(tm.lift, blk);
      Mat down = Mat::Zero(nr, blk.cols());
      for (Eigen::Index p = 0; p < no; ++p)
        down += mr.left_b(beta_p[static_cast<std::size_t>(p)]) * raw.middleRows(p * nr, nr);
      add_block(out, rest, down);
      const Mat diag = nr == 1 ? t_tail : kron(t_tail, Mat(Mat::Identity(nr, nr)));
      add_block(out, tup, kernels::multiply(tm.coords, kernels::multiply(diag, raw)));
    }
    // first index above k: annihilated
  }
  return out;
}

BlockVector ProductBimodule::apply_left_b(const Mat& b, const BlockVector& y) const {
  BlockVector out;
  for (const auto& [tup, blk] : y) out.emplace(tup, summand(tup).left_b(b) * blk);
  return out;
}

BlockVector ProductBimodule::apply_word(const Word& w, const BlockVector& y) const {
  BlockVector v = y;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    v = it->index == kAmalgam ? apply_left_b(it->element, v) : apply_letter(it->index, it->element, v);
  if (w.coeff != cd(1.0, 0.0))
    for (auto& kv : v) kv.second *= w.coeff;
  return v;
}

BlockVector ProductBimodule::vacuum_vector() const { return BlockVector{{Tuple{}, Mat(vacuum_.xi)}}; }

Mat ProductBimodule::vacuum_inner(const BlockVector& y) const {
  auto it = y.find(Tuple{});
  if (it == y.end()) return Mat::Zero(b_.dim(), b_.dim());
  return vacuum_.inner(vacuum_.xi, Vec(it->second.col(0)));
}

Mat ProductBimodule::vacuum_expectation(const Word& w) const {
  return vacuum_inner(apply_word(w, vacuum_vector()));
}

BlockVector ProductBimodule::from_dense(const Mat& x, const std::vector<Tuple>& tuples) const {
  BlockVector y;
  Eigen::Index pos = 0;
  for (const Tuple& t : tuples) {
    const Eigen::Index n = summand(t).n;
    y.emplace(t, x.middleRows(pos, n));
    pos += n;
  }
  return y;
}

Mat ProductBimodule::to_dense(const BlockVector& y, const std::vector<Tuple>& tuples, Eigen::Index cols) const {
  Eigen::Index total = 0;
  const auto off = offsets(tuples, &total);
  Mat x = Mat::Zero(total, cols);
  for (const auto& [t, blk] : y) {
    auto it = off.find(t);
    if (it == off.end()) {
      if (blk.norm() > 0.0) throw Error(ErrorKind::DepthExceeded, "vector leaves the dense layout");
      continue;
    }
    x.middleRows(it->second, blk.rows()) = blk;
  }
  return x;
}

Mat ProductBimodule::dense(const std::function<BlockVector(const BlockVector&)>& op,
                           const std::vector<Tuple>& tuples) const {
  Eigen::Index total = 0;
  offsets(tuples, &total);
  const Mat id = Mat::Identity(total, total);
  return to_dense(op(from_dense(id, tuples)), tuples, total);
}

Eigen::Index ProductBimodule::total_dim() const {
  Eigen::Index total = 0;
  offsets(all_tuples(), &total);
  return total;
}

Mat ProductBimodule::dense_letter(int k, const Mat& a) const {
  return dense([&](const BlockVector& y) { return apply_letter(k, a, y); }, all_tuples());
}

Mat ProductBimodule::dense_left_b(const Mat& b) const {
  return dense([&](const BlockVector& y) { return apply_left_b(b, y); }, all_tuples());
}

Mat ProductBimodule::dense_word(const Word& w) const {
  return dense([&](const BlockVector& y) { return apply_word(w, y); }, all_tuples());
}

}  // namespace cmono
