#include "cmono/fock_scalar.hpp"

#include <algorithm>
#include <functional>

#include "cmono/kernels.hpp"
#include "cmono/moments.hpp"

namespace cmono {

MonotoneFock::MonotoneFock(const std::map<int, Eigen::Index>& dims) : dims_(dims) {
  if (dims.empty()) throw Error(ErrorKind::EmptyFamily, "Fock space of an empty family");
  for (const auto& [i, d] : dims) {
    if (d < 1) throw Error(ErrorKind::ShapeMismatch, "Hilbert space of dimension 0");
    indices_.push_back(i);
  }
  basis_.push_back({});
  // Extend every tuple by a strictly smaller index, breadth first.
  std::size_t begin = 0;
  while (begin < basis_.size()) {
    const std::size_t end = basis_.size();
    for (std::size_t t = begin; t < end; ++t) {
      const FockBasisVector cur = basis_[t];
      for (int i : indices_) {
        if (!cur.empty() && i >= cur.back().index) continue;
        for (Eigen::Index s = 1; s < dims_.at(i); ++s) {
          FockBasisVector next = cur;
          next.push_back(Slot{i, s});
          basis_.push_back(std::move(next));
        }
      }
    }
    begin = end;
  }
  for (std::size_t p = 0; p < basis_.size(); ++p) lookup_.emplace(basis_[p], static_cast<Eigen::Index>(p));
}

Eigen::Index MonotoneFock::position(const FockBasisVector& v) const {
  auto it = lookup_.find(v);
  return it == lookup_.end() ? -1 : it->second;
}

Eigen::Index MonotoneFock::local_dim(int k) const {
  auto it = dims_.find(k);
  if (it == dims_.end()) throw Error(ErrorKind::UnknownIndex, "index " + std::to_string(k));
  return it->second;
}

std::vector<Eigen::Index> MonotoneFock::upto(int k) const {
  std::vector<Eigen::Index> out;
  for (Eigen::Index p = 0; p < dim(); ++p) {
    const auto& v = basis_[static_cast<std::size_t>(p)];
    if (v.empty() || v.front().index <= k) out.push_back(p);
  }
  return out;
}

Mat MonotoneFock::reduced_upto_projection(int k) const {
  Mat p = Mat::Zero(dim(), dim());
  for (Eigen::Index q : upto(k))
    if (q != 0) p(q, q) = 1.0;
  return p;
}

Eigen::Index MonotoneFock::sub_position(int k, Eigen::Index full) const {
  // H(k-1) lists the vacuum and tuples with first index < k in basis order.
  Eigen::Index count = 0;
  for (Eigen::Index p = 0; p < dim(); ++p) {
    const auto& v = basis_[static_cast<std::size_t>(p)];
    const bool inside = v.empty() || v.front().index < k;
    if (p == full) return inside ? count : -1;
    if (inside) ++count;
  }
  return -1;
}

Mat MonotoneFock::make_Vk(int k) const {
  const Eigen::Index nk = local_dim(k);
  Eigen::Index n_prev = 0;
  for (const auto& v : basis_)
    if (v.empty() || v.front().index < k) ++n_prev;
  Mat out = Mat::Zero(nk * n_prev, dim());
  for (Eigen::Index p = 0; p < dim(); ++p) {
    const auto& v = basis_[static_cast<std::size_t>(p)];
    if (v.empty() || v.front().index < k) {
      out(sub_position(k, p), p) = 1.0;  // c = 0
    } else if (v.front().index == k) {
      FockBasisVector rest(v.begin() + 1, v.end());
      out(v.front().slot * n_prev + sub_position(k, position(rest)), p) = 1.0;
    }
  }
  return out;
}

Mat MonotoneFock::omega_dense(int k, const Mat& t) const {
  const Eigen::Index nk = local_dim(k);
  if (t.rows() != nk || t.cols() != nk) throw Error(ErrorKind::ShapeMismatch, "omega_k: operator size");
  const Mat v = make_Vk(k);
  const Eigen::Index n_prev = v.rows() / nk;
  const Mat lifted = kron(t, Mat(Mat::Identity(n_prev, n_prev)));
  return kernels::multiply(v.adjoint(), kernels::multiply(lifted, v));
}

Mat MonotoneFock::omega(int k, const Mat& t) const {
  const Eigen::Index nk = local_dim(k);
  if (t.rows() != nk || t.cols() != nk) throw Error(ErrorKind::ShapeMismatch, "omega_k: operator size");
  Mat out = Mat::Zero(dim(), dim());
  for (Eigen::Index p = 0; p < dim(); ++p) {
    const auto& v = basis_[static_cast<std::size_t>(p)];
    Eigen::Index c_in = 0;
    FockBasisVector rest;
    if (v.empty() || v.front().index < k) {
      rest = v;
    } else if (v.front().index == k) {
      c_in = v.front().slot;
      rest.assign(v.begin() + 1, v.end());
    } else {
      continue;
    }
    for (Eigen::Index c = 0; c < nk; ++c) {
      if (t(c, c_in) == cd(0.0, 0.0)) continue;
      Eigen::Index q;
      if (c == 0) {
        q = position(rest);
      } else {
        FockBasisVector target{Slot{k, c}};
        target.insert(target.end(), rest.begin(), rest.end());
        q = position(target);
      }
      out(q, p) += t(c, c_in);
    }
  }
  return out;
}

Mat MonotoneFock::P(int k) const {
  Mat p = Mat::Zero(dim(), dim());
  for (Eigen::Index q = 0; q < dim(); ++q) {
    const auto& v = basis_[static_cast<std::size_t>(q)];
    if (v.empty() || (v.size() == 1 && v.front().index == k)) p(q, q) = 1.0;
  }
  return p;
}

namespace {

std::map<int, Eigen::Index> paired_dims(const std::map<int, PairedGns>& g) {
  std::map<int, Eigen::Index> d;
  for (const auto& [i, p] : g) d[i] = p.pi.dim;
  return d;
}

std::map<int, PairedGns> build_paired(const Family& family) {
  if (!family.scalar_b()) throw Error(ErrorKind::ContextMismatch, "scalar Fock model needs B = C");
  std::map<int, PairedGns> out;
  for (int i : family.indices()) {
    const Member& m = family.member(i);
    if (!m.phi) throw Error(ErrorKind::ContextMismatch, "missing phi for index " + std::to_string(i));
    // psi(a) = sum_k M(0, k) vec(a)_k, hence rho = unvec(M row)^T.
    const Eigen::Index d = m.algebra.dim();
    const Vec row = m.psi.map().matrix().row(0).transpose();
    const StateSpec psi_state(Mat(unvectorize(row, d, d).transpose()));
    out.emplace(i, paired_gns(m.algebra, *m.phi, psi_state));
  }
  return out;
}

}  // namespace

ScalarFockModel::ScalarFockModel(const Family& family, bool strict)
    : family_(family), fock_(paired_dims(build_paired(family))), gns_(build_paired(family)) {
  const int lowest = family.indices().front();
  const Member& m = family.member(lowest);
  double diff = 0.0;
  for (const Mat& b : m.algebra.basis()) diff = std::max(diff, std::abs((*m.phi)(b) - m.psi(b)(0, 0)));
  minimal_pair_differs_ = diff > 1e-9;
  if (strict && minimal_pair_differs_)
    throw Error(ErrorKind::ContextMismatch, "phi and psi must agree on the smallest index");
}

Mat ScalarFockModel::j(int k, const Mat& a) const {
  const PairedGns& g = gns_.at(k);
  const Mat wp = fock_.omega(k, g.pi(a));
  const Mat ws = fock_.omega(k, g.sigma(a));
  Mat out(fock_.dim(), fock_.dim());
  const auto& basis = fock_.basis();
  for (Eigen::Index q = 0; q < fock_.dim(); ++q) {
    const auto& v = basis[static_cast<std::size_t>(q)];
    const bool corner = v.empty() || (v.size() == 1 && v.front().index == k);
    out.col(q) = corner ? wp.col(q) : ws.col(q);
  }
  return out;
}

Vec ScalarFockModel::apply_word(const Word& w) const {
  Vec v = Vec::Unit(fock_.dim(), 0);
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (it->index == kAmalgam) {
      v *= it->element(0, 0);
      continue;
    }
    v = kernels::apply(j(it->index, it->element), v);
  }
  return w.coeff * v;
}

cd ScalarFockModel::vacuum(const Word& w) const { return apply_word(w)(0); }

double vacuum_split_residual(const ScalarFockModel& m, const Word& w) {
  if (w.letters.empty()) return 0.0;
  const int i1 = w.letters.front().index;
  Vec v = m.apply_word(w);
  v(0) = 0.0;
  const auto keep = m.fock().upto(i1);
  for (Eigen::Index q : keep) v(q) = 0.0;
  return v.norm();
}

MomentRuleResidual moment_rule_residual(const ScalarFockModel& m, const Word& w) {
  MomentRuleResidual r;
  const Family& family = m.family();
  const cd lhs = m.vacuum(w);
  r.oracle = std::abs(lhs - eval_cmonotone(family, w));
  const auto& l = w.letters;
  const std::size_t n = l.size();
  if (n == 0) {
    r.pattern = "empty";
    r.rule = std::abs(lhs - w.coeff);
    return r;
  }
  auto phi = [&](const Letter& x) { return (*family.member(x.index).phi)(x.element); };
  auto sub = [&](std::size_t from, std::size_t to) {
    return Word{cd(1.0, 0.0), std::vector<Letter>(l.begin() + static_cast<std::ptrdiff_t>(from),
                                                  l.begin() + static_cast<std::ptrdiff_t>(to))};
  };
  if (n == 1) {
    r.pattern = "single";
    r.rule = std::abs(lhs - w.coeff * phi(l[0]));
    return r;
  }
  std::size_t s = 0;
  for (std::size_t t = 1; t < n; ++t)
    if (l[t].index > l[s].index) s = t;
  cd rhs;
  if (s == 0) {
    r.pattern = "first";
    rhs = phi(l[0]) * m.vacuum(sub(1, n));
  } else if (s + 1 == n) {
    r.pattern = "last";
    rhs = m.vacuum(sub(0, n - 1)) * phi(l[n - 1]);
  } else {
    r.pattern = "peak";
    const cd psi_k = family.psi(l[s].index, l[s].element)(0, 0);
    Word outer = sub(0, s);
    const Word tail = sub(s + 1, n);
    outer.letters.insert(outer.letters.end(), tail.letters.begin(), tail.letters.end());
    rhs = m.vacuum(sub(0, s)) * (phi(l[s]) - psi_k) * m.vacuum(tail) + psi_k * m.vacuum(outer);
  }
  r.rule = std::abs(lhs - w.coeff * rhs);
  return r;
}

}  // namespace cmono
