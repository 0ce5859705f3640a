#include "cmono/cp_product.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>
#include <unordered_map>

namespace cmono {

namespace {

class FreeProductEvaluator {
 public:
  FreeProductEvaluator(const Family& family, const MapFamily& maps) : family_(family), maps_(maps) {}

  Mat eval(const Word& w) {
    const Eigen::Index dd = maps_.d.dim();
    if (w.coeff == cd(0.0, 0.0)) return Mat::Zero(dd, dd);
    const std::string key = word_key(w);
    auto it = cache_.find(key);
    if (it != cache_.end()) return w.coeff * it->second;
    const Mat value = eval_unit(w.letters);
    cache_.emplace(key, value);
    return w.coeff * value;
  }

 private:
  Mat eval_unit(const std::vector<Letter>& l) {
    const Eigen::Index dd = maps_.d.dim();
    for (std::size_t s = 0; s < l.size(); ++s) {
      if (l[s].index == kAmalgam) continue;
      const auto [centered, mean] = center(family_, l[s]);
      if (mean.norm() <= 1e-14 * std::max(1.0, l[s].element.norm())) continue;
      std::vector<Letter> with_centered = l;
      with_centered[s] = centered;
      std::vector<Letter> with_mean = l;
      with_mean[s] = Letter{kAmalgam, mean};
      return eval(reduce(family_, std::move(with_centered))) + eval(reduce(family_, std::move(with_mean)));
    }
    Mat out = Mat::Identity(dd, dd);
    for (const Letter& x : l)
      out = out * (x.index == kAmalgam ? maps_.b_embed(x.element) : maps_.theta.at(x.index)(x.element));
    return out;
  }

  const Family& family_;
  const MapFamily& maps_;
  std::unordered_map<std::string, Mat> cache_;
};

}  // namespace

Mat free_product_maps(const Family& family, const MapFamily& maps, const Word& w) {
  validate_map_family(family, maps);
  FreeProductEvaluator ev(family, maps);
  return ev.eval(reduce(family, w));
}

Mat monotone_product_maps(const Family& family, const MapFamily& maps, const NCPoly& p) {
  Mat out = Mat::Zero(maps.d.dim(), maps.d.dim());
  for (const Word& w : p.terms) out += eval_map_product(family, maps, w);
  return out;
}

Unitalization unitalize(const Member& member, const LinearMap& theta, const AlgebraSpec& b, bool lowest) {
  const Eigen::Index d = member.algebra.dim();
  const Eigen::Index db = b.dim();
  const Eigen::Index dt = d + db;
  const AlgebraSpec at = AlgebraSpec::direct_sum(member.algebra, b);
  const CondExpSpec psi = member.psi;
  const LinearMap embed = LinearMap::from_function(db, dt, [&](const Mat& x) {
    Mat out = Mat::Zero(dt, dt);
    out.topLeftCorner(d, d) = psi.embed(x);
    out.bottomRightCorner(db, db) = x;
    return out;
  });
  const LinearMap map = lowest ? LinearMap::from_function(dt, db, [&](const Mat& x) {
    return Mat(x.bottomRightCorner(db, db));
  })
                               : LinearMap::from_function(dt, db, [&](const Mat& x) {
                                   return psi(Mat(x.topLeftCorner(d, d)));
                                 });
  Unitalization u;
  u.member.index = member.index;
  u.member.algebra = at;
  u.member.psi = CondExpSpec(at, b, embed, map);
  u.theta = LinearMap::from_function(dt, theta.out_dim(), [&](const Mat& x) {
    return theta(Mat(x.topLeftCorner(d, d)));
  });
  u.e = Mat::Zero(dt, dt);
  u.e.bottomRightCorner(db, db) = Mat::Identity(db, db);
  u.lift = LinearMap::from_function(d, dt, [&](const Mat& x) {
    Mat out = Mat::Zero(dt, dt);
    out.topLeftCorner(d, d) = x;
    return out;
  });
  return u;
}

std::pair<Family, MapFamily> unitalize_pair(const Family& family, const MapFamily& maps) {
  if (family.size() != 2) throw Error(ErrorKind::Precondition, "unitalized pair needs exactly two members");
  std::vector<Member> members;
  MapFamily out_maps{maps.d, maps.b_embed, {}};
  const int lowest = family.indices().front();
  for (int i : family.indices()) {
    Unitalization u = unitalize(family.member(i), maps.theta.at(i), family.b(), i == lowest);
    out_maps.theta.emplace(i, u.theta);
    members.push_back(std::move(u.member));
  }
  return {Family(family.b(), std::move(members)), std::move(out_maps)};
}

VerificationReport verify_cfree_monot(const Family& family, const MapFamily& maps, std::mt19937_64& rng,
                                      int n_words, int max_len, double tol) {
  VerificationReport rep;
  rep.suite = "cfree-monot";
  validate_map_family(family, maps);
  const auto [tf, tmaps] = unitalize_pair(family, maps);
  const int lo = family.indices().front();
  const int hi = family.indices().back();
  auto lift = [&](const Word& w) {
    Word out = w;
    for (Letter& l : out.letters) {
      const Eigen::Index d = l.element.rows();
      const Eigen::Index dt = tf.member(l.index).algebra.dim();
      Mat x = Mat::Zero(dt, dt);
      x.topLeftCorner(d, d) = l.element;
      l.element = x;
    }
    return out;
  };
  auto gap = [&](const Word& w) {
    return operator_norm(free_product_maps(tf, tmaps, lift(w)) - eval_map_product(family, maps, w));
  };

  rep.add("cfree.ends_high", "cfree-monot", gap(random_word_on(rng, {hi, lo, hi}, family)), tol);
  {
    Word w = random_word_on(rng, {lo, hi, lo}, family);
    w.letters[1] = center(family, w.letters[1]).first;
    const Mat direct = maps.theta.at(lo)(w.letters[0].element) * maps.theta.at(hi)(w.letters[1].element) *
                       maps.theta.at(lo)(w.letters[2].element);
    rep.add("cfree.centered_middle", "cfree-monot",
            operator_norm(free_product_maps(tf, tmaps, lift(w)) - direct), tol);
    rep.add("cfree.centered_middle_monotone", "cfree-monot",
            operator_norm(eval_map_product(family, maps, w) - direct), tol);
  }
  double worst = 0.0;
  for (int k = 0; k < n_words; ++k) worst = std::max(worst, gap(sample_random_word(rng, max_len, family)));
  rep.add("cfree.random_words", "cfree-monot", worst, tol, Metric::Residual,
          std::to_string(n_words) + " words up to length " + std::to_string(max_len));
  return rep;
}

double cp_check_choi(const AlgebraSpec& source, const LinearMap& theta) {
  if (!source.is_full_matrix()) throw Error(ErrorKind::NotFullAlgebra, "Choi matrix needs a full matrix algebra");
  const Eigen::Index d = source.dim();
  const Eigen::Index e = theta.out_dim();
  Mat choi(d * e, d * e);
  for (Eigen::Index p = 0; p < d; ++p)
    for (Eigen::Index q = 0; q < d; ++q) {
      Mat epq = Mat::Zero(d, d);
      epq(p, q) = 1.0;
      choi.block(p * e, q * e, e, e) = theta(epq);
    }
  return min_eigenvalue(choi);
}

GramResult cp_check_gram(const Family& family, const std::function<Mat(const Word&)>& theta,
                         const GramOptions& opt) {
  GramResult r;
  r.per_round.assign(static_cast<std::size_t>(std::max(0, opt.rounds)), 0.0);
  std::vector<double> asym(r.per_round.size(), 0.0);
  std::vector<std::string> errors(r.per_round.size());
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int round = next++; round < opt.rounds; round = next++) {
      try {
        std::mt19937_64 rng(derive_seed(opt.seed, static_cast<std::uint64_t>(round)));
        std::uniform_int_distribution<int> m_dist(1, std::max(1, opt.max_m));
        const int m = m_dist(rng);
        std::vector<Word> words;
        // the empty word keeps theta(1) in every Gram matrix
        words.push_back(Word{});
        for (int p = 1; p < m; ++p) words.push_back(sample_random_word(rng, opt.max_len, family));
        std::vector<Word> adj;
        for (const Word& w : words) adj.push_back(adjoint(family, w));
        Eigen::Index dd = 0;
        std::vector<std::vector<Mat>> blocks(words.size(), std::vector<Mat>(words.size()));
        for (std::size_t p = 0; p < words.size(); ++p)
          for (std::size_t q = 0; q < words.size(); ++q) {
            blocks[p][q] = theta(multiply(family, adj[p], words[q]));
            dd = blocks[p][q].rows();
          }
        const Eigen::Index n = static_cast<Eigen::Index>(words.size());
        Mat g(n * dd, n * dd);
        for (Eigen::Index p = 0; p < n; ++p)
          for (Eigen::Index q = 0; q < n; ++q)
            g.block(p * dd, q * dd, dd, dd) = blocks[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
        const auto idx = static_cast<std::size_t>(round);
        asym[idx] = (g - g.adjoint()).norm();
        r.per_round[idx] = min_eigenvalue(g);
      } catch (const std::exception& ex) {
        errors[static_cast<std::size_t>(round)] = ex.what();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned n_threads = std::min<unsigned>(hw, static_cast<unsigned>(std::max(1, opt.rounds)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);
  r.min_eigenvalue = r.per_round.empty() ? 0.0 : *std::min_element(r.per_round.begin(), r.per_round.end());
  r.asymmetry = asym.empty() ? 0.0 : *std::max_element(asym.begin(), asym.end());
  return r;
}

LinearMap random_unital_cp_map(std::mt19937_64& rng, Eigen::Index d_in, Eigen::Index d_out, int rank) {
  if (rank < 1 || rank * d_in < d_out)
    throw Error(ErrorKind::Precondition, "rank * d_in must be at least d_out for a unital map");
  std::vector<Mat> kraus;
  Mat t = Mat::Zero(d_out, d_out);
  for (int r = 0; r < rank; ++r) {
    kraus.push_back(random_gaussian(rng, d_out, d_in));
    t += kraus.back() * kraus.back().adjoint();
  }
  const Mat s = inverse_sqrt_psd(t);
  for (Mat& k : kraus) k = s * k;
  return LinearMap::from_function(d_in, d_out, [&](const Mat& a) {
    Mat out = Mat::Zero(d_out, d_out);
    for (const Mat& k : kraus) out += k * a * k.adjoint();
    return out;
  });
}

LinearMap transpose_map(Eigen::Index d) {
  return LinearMap::from_function(d, d, [](const Mat& a) { return Mat(a.transpose()); });
}

}  // namespace cmono
