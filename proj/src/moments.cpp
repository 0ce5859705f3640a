#include "cmono/moments.hpp"

#include <algorithm>
#include <unordered_map>

namespace cmono {

namespace {

/// Values attached to letters by one concrete product rule.
struct Rules {
  Mat unit;
  std::function<Mat(int, const Mat&)> single;
  std::function<Mat(const Mat&)> of_b;
  /// value(a) - value(iota(psi(a))); empty for the plain monotone rule.
  std::function<Mat(int, const Mat&)> correction;
};

std::size_t choose_position(const std::vector<Letter>& l, const EvalOptions& opt) {
  const std::size_t n = l.size();
  if (opt.policy == OrderPolicy::Canonical || opt.rng == nullptr) {
    std::size_t best = 0;
    for (std::size_t s = 1; s < n; ++s)
      if (l[s].index > l[best].index) best = s;
    return best;
  }
  std::vector<std::size_t> admissible;
  for (std::size_t s = 0; s < n; ++s) {
    const bool left_ok = s == 0 || l[s - 1].index < l[s].index;
    const bool right_ok = s + 1 == n || l[s + 1].index < l[s].index;
    if (left_ok && right_ok) admissible.push_back(s);
  }
  std::uniform_int_distribution<std::size_t> pick(0, admissible.size() - 1);
  return admissible[pick(*opt.rng)];
}

class Evaluator {
 public:
  Evaluator(const Family& family, Rules rules, const EvalOptions& opt)
      : family_(family), rules_(std::move(rules)), opt_(opt) {}

  Mat operator()(std::vector<Letter> letters, cd coeff) {
    Word w = reduce(family_, std::move(letters), coeff);
    if (w.coeff == cd(0.0, 0.0)) return Mat::Zero(rules_.unit.rows(), rules_.unit.cols());
    return w.coeff * core(w.letters);
  }

 private:
  Mat core(const std::vector<Letter>& l) {
    if (l.empty()) return rules_.unit;
    if (l.size() == 1)
      return l[0].index == kAmalgam ? rules_.of_b(l[0].element) : rules_.single(l[0].index, l[0].element);

    const bool memo = opt_.policy == OrderPolicy::Canonical;
    std::string key;
    if (memo) {
      key = word_key(Word{cd(1.0, 0.0), l});
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }

    const std::size_t n = l.size();
    const std::size_t s = choose_position(l, opt_);
    const auto first = l.begin();
    std::vector<Letter> prefix(first, first + static_cast<std::ptrdiff_t>(s));
    std::vector<Letter> suffix(first + static_cast<std::ptrdiff_t>(s + 1), l.end());
    Mat value;
    if (s == 0) {
      value = rules_.single(l[0].index, l[0].element) * (*this)(suffix, 1.0);
    } else if (s + 1 == n) {
      value = (*this)(prefix, 1.0) * rules_.single(l[s].index, l[s].element);
    } else {
      const Mat b = family_.psi(l[s].index, l[s].element);
      std::vector<Letter> joined = prefix;
      joined.push_back(Letter{kAmalgam, b});
      joined.insert(joined.end(), suffix.begin(), suffix.end());
      value = (*this)(joined, 1.0);
      if (rules_.correction) {
        const Mat corr = rules_.correction(l[s].index, l[s].element);
        if (corr.norm() > 0.0) value += (*this)(prefix, 1.0) * corr * (*this)(suffix, 1.0);
      }
    }
    if (memo) cache_.emplace(std::move(key), value);
    return value;
  }

  const Family& family_;
  Rules rules_;
  EvalOptions opt_;
  std::unordered_map<std::string, Mat> cache_;
};

Rules monotone_rules(const Family& family) {
  Rules r;
  const Eigen::Index db = family.b().dim();
  r.unit = Mat::Identity(db, db);
  r.single = [&family](int idx, const Mat& a) { return family.psi(idx, a); };
  r.of_b = [](const Mat& b) { return b; };
  return r;
}

Rules map_rules(const Family& family, const MapFamily& maps) {
  Rules r;
  const Eigen::Index dd = maps.d.dim();
  r.unit = Mat::Identity(dd, dd);
  r.single = [&maps](int idx, const Mat& a) {
    auto it = maps.theta.find(idx);
    if (it == maps.theta.end()) throw Error(ErrorKind::ContextMismatch, "no map for index " + std::to_string(idx));
    return it->second(a);
  };
  r.of_b = [&maps](const Mat& b) { return maps.b_embed(b); };
  r.correction = [&family, &maps, single = r.single](int idx, const Mat& a) {
    return Mat(single(idx, a) - maps.b_embed(family.psi(idx, a)));
  };
  return r;
}

}  // namespace

Mat eval_monotone(const Family& family, const Word& w, const EvalOptions& opt) {
  Evaluator ev(family, monotone_rules(family), opt);
  return ev(w.letters, w.coeff);
}

cd eval_cmonotone(const Family& family, const Word& w, const EvalOptions& opt) {
  if (!family.scalar_b()) throw Error(ErrorKind::ContextMismatch, "c-monotone moments need B = C");
  for (int i : family.indices())
    if (!family.member(i).phi) throw Error(ErrorKind::ContextMismatch, "missing phi for index " + std::to_string(i));
  Rules r;
  r.unit = Mat::Identity(1, 1);
  r.single = [&family](int idx, const Mat& a) {
    Mat v(1, 1);
    v(0, 0) = (*family.member(idx).phi)(a);
    return v;
  };
  r.of_b = [](const Mat& b) { return b; };
  r.correction = [&family, single = r.single](int idx, const Mat& a) {
    return Mat(single(idx, a) - family.psi(idx, a));
  };
  Evaluator ev(family, std::move(r), opt);
  return ev(w.letters, w.coeff)(0, 0);
}

Mat eval_map_product(const Family& family, const MapFamily& maps, const Word& w, const EvalOptions& opt) {
  Evaluator ev(family, map_rules(family, maps), opt);
  return ev(w.letters, w.coeff);
}

void validate_map_family(const Family& family, const MapFamily& maps, double tol) {
  const Eigen::Index dd = maps.d.dim();
  if (maps.b_embed.in_dim() != family.b().dim() || maps.b_embed.out_dim() != dd)
    throw Error(ErrorKind::ContextMismatch, "B does not embed into D");
  for (int i : family.indices()) {
    auto it = maps.theta.find(i);
    if (it == maps.theta.end()) throw Error(ErrorKind::ContextMismatch, "no map for index " + std::to_string(i));
    const Member& m = family.member(i);
    if (it->second.in_dim() != m.algebra.dim() || it->second.out_dim() != dd)
      throw Error(ErrorKind::ContextMismatch, "map shape for index " + std::to_string(i));
    for (const Mat& b : family.b().basis()) {
      const double r = (it->second(m.psi.embed(b)) - maps.b_embed(b)).norm();
      if (r > tol) throw Error(ErrorKind::ContextMismatch, "map is not the identity on B for index " + std::to_string(i));
    }
  }
}

MapFamily psi_as_maps(const Family& family) {
  MapFamily m;
  m.d = family.b();
  m.b_embed = LinearMap::identity(family.b().dim());
  for (int i : family.indices()) m.theta.emplace(i, family.member(i).psi.map());
  return m;
}

double order_deviation(const std::function<Mat(const EvalOptions&)>& evaluate, int n_orders,
                       std::mt19937_64& rng) {
  std::vector<Mat> values{evaluate(EvalOptions{})};
  for (int r = 0; r < n_orders; ++r) values.push_back(evaluate(EvalOptions{OrderPolicy::Random, &rng}));
  double worst = 0.0;
  for (std::size_t p = 0; p < values.size(); ++p)
    for (std::size_t q = p + 1; q < values.size(); ++q) worst = std::max(worst, (values[p] - values[q]).norm());
  return worst;
}

namespace {

struct Run {
  int group = 0;
  std::vector<Letter> letters;
};

class GroupedEvaluator {
 public:
  GroupedEvaluator(const Family& family, const MapFamily& maps, std::map<int, int> group_of)
      : family_(family), maps_(maps), group_of_(std::move(group_of)) {
    const Eigen::Index dd = maps.d.dim();
    unit_ = Mat::Identity(dd, dd);
  }

  Mat operator()(std::vector<Run> runs) {
    cd coeff(1.0, 0.0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s + 1 < runs.size(); ++s)
        if (runs[s].group == runs[s + 1].group) {
          runs[s].letters.insert(runs[s].letters.end(), runs[s + 1].letters.begin(), runs[s + 1].letters.end());
          runs.erase(runs.begin() + static_cast<std::ptrdiff_t>(s + 1));
          changed = true;
          break;
        }
      if (changed) continue;
      for (std::size_t s = 0; s < runs.size(); ++s) {
        Word w = reduce(family_, runs[s].letters);
        coeff *= w.coeff;
        if (w.coeff == cd(0.0, 0.0)) return Mat::Zero(unit_.rows(), unit_.cols());
        runs[s].letters = std::move(w.letters);
        const bool bare = runs[s].letters.empty() ||
                          (runs[s].letters.size() == 1 && runs[s].letters[0].index == kAmalgam);
        if (!bare || runs.size() == 1) continue;
        if (!runs[s].letters.empty()) {
          const Letter b = runs[s].letters[0];
          if (s > 0) runs[s - 1].letters.push_back(b);
          else runs[s + 1].letters.insert(runs[s + 1].letters.begin(), b);
        }
        runs.erase(runs.begin() + static_cast<std::ptrdiff_t>(s));
        changed = true;
        break;
      }
    }
    if (runs.empty()) return coeff * unit_;
    return coeff * core(runs);
  }

 private:
  Mat inner_value(const Run& r) {
    return eval_map_product(family_, maps_, Word{cd(1.0, 0.0), r.letters});
  }

  Mat core(const std::vector<Run>& runs) {
    if (runs.size() == 1) {
      const Run& r = runs[0];
      if (r.letters.size() == 1 && r.letters[0].index == kAmalgam) return maps_.b_embed(r.letters[0].element);
      return inner_value(r);
    }
    std::size_t s = 0;
    for (std::size_t t = 1; t < runs.size(); ++t)
      if (runs[t].group > runs[s].group) s = t;
    const auto first = runs.begin();
    std::vector<Run> prefix(first, first + static_cast<std::ptrdiff_t>(s));
    std::vector<Run> suffix(first + static_cast<std::ptrdiff_t>(s + 1), runs.end());
    if (s == 0) return inner_value(runs[0]) * (*this)(suffix);
    if (s + 1 == runs.size()) return (*this)(prefix) * inner_value(runs[s]);

    const Mat b = eval_monotone(family_, Word{cd(1.0, 0.0), runs[s].letters});
    std::vector<Run> joined = prefix;
    joined.back().letters.push_back(Letter{kAmalgam, b});
    joined.insert(joined.end(), suffix.begin(), suffix.end());
    const Mat corr = inner_value(runs[s]) - maps_.b_embed(b);
    return (*this)(joined) + (*this)(prefix) * corr * (*this)(suffix);
  }

  const Family& family_;
  const MapFamily& maps_;
  std::map<int, int> group_of_;
  Mat unit_;
};

}  // namespace

Mat eval_map_product_grouped(const Family& family, const MapFamily& maps, const Word& w,
                             const std::vector<std::vector<int>>& groups) {
  std::map<int, int> group_of;
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (int i : groups[g]) group_of[i] = static_cast<int>(g);
  // Groups must be intervals of the order, listed increasingly.
  int last_group = -1;
  for (int i : family.indices()) {
    auto it = group_of.find(i);
    if (it == group_of.end()) throw Error(ErrorKind::ContextMismatch, "index missing from grouping");
    if (it->second < last_group) throw Error(ErrorKind::ContextMismatch, "groups are not ordered intervals");
    last_group = it->second;
  }

  const Word rw = reduce(family, w);
  std::vector<Run> runs;
  for (const Letter& l : rw.letters) {
    const int g = l.index == kAmalgam ? -1 : group_of.at(l.index);
    if (g < 0) {
      if (runs.empty()) return rw.coeff * maps.b_embed(l.element);
      runs.back().letters.push_back(l);
    } else if (!runs.empty() && runs.back().group == g) {
      runs.back().letters.push_back(l);
    } else {
      runs.push_back(Run{g, {l}});
    }
  }
  GroupedEvaluator ev(family, maps, group_of);
  return rw.coeff * ev(std::move(runs));
}

}  // namespace cmono
