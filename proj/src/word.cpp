#include "cmono/word.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace cmono {

namespace {

bool same_span(const AlgebraSpec& x, const AlgebraSpec& y, double tol = 1e-9) {
  if (x.dim() != y.dim() || x.size() != y.size()) return false;
  for (const Mat& m : x.basis())
    if (!y.contains(m, tol)) return false;
  return true;
}

bool is_zero(const Mat& m) { return m.cwiseAbs().maxCoeff() == 0.0; }

}  // namespace

Family::Family(AlgebraSpec b, std::vector<Member> members) : b_(std::move(b)) {
  if (members.empty()) throw Error(ErrorKind::EmptyFamily, "family has no algebras");
  for (Member& m : members) {
    if (m.index == kAmalgam) throw Error(ErrorKind::UnknownIndex, "reserved index");
    if (!same_span(m.psi.target(), b_))
      throw Error(ErrorKind::MixedB, "algebra " + std::to_string(m.index) + " has a different B");
    if (!same_span(m.psi.source(), m.algebra))
      throw Error(ErrorKind::ShapeMismatch, "expectation of algebra " + std::to_string(m.index) +
                                                " is defined on another algebra");
    if (m.phi && m.phi->density().rows() != m.algebra.dim())
      throw Error(ErrorKind::ShapeMismatch, "state size for algebra " + std::to_string(m.index));
    const int idx = m.index;
    if (!members_.emplace(idx, std::move(m)).second)
      throw Error(ErrorKind::UnknownIndex, "duplicate index " + std::to_string(idx));
    order_.push_back(idx);
  }
  std::sort(order_.begin(), order_.end());
}

const Member& Family::member(int index) const {
  auto it = members_.find(index);
  if (it == members_.end()) throw Error(ErrorKind::UnknownIndex, "index " + std::to_string(index));
  return it->second;
}

Family Family::restrict_to(const std::vector<int>& indices) const {
  std::vector<Member> ms;
  for (int i : indices) ms.push_back(member(i));
  return Family(b_, std::move(ms));
}

void NCPoly::add(const Word& w) {
  for (Word& t : terms) {
    if (t.letters.size() != w.letters.size()) continue;
    bool same = true;
    for (std::size_t s = 0; s < w.letters.size() && same; ++s)
      same = t.letters[s].index == w.letters[s].index &&
             t.letters[s].element.size() == w.letters[s].element.size() &&
             t.letters[s].element == w.letters[s].element;
    if (same) {
      t.coeff += w.coeff;
      return;
    }
  }
  terms.push_back(w);
}

Word reduce(const Family& family, std::vector<Letter> letters, cd coeff) {
  const Eigen::Index db = family.b().dim();
  for (const Letter& l : letters) {
    const Eigen::Index d = l.index == kAmalgam ? db : family.member(l.index).algebra.dim();
    if (l.element.rows() != d || l.element.cols() != d)
      throw Error(ErrorKind::ShapeMismatch, "letter element has the wrong size");
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (const Letter& l : letters)
      if (is_zero(l.element)) return Word{cd(0.0, 0.0), {}};

    // Bare B factors: collapse runs, then attach to a genuine neighbour.
    for (std::size_t s = 0; s < letters.size(); ++s) {
      if (letters[s].index != kAmalgam) continue;
      if (s + 1 < letters.size() && letters[s + 1].index == kAmalgam) {
        letters[s].element = letters[s].element * letters[s + 1].element;
        letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(s + 1));
        changed = true;
        break;
      }
      if (s > 0) {
        Letter& left = letters[s - 1];
        left.element = left.element * family.embed(left.index, letters[s].element);
      } else if (s + 1 < letters.size()) {
        Letter& right = letters[s + 1];
        right.element = family.embed(right.index, letters[s].element) * right.element;
      } else {
        if (db == 1) {
          coeff *= letters[s].element(0, 0);
          letters.clear();
          changed = true;
        }
        break;
      }
      letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(s));
      changed = true;
      break;
    }
    if (changed) continue;

    for (std::size_t s = 0; s + 1 < letters.size(); ++s) {
      if (letters[s].index == letters[s + 1].index) {
        letters[s].element = letters[s].element * letters[s + 1].element;
        letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(s + 1));
        changed = true;
        break;
      }
    }
    if (changed) continue;

    // A letter from B at a local maximum acts as the left B action.
    if (letters.size() >= 2) {
      for (std::size_t s = 0; s < letters.size(); ++s) {
        const int idx = letters[s].index;
        const bool left_ok = s == 0 || letters[s - 1].index < idx;
        const bool right_ok = s + 1 == letters.size() || letters[s + 1].index < idx;
        if (!left_ok || !right_ok) continue;
        const Mat b = family.psi(idx, letters[s].element);
        const Mat back = family.embed(idx, b);
        if ((back - letters[s].element).norm() > 1e-12 * std::max(1.0, letters[s].element.norm()))
          continue;
        letters[s] = Letter{kAmalgam, b};
        changed = true;
        break;
      }
    }
  }
  return Word{coeff, std::move(letters)};
}

Word reduce(const Family& family, const Word& w) { return reduce(family, w.letters, w.coeff); }

std::pair<Letter, Mat> center(const Family& family, const Letter& l) {
  const Mat mean = family.psi(l.index, l.element);
  return {Letter{l.index, l.element - family.embed(l.index, mean)}, mean};
}

Word adjoint(const Family& family, const Word& w) {
  std::vector<Letter> letters;
  letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    letters.push_back(Letter{it->index, it->element.adjoint()});
  return reduce(family, std::move(letters), std::conj(w.coeff));
}

Word multiply(const Family& family, const Word& w1, const Word& w2) {
  std::vector<Letter> letters = w1.letters;
  letters.insert(letters.end(), w2.letters.begin(), w2.letters.end());
  return reduce(family, std::move(letters), w1.coeff * w2.coeff);
}

Word random_word_on(std::mt19937_64& rng, const std::vector<int>& pattern, const Family& family) {
  Word w;
  for (int idx : pattern) w.letters.push_back(Letter{idx, family.member(idx).algebra.random_element(rng)});
  return w;
}

Word sample_random_word(std::mt19937_64& rng, int max_len, const Family& family) {
  const auto& idx = family.indices();
  std::uniform_int_distribution<int> len_dist(1, std::max(1, max_len));
  const int len = len_dist(rng);
  std::vector<int> pattern;
  for (int s = 0; s < len; ++s) {
    std::vector<int> choices;
    for (int i : idx)
      if (pattern.empty() || pattern.back() != i) choices.push_back(i);
    if (choices.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
    pattern.push_back(choices[pick(rng)]);
  }
  return random_word_on(rng, pattern, family);
}

std::vector<std::vector<int>> alternating_patterns(const std::vector<int>& indices, int max_len) {
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> frontier{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& p : frontier)
      for (int i : indices)
        if (p.empty() || p.back() != i) {
          auto q = p;
          q.push_back(i);
          next.push_back(q);
        }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::string word_key(const Word& w) {
  std::string key;
  for (const Letter& l : w.letters) {
    key.append(reinterpret_cast<const char*>(&l.index), sizeof(int));
    const auto rows = static_cast<std::int64_t>(l.element.rows());
    key.append(reinterpret_cast<const char*>(&rows), sizeof(rows));
    key.append(reinterpret_cast<const char*>(l.element.data()),
               sizeof(cd) * static_cast<std::size_t>(l.element.size()));
  }
  return key;
}

double word_distance(const Word& a, const Word& b) {
  if (a.letters.size() != b.letters.size()) return std::numeric_limits<double>::infinity();
  double worst = std::abs(a.coeff - b.coeff);
  for (std::size_t s = 0; s < a.letters.size(); ++s) {
    if (a.letters[s].index != b.letters[s].index ||
        a.letters[s].element.rows() != b.letters[s].element.rows())
      return std::numeric_limits<double>::infinity();
    worst = std::max(worst, (a.letters[s].element - b.letters[s].element).norm());
  }
  return worst;
}

}  // namespace cmono
