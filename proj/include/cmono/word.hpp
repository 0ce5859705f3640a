#pragma once
// Indexed algebra families and alternating words in their free product.

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmono/algebra.hpp"

namespace cmono {

/// One algebra of a family together with its expectation onto B and an
/// optional second (scalar) state.
struct Member {
  int index = 0;
  AlgebraSpec algebra;
  CondExpSpec psi;
  std::optional<StateSpec> phi;
};

/// Finite totally ordered family over a common B (integer order on indices).
class Family {
 public:
  Family() = default;
  Family(AlgebraSpec b, std::vector<Member> members);

  const AlgebraSpec& b() const { return b_; }
  bool scalar_b() const { return b_.dim() == 1; }
  const Member& member(int index) const;
  bool has(int index) const { return members_.count(index) > 0; }
  const std::vector<int>& indices() const { return order_; }
  std::size_t size() const { return order_.size(); }

  /// Subfamily on the given indices.
  Family restrict_to(const std::vector<int>& indices) const;

  Mat embed(int index, const Mat& b) const { return member(index).psi.embed(b); }
  Mat psi(int index, const Mat& a) const { return member(index).psi(a); }

 private:
  AlgebraSpec b_;
  std::map<int, Member> members_;
  std::vector<int> order_;
};

/// Letter index reserved for a bare element of B sitting between letters.
inline constexpr int kAmalgam = std::numeric_limits<int>::min();

struct Letter {
  int index = 0;
  Mat element;
};

struct Word {
  cd coeff{1.0, 0.0};
  std::vector<Letter> letters;

  std::size_t length() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
};

/// Formal linear combination of words.
struct NCPoly {
  std::vector<Word> terms;
  /// Adds `w`, merging with a term that has the same letter sequence.
  void add(const Word& w);
};

/// Canonical form: merges same-index neighbours, absorbs bare B factors into
/// the left neighbour (the right one at the start of a word) and absorbs a
/// letter lying in B whose index exceeds all of its neighbours.
Word reduce(const Family& family, std::vector<Letter> letters, cd coeff = cd(1.0, 0.0));
Word reduce(const Family& family, const Word& w);

/// a = centered + iota(mean) with psi(centered) = 0.
std::pair<Letter, Mat> center(const Family& family, const Letter& l);

Word adjoint(const Family& family, const Word& w);
Word multiply(const Family& family, const Word& w1, const Word& w2);

/// Alternating word with uniformly drawn length in [1, max_len] and unit-norm
/// Gaussian letters.
Word sample_random_word(std::mt19937_64& rng, int max_len, const Family& family);
/// Random letters on a prescribed index pattern.
Word random_word_on(std::mt19937_64& rng, const std::vector<int>& pattern, const Family& family);

/// All alternating index sequences of length 1..max_len.
std::vector<std::vector<int>> alternating_patterns(const std::vector<int>& indices, int max_len);

/// Byte key identifying the letter sequence (coefficient excluded).
std::string word_key(const Word& w);

/// Letter-by-letter comparison: equal index sequences and element residual.
double word_distance(const Word& a, const Word& b);

}  // namespace cmono
