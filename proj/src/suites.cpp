#include "cmono/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "cmono/bimodule_fock.hpp"
#include "cmono/cp_product.hpp"
#include "cmono/fock_scalar.hpp"
#include "cmono/moments.hpp"

namespace cmono {

namespace {

Mat scalar_mat(cd z) {
  Mat m(1, 1);
  m(0, 0) = z;
  return m;
}

// Worst value per label, reported as one case each.
class Tally {
 public:
  void residual(const std::string& id, double v) {
    auto [it, fresh] = worst_.emplace(id, v);
    if (!fresh) it->second = std::max(it->second, v);
    ++counts_[id];
  }
  void flush(VerificationReport& r, const std::string& anchor, double tol) const {
    for (const auto& [id, v] : worst_)
      r.add(id, anchor, v, tol, Metric::Residual, std::to_string(counts_.at(id)) + " samples");
  }

 private:
  std::map<std::string, double> worst_;
  std::map<std::string, int> counts_;
};

std::mt19937_64 stream(const SuiteOptions& opt, std::uint64_t tag) { return std::mt19937_64(derive_seed(opt.seed, tag)); }

MapFamily restrict_maps(const MapFamily& maps, const std::vector<int>& indices) {
  MapFamily out{maps.d, maps.b_embed, {}};
  for (int i : indices) out.theta.emplace(i, maps.theta.at(i));
  return out;
}

Word single(int index, const Mat& a) { return Word{cd(1.0, 0.0), {Letter{index, a}}}; }

Word slice(const Word& w, std::size_t from, std::size_t to) {
  Word out;
  out.letters.assign(w.letters.begin() + static_cast<std::ptrdiff_t>(from),
                     w.letters.begin() + static_cast<std::ptrdiff_t>(to));
  return out;
}

template <class F>
void guarded(VerificationReport& r, const std::string& id, const std::string& anchor, F&& body) {
  try {
    body();
  } catch (const std::exception& ex) {
    r.add_error(id, anchor, ex.what());
  }
}

}  // namespace

ScenarioSet load_scenarios(const SuiteOptions& opt) {
  ScenarioSet set{bundled_scenario("default.json"), bundled_scenario("default_diag.json"),
                  bundled_scenario("remark45.json"), bundled_scenario("nested_unital.json"),
                  bundled_scenario("nested_nonunital.json")};
  if (opt.scenario.empty()) return set;
  Scenario user = load_scenario(opt.scenario);
  if (user.nesting) {
    if (nested_is_unital(*user.nesting))
      set.nested_unital = std::move(user);
    else
      set.nested_nonunital = std::move(user);
  } else if (user.remark45) {
    set.remark45 = std::move(user);
  } else if (user.family.scalar_b()) {
    set.scalar = std::move(user);
  } else {
    set.diag = std::move(user);
  }
  return set;
}

VerificationReport check_scalar_fock(const Scenario& s, const SuiteOptions& opt, int max_len) {
  VerificationReport r;
  const std::string anchor = "monotone-moment-rules";
  guarded(r, "fock-scalar.model", anchor, [&] {
    const ScalarFockModel model(s.family);
    std::mt19937_64 rng = stream(opt, 11);
    Tally rule, split;
    for (const auto& pattern : alternating_patterns(s.family.indices(), max_len)) {
      const Word w = random_word_on(rng, pattern, s.family);
      const MomentRuleResidual res = moment_rule_residual(model, w);
      rule.residual("fock-scalar.rule." + res.pattern, res.rule);
      rule.residual("fock-scalar.recursive." + res.pattern, res.oracle);
      split.residual("fock-scalar.vacuum-split", vacuum_split_residual(model, w));
    }
    rule.flush(r, anchor, opt.tol);
    split.flush(r, "vacuum-split", opt.tol);

    // entrywise and isometry forms of omega_k agree
    const MonotoneFock& fock = model.fock();
    double omega = 0.0;
    for (int k : fock.indices()) {
      const Eigen::Index d = fock.local_dim(k);
      const Mat t = random_gaussian(rng, d, d);
      omega = std::max(omega, (fock.omega(k, t) - fock.omega_dense(k, t)).norm());
    }
    r.add("fock-scalar.omega", "fock-structure", omega, opt.tol);
  });
  return r;
}

VerificationReport check_bimodule_moments(const Scenario& s, const SuiteOptions& opt, int max_len) {
  VerificationReport r;
  const std::string anchor = "bimodule-moment-rules";
  guarded(r, "bimodule.moments", anchor, [&] {
    const ProductBimodule m = ProductBimodule::from_family(s.family, ProductKind::Monotone);
    std::mt19937_64 rng = stream(opt, 21);
    Tally t;
    for (const auto& pattern : alternating_patterns(s.family.indices(), max_len)) {
      const Word w = random_word_on(rng, pattern, s.family);
      const RuleResidual res = prop41_residual(m, s.family, w);
      t.residual("bimodule.rule." + res.pattern, res.rule);
      t.residual("bimodule.recursive." + res.pattern, res.oracle);
    }
    t.flush(r, anchor, opt.tol);
  });
  return r;
}

VerificationReport check_order_independence(const Scenario& scalar, const Scenario& diag, const SuiteOptions& opt,
                                            int n_words, int n_orders, int max_len) {
  VerificationReport r;
  const std::string anchor = "order-independence";
  std::mt19937_64 rng = stream(opt, 31);
  double cmono = 0.0, mono_c = 0.0, mono_b = 0.0, maps = 0.0;
  guarded(r, "moments.order", anchor, [&] {
    for (int k = 0; k < n_words; ++k) {
      const Word w = sample_random_word(rng, max_len, scalar.family);
      cmono = std::max(cmono, order_deviation(
                                  [&](const EvalOptions& o) { return scalar_mat(eval_cmonotone(scalar.family, w, o)); },
                                  n_orders, rng));
      mono_c = std::max(mono_c, order_deviation(
                                    [&](const EvalOptions& o) { return eval_monotone(scalar.family, w, o); },
                                    n_orders, rng));
      if (scalar.maps)
        maps = std::max(maps, order_deviation(
                                  [&](const EvalOptions& o) {
                                    return eval_map_product(scalar.family, *scalar.maps, w, o);
                                  },
                                  n_orders, rng));
      const Word wb = sample_random_word(rng, max_len, diag.family);
      mono_b = std::max(mono_b, order_deviation(
                                    [&](const EvalOptions& o) { return eval_monotone(diag.family, wb, o); },
                                    n_orders, rng));
    }
    r.add("moments.order.cmonotone", anchor, cmono, opt.tol);
    r.add("moments.order.monotone", anchor, mono_c, opt.tol);
    r.add("moments.order.monotone-bvalued", anchor, mono_b, opt.tol);
    if (scalar.maps) r.add("moments.order.map-product", anchor, maps, opt.tol);
  });

  guarded(r, "moments.associativity", "associativity", [&] {
    std::vector<std::pair<const Scenario*, MapFamily>> cases;
    if (scalar.maps) cases.emplace_back(&scalar, *scalar.maps);
    cases.emplace_back(&diag, psi_as_maps(diag.family));
    double worst = 0.0;
    for (const auto& [sc, mf] : cases) {
      const std::vector<int>& idx = sc->family.indices();
      std::vector<std::vector<std::vector<int>>> groupings;
      for (std::size_t cut = 1; cut < idx.size(); ++cut)
        groupings.push_back({std::vector<int>(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(cut)),
                             std::vector<int>(idx.begin() + static_cast<std::ptrdiff_t>(cut), idx.end())});
      for (int k = 0; k < n_words / 4; ++k) {
        const Word w = sample_random_word(rng, max_len, sc->family);
        const Mat flat = eval_map_product(sc->family, mf, w);
        for (const auto& g : groupings)
          worst = std::max(worst, b_norm(eval_map_product_grouped(sc->family, mf, w, g) - flat));
      }
    }
    r.add("moments.associativity", "associativity", worst, opt.tol);
  });
  return r;
}

VerificationReport check_cfree(const Scenario& s, const SuiteOptions& opt, int n_words) {
  VerificationReport r;
  guarded(r, "cp.cfree", "cfree-monot", [&] {
    if (!s.maps) throw Error(ErrorKind::Schema, "scenario has no \"thetas\"");
    const std::vector<int> pair(s.family.indices().begin(), s.family.indices().begin() + 2);
    const Family fam = s.family.restrict_to(pair);
    std::mt19937_64 rng = stream(opt, 41);
    VerificationReport sub = verify_cfree_monot(fam, restrict_maps(*s.maps, pair), rng, n_words, 6, opt.tol);
    for (CaseResult& c : sub.cases) c.id = "cp." + c.id;
    r.merge(sub);
  });
  return r;
}

VerificationReport check_cp_gram(const Scenario& s, const SuiteOptions& opt) {
  VerificationReport r;
  guarded(r, "cp.gram", "cp-gram", [&] {
    if (!s.maps) throw Error(ErrorKind::Schema, "scenario has no \"thetas\"");
    const MapFamily& maps = *s.maps;
    GramOptions g;
    g.rounds = opt.rounds;
    g.seed = derive_seed(opt.seed, 51);
    const GramResult pos = cp_check_gram(
        s.family, [&](const Word& w) { return eval_map_product(s.family, maps, w); }, g);
    r.add("cp.gram.product", "cp-gram", pos.min_eigenvalue, opt.eig_tol, Metric::MinEigenvalue,
          std::to_string(pos.per_round.size()) + " rounds");
    r.add("cp.gram.selfadjoint", "cp-gram", pos.asymmetry, opt.tol);

    // one factor replaced by the transpose, which is positive but not CP
    MapFamily bad = maps;
    const int victim = s.family.indices().at(s.family.size() > 1 ? 1 : 0);
    bad.theta.at(victim) = transpose_map(s.family.member(victim).algebra.dim());
    const GramResult neg = cp_check_gram(
        s.family, [&](const Word& w) { return eval_map_product(s.family, bad, w); }, g);
    r.add("cp.gram.transpose-control", "cp-gram", -neg.min_eigenvalue, 1e-3, Metric::LowerBound,
          "negated minimal eigenvalue");

    double choi = std::numeric_limits<double>::infinity();
    for (int i : s.family.indices()) choi = std::min(choi, cp_check_choi(s.family.member(i).algebra, maps.theta.at(i)));
    r.add("cp.choi.factors", "cp-choi", choi, opt.eig_tol, Metric::MinEigenvalue);
    const Eigen::Index d = s.family.member(victim).algebra.dim();
    r.add("cp.choi.transpose-control", "cp-choi",
          -cp_check_choi(AlgebraSpec::full_matrix(d), transpose_map(d)), 1e-3, Metric::LowerBound,
          "negated minimal eigenvalue");
  });
  return r;
}

VerificationReport check_peak_identity(const Scenario& s, const SuiteOptions& opt) {
  VerificationReport r;
  const std::string anchor = "peak-identity";
  guarded(r, "bimodule.peak", anchor, [&] {
    const ProductBimodule m = ProductBimodule::from_family(s.family, ProductKind::Monotone);
    const std::vector<int>& idx = s.family.indices();
    std::mt19937_64 rng = stream(opt, 61);
    constexpr int kSamples = 4;
    double peak = 0.0;
    double control = 0.0;
    int n_peak = 0;
    for (int k1 : idx)
      for (int k2 : idx)
        for (int k3 : idx) {
          if (k1 == k2 || k2 == k3) continue;
          const bool is_peak = k2 > k1 && k2 > k3;
          const bool is_valley = k2 < k1 && k2 < k3;
          if (!is_peak && !is_valley) continue;
          for (int t = 0; t < kSamples; ++t) {
            const Word w = random_word_on(rng, {k1, k2, k3}, s.family);
            if (is_peak) {
              const std::array<Letter, 3> l{w.letters[0], w.letters[1], w.letters[2]};
              peak = std::max(peak, remark42_identity_residual(m, s.family, l));
              ++n_peak;
            } else {
              Word v = w;
              v.letters[1] = Letter{kAmalgam, s.family.psi(k2, w.letters[1].element)};
              control = std::max(control, operator_norm(m.dense_word(w) - m.dense_word(v)));
            }
          }
        }
    r.add("bimodule.peak.identity", anchor, peak, opt.tol, Metric::Residual, std::to_string(n_peak) + " samples");
    r.add("bimodule.peak.valley-control", anchor, control, 1e-3, Metric::LowerBound);

    double restriction = 0.0;
    for (int k : idx)
      for (int l : idx) {
        if (k >= l) continue;
        const Letter a{k, s.family.member(k).algebra.random_element(rng)};
        const Letter b{l, s.family.member(l).algebra.random_element(rng)};
        restriction = std::max(restriction, remark42_restriction_residual(m, s.family, a, b));
      }
    r.add("bimodule.peak.restriction", anchor, restriction, opt.tol);
  });
  return r;
}

VerificationReport check_remark45(const Scenario& s, const SuiteOptions& opt) {
  VerificationReport r;
  const std::string anchor = "free-product-counterexample";
  guarded(r, "bimodule.free-counterexample", anchor, [&] {
    if (!s.remark45) throw Error(ErrorKind::Schema, "scenario has no \"remark45\"");
    const Remark45Result res = counterexample_remark45(s.family, *s.remark45);
    r.add("bimodule.free-counterexample.lhs", anchor, res.lhs_norm, 1e-10);
    r.add("bimodule.free-counterexample.rhs", anchor, res.rhs_norm, 1e-3, Metric::LowerBound);
    r.add("bimodule.free-counterexample.closed-form", anchor, std::abs(res.rhs_norm - res.predicted_norm), opt.tol);
    r.add("bimodule.free-counterexample.single-summand", anchor, std::abs(res.rhs_norm - res.component_norm),
          opt.tol, Metric::Residual, "the rhs vector lies in the first-index summand");
  });
  return r;
}

namespace {

// Conditional expectation checks for one family whose smallest index is i0.
void cond_exp_relations(VerificationReport& r, const Family& fam, const SuiteOptions& opt, int n_words,
                        std::mt19937_64& rng, const std::string& prefix) {
  const std::string anchor = "conditional-expectation";
  const int i0 = fam.indices().front();
  const ProductBimodule m = ProductBimodule::from_family(fam, ProductKind::Monotone);
  const CondExpPsi psi(m, fam, i0);
  auto Psi = [&](const Word& w) { return psi(m.dense_word(w), 1e-7); };

  double ident = 0.0, restr = 0.0, bimod = 0.0;
  for (int i : fam.indices()) {
    const Mat a = fam.member(i).algebra.random_element(rng);
    if (i == i0)
      ident = std::max(ident, (Psi(single(i, a)) - a).norm());
    else
      restr = std::max(restr, (Psi(single(i, a)) - fam.embed(i0, fam.psi(i, a))).norm());
  }
  r.add(prefix + ".identity", anchor, ident, opt.tol);
  if (fam.size() > 1) r.add(prefix + ".restriction", anchor, restr, opt.tol);

  std::vector<Word> words;
  for (const auto& p : alternating_patterns(fam.indices(), 4)) words.push_back(random_word_on(rng, p, fam));
  for (int k = 0; k < n_words; ++k) words.push_back(sample_random_word(rng, 6, fam));

  double first = 0.0, last = 0.0, peak = 0.0;
  int n_first = 0, n_last = 0, n_peak = 0;
  const AlgebraSpec& a0 = fam.member(i0).algebra;
  for (const Word& w : words) {
    const Mat x = Psi(w);
    {
      const Mat a = a0.random_element(rng);
      const Mat b = a0.random_element(rng);
      Word sandwiched = w;
      sandwiched.letters.insert(sandwiched.letters.begin(), Letter{i0, a});
      sandwiched.letters.push_back(Letter{i0, b});
      bimod = std::max(bimod, (Psi(sandwiched) - a * x * b).norm());
    }
    const std::size_t n = w.length();
    if (n < 2) continue;
    const auto& l = w.letters;
    if (l[0].index > l[1].index) {
      first = std::max(first, (x - Psi(slice(w, 0, 1)) * Psi(slice(w, 1, n)) * w.coeff).norm());
      ++n_first;
    }
    if (l[n - 1].index > l[n - 2].index) {
      last = std::max(last, (x - Psi(slice(w, 0, n - 1)) * Psi(slice(w, n - 1, n)) * w.coeff).norm());
      ++n_last;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (!(l[k].index > l[k - 1].index && l[k].index > l[k + 1].index)) continue;
      Word v = w;
      v.letters[k] = Letter{kAmalgam, fam.psi(l[k].index, l[k].element)};
      peak = std::max(peak, (x - Psi(v)).norm());
      ++n_peak;
    }
  }
  r.add(prefix + ".bimodule", anchor, bimod, opt.tol, Metric::Residual, std::to_string(words.size()) + " words");
  if (n_first) r.add(prefix + ".first-highest", anchor, first, opt.tol, Metric::Residual, std::to_string(n_first) + " words");
  if (n_last) r.add(prefix + ".last-highest", anchor, last, opt.tol, Metric::Residual, std::to_string(n_last) + " words");
  if (n_peak) r.add(prefix + ".interior-peak", anchor, peak, opt.tol, Metric::Residual, std::to_string(n_peak) + " peaks");
}

}  // namespace

VerificationReport check_cond_exp(const Scenario& s, const SuiteOptions& opt, int n_words) {
  VerificationReport r;
  std::mt19937_64 rng = stream(opt, 71);
  const std::vector<int>& idx = s.family.indices();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const std::string prefix = "bimodule.cond-exp.i0=" + std::to_string(idx[k]);
    guarded(r, prefix, "conditional-expectation", [&] {
      const Family sub = s.family.restrict_to(std::vector<int>(idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end()));
      cond_exp_relations(r, sub, opt, k == 0 ? n_words : n_words / 2, rng, prefix);
    });
  }
  return r;
}

VerificationReport check_induced(const Scenario& s, const SuiteOptions& opt, int n_words) {
  VerificationReport r;
  const std::string anchor = "induced-representation";
  guarded(r, "bimodule.induced", anchor, [&] {
    const Family& fam = s.family;
    const int i0 = fam.indices().front();
    const ProductBimodule m = ProductBimodule::from_family(fam, ProductKind::Monotone);
    const CondExpPsi psi(m, fam, i0);
    const InducedRepresentation ind(fam, i0);
    std::mt19937_64 rng = stream(opt, 81);
    double compress = 0.0, hom = 0.0;
    for (int k = 0; k < n_words; ++k) {
      const Word w = sample_random_word(rng, 5, fam);
      const Word u = sample_random_word(rng, 3, fam);
      const Mat x = ind.word(w);
      compress = std::max(compress, (x.topLeftCorner(ind.k_dim(), ind.k_dim()) - ind.rho(psi(m.dense_word(w)))).norm());
      const Word wu = multiply(fam, w, u);
      hom = std::max(hom, (ind.word(wu) - x * ind.word(u)).norm());
      const Word wa = adjoint(fam, w);
      hom = std::max(hom, (ind.word(wa) - Mat(x.adjoint())).norm());
    }
    r.add("bimodule.induced.compression", anchor, compress, opt.tol);
    r.add("bimodule.induced.homomorphism", anchor, hom, opt.tol);
  });
  return r;
}

VerificationReport check_free_product(const Scenario& s, const SuiteOptions& opt) {
  VerificationReport r;
  const std::string anchor = "free-product";
  guarded(r, "bimodule.free", anchor, [&] {
    const ProductBimodule mono = ProductBimodule::from_family(s.family, ProductKind::Monotone);
    const ProductBimodule free = ProductBimodule::from_family(s.family, ProductKind::Free, 5);
    std::mt19937_64 rng = stream(opt, 91);
    double restr = 0.0;
    for (int i : s.family.indices())
      for (int t = 0; t < 3; ++t)
        restr = std::max(restr, free_restriction_residual(free, mono, i, s.family.member(i).algebra.random_element(rng)));
    r.add("bimodule.free.restriction", anchor, restr, opt.tol);
    double mom = 0.0;
    for (int t = 0; t < 40; ++t) {
      const Word w = sample_random_word(rng, 5, s.family);
      mom = std::max(mom, b_norm(free.vacuum_expectation(w) - eval_monotone(s.family, w)));
    }
    r.add("bimodule.free.moments", anchor, mom, opt.tol, Metric::Residual, "40 words up to length 5");
    double rules = 0.0;
    int n_rules = 0;
    for (const auto& pattern : alternating_patterns(s.family.indices(), 4)) {
      const RuleResidual res = prop41_residual(free, s.family, random_word_on(rng, pattern, s.family));
      rules = std::max({rules, res.rule, res.oracle});
      ++n_rules;
    }
    r.add("bimodule.free.rules", anchor, rules, opt.tol, Metric::Residual, std::to_string(n_rules) + " patterns");
  });
  return r;
}

VerificationReport check_embedding(const Scenario& s, const SuiteOptions& opt, const std::string& label, int n_polys) {
  VerificationReport r;
  const std::string anchor = "product-embedding";
  const std::string prefix = "embedding.nested." + label;
  guarded(r, prefix, anchor, [&] {
    if (!s.nesting) throw Error(ErrorKind::Schema, "scenario has no \"nesting\"");
    std::mt19937_64 rng = stream(opt, 101);
    const EmbeddingResult e = verify_embedding_prop46(*s.nesting, rng, n_polys);
    const std::string note = std::to_string(e.polynomials) + " polynomials";
    if (e.padded) {
      std::ostringstream raw;
      raw << note << "; unpadded gap " << e.max_norm_gap;
      r.add(prefix + ".norm-gap-padded", anchor, e.padded_gap, 1e-7, Metric::Residual, raw.str());
    } else {
      r.add(prefix + ".norm-gap", anchor, e.max_norm_gap, 1e-7, Metric::Residual, note);
    }
    r.add(prefix + ".min-excess", anchor, e.min_excess, -1e-12, Metric::LowerBound);
    r.add(prefix + ".moments", anchor, e.moment_residual, opt.tol);
  });
  return r;
}

VerificationReport check_cp_embedding(const Scenario& s, const SuiteOptions& opt, int n_random) {
  VerificationReport r;
  const std::string anchor = "cp-map-between-products";
  guarded(r, "embedding.cp", anchor, [&] {
    const CpScenario cs = cp_scenario_from(s);
    const CpEmbedding emb(cs, opt.tol);
    const Family& a = cs.a;
    std::mt19937_64 rng = stream(opt, 111);

    double iso = 0.0, reduced_part = 0.0;
    for (int i : a.indices()) {
      const Mat& v = emb.v_factor(i);
      iso = std::max(iso, (v.adjoint() * v - Mat::Identity(v.cols(), v.cols())).norm());
      const BModule& fi = emb.f_factor(i);
      const BModule& ei = emb.e().factor(i);
      reduced_part = std::max(reduced_part, v.topRightCorner(fi.n_xi, ei.n_reduced()).norm());
    }
    const Mat& v = emb.v();
    iso = std::max(iso, (v.adjoint() * v - Mat::Identity(v.cols(), v.cols())).norm());
    r.add("embedding.cp.isometry", anchor, iso, opt.tol);
    r.add("embedding.cp.reduced-to-reduced", anchor, reduced_part, opt.tol);

    double restr = 0.0;
    for (int i : a.indices())
      for (int t = 0; t < 3; ++t) {
        const Mat x = a.member(i).algebra.random_element(rng);
        restr = std::max(restr, (emb.theta(single(i, x)) - emb.target_letter(i, x)).norm());
      }
    r.add("embedding.cp.restriction", anchor, restr, opt.tol);

    std::vector<Word> words;
    for (const auto& p : alternating_patterns(a.indices(), 4)) words.push_back(random_word_on(rng, p, a));
    for (int k = 0; k < n_random; ++k) words.push_back(sample_random_word(rng, 6, a));

    double state = 0.0, first = 0.0, last = 0.0, peak = 0.0;
    int n_first = 0, n_last = 0, n_peak = 0;
    for (const Word& w : words) {
      const Mat x = emb.theta(w);
      state = std::max(state, std::abs(x(0, 0) - eval_monotone(a, w)(0, 0)));
      const std::size_t n = w.length();
      if (n < 2) continue;
      const auto& l = w.letters;
      if (l[0].index > l[1].index) {
        first = std::max(first, (x - w.coeff * emb.theta(slice(w, 0, 1)) * emb.theta(slice(w, 1, n))).norm());
        ++n_first;
      }
      if (l[n - 1].index > l[n - 2].index) {
        last = std::max(last, (x - w.coeff * emb.theta(slice(w, 0, n - 1)) * emb.theta(slice(w, n - 1, n))).norm());
        ++n_last;
      }
      for (std::size_t k = 1; k + 1 < n; ++k) {
        if (!(l[k].index > l[k - 1].index && l[k].index > l[k + 1].index)) continue;
        const cd phi = a.psi(l[k].index, l[k].element)(0, 0);
        const Word merged = multiply(a, slice(w, 0, k), slice(w, k + 1, n));
        peak = std::max(peak, (x - w.coeff * phi * emb.theta(merged)).norm());
        ++n_peak;
      }
    }
    const std::string note = std::to_string(words.size()) + " words";
    r.add("embedding.cp.state", anchor, state, opt.tol, Metric::Residual, note);
    r.add("embedding.cp.first-highest", anchor, first, opt.tol, Metric::Residual, std::to_string(n_first) + " words");
    r.add("embedding.cp.last-highest", anchor, last, opt.tol, Metric::Residual, std::to_string(n_last) + " words");
    r.add("embedding.cp.interior-peak", anchor, peak, opt.tol, Metric::Residual, std::to_string(n_peak) + " peaks");

    GramOptions g;
    g.rounds = opt.rounds;
    g.seed = derive_seed(opt.seed, 112);
    const GramResult gram = cp_check_gram(a, [&](const Word& w) { return emb.theta(w); }, g);
    r.add("embedding.cp.gram", anchor, gram.min_eigenvalue, opt.eig_tol, Metric::MinEigenvalue,
          std::to_string(gram.per_round.size()) + " rounds");
  });
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"fock-scalar", "moments", "bimodule", "cp", "embedding", "all"};
  return names;
}

VerificationReport run_suite(const std::string& name, const ScenarioSet& set, const SuiteOptions& opt) {
  VerificationReport r;
  r.suite = name;
  r.seed = opt.seed;
  if (name == "fock-scalar") {
    r.merge(check_scalar_fock(set.scalar, opt));
  } else if (name == "moments") {
    r.merge(check_order_independence(set.scalar, set.diag, opt));
  } else if (name == "bimodule") {
    r.merge(check_bimodule_moments(set.diag, opt));
    r.merge(check_peak_identity(set.diag, opt));
    r.merge(check_remark45(set.remark45, opt));
    r.merge(check_cond_exp(set.diag, opt));
    r.merge(check_induced(set.diag, opt));
    r.merge(check_free_product(set.diag, opt));
  } else if (name == "cp") {
    r.merge(check_cfree(set.scalar, opt));
    r.merge(check_cp_gram(set.scalar, opt));
  } else if (name == "embedding") {
    r.merge(check_embedding(set.nested_unital, opt, "unital"));
    r.merge(check_embedding(set.nested_nonunital, opt, "nonunital"));
    r.merge(check_cp_embedding(set.scalar, opt));
  } else if (name == "all") {
    for (const std::string& n : suite_names())
      if (n != "all") r.merge(run_suite(n, set, opt));
  } else {
    throw Error(ErrorKind::Precondition, "unknown suite '" + name + "'");
  }
  return r;
}

}  // namespace cmono
