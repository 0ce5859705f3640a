#include "cmono/scenario.hpp"

#include <fstream>
#include <sstream>

#ifndef CMONO_SCENARIO_DIR
#define CMONO_SCENARIO_DIR "scenarios"
#endif

namespace cmono {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::Schema, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) schema(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<Eigen::Index> block_sizes(const json& j) {
  const json& b = field(j, "blocks");
  if (!b.is_array() || b.empty()) schema("\"blocks\" must be a non-empty array");
  std::vector<Eigen::Index> out;
  for (const json& x : b) {
    if (!x.is_number_integer() || x.get<int>() < 1) schema("block sizes must be positive integers");
    out.push_back(x.get<int>());
  }
  return out;
}

Eigen::Index dim_field(const json& j, Eigen::Index fallback) {
  if (!j.contains("dim")) return fallback;
  const int d = int_field(j, "dim");
  if (d < 1) schema("\"dim\" must be positive");
  return d;
}

/// psi(X) = sum_k tr(rho_k X_kk) 1_{n_k}, block diagonal.
LinearMap block_state_map(const std::vector<Mat>& rhos, Eigen::Index d) {
  return LinearMap::from_function(d, d, [&](const Mat& x) {
    Mat out = Mat::Zero(d, d);
    Eigen::Index off = 0;
    for (const Mat& rho : rhos) {
      const Eigen::Index n = rho.rows();
      const StateSpec s(rho);
      out.block(off, off, n, n) = s(Mat(x.block(off, off, n, n))) * Mat::Identity(n, n);
      off += n;
    }
    return out;
  });
}

LinearMap b_embedding(const AlgebraSpec& b, Eigen::Index d) {
  if (b.dim() == d) return LinearMap::identity(d);
  if (b.dim() == 1)
    return LinearMap::from_function(1, d, [d](const Mat& x) { return Mat(x(0, 0) * Mat::Identity(d, d)); });
  schema("B must be 1x1 or share the ambient size of each algebra");
}

CondExpSpec psi_from_json(const json& j, const AlgebraSpec& a, const AlgebraSpec& b) {
  const Eigen::Index d = a.dim();
  if (j.is_array()) {
    const Mat rho = matrix_from_json(j);
    if (b.dim() == 1) return CondExpSpec::from_state(a, StateSpec(rho));
    if (rho.rows() != d) throw Error(ErrorKind::ShapeMismatch, "state size");
    return CondExpSpec(a, b, b_embedding(b, d), block_state_map({rho}, d));
  }
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "diagonal") return CondExpSpec(a, b, b_embedding(b, d), CondExpSpec::diagonal_compression(a).map());
  if (kind == "block_states") {
    std::vector<Mat> rhos;
    Eigen::Index total = 0;
    for (const json& r : field(j, "blocks")) {
      rhos.push_back(matrix_from_json(r));
      StateSpec check(rhos.back());
      total += rhos.back().rows();
    }
    if (total != d) throw Error(ErrorKind::ShapeMismatch, "block states do not cover the algebra");
    if (b.dim() == 1) {
      if (rhos.size() != 1) schema("several block states need a matrix B");
      return CondExpSpec::from_state(a, StateSpec(rhos.front()));
    }
    return CondExpSpec(a, b, b_embedding(b, d), block_state_map(rhos, d));
  }
  schema("unknown psi kind \"" + kind + "\"");
}

std::vector<Member> members_from_json(const json& list, const AlgebraSpec& b, bool need_psi) {
  if (!list.is_array() || list.empty()) schema("\"algebras\" must be a non-empty array");
  std::vector<Member> members;
  for (const json& m : list) {
    Member mem;
    mem.index = int_field(m, "index");
    mem.algebra = algebra_from_json(field(m, "basis"));
    if (need_psi || m.contains("psi")) mem.psi = psi_from_json(field(m, "psi"), mem.algebra, b);
    if (m.contains("phi")) {
      mem.phi = StateSpec(matrix_from_json(m.at("phi")));
      if (mem.phi->density().rows() != mem.algebra.dim()) throw Error(ErrorKind::ShapeMismatch, "phi size");
    }
    members.push_back(std::move(mem));
  }
  return members;
}

LinearMap kraus_sum(std::vector<Mat> kraus, Eigen::Index in_dim, Eigen::Index out_dim) {
  for (const Mat& k : kraus)
    if (k.rows() != out_dim || k.cols() != in_dim) throw Error(ErrorKind::ShapeMismatch, "Kraus operator size");
  return LinearMap::from_function(in_dim, out_dim, [&](const Mat& a) {
    Mat out = Mat::Zero(out_dim, out_dim);
    for (const Mat& k : kraus) out += k * a * k.adjoint();
    return out;
  });
}

}  // namespace

json complex_to_json(cd z) { return json::array({z.real(), z.imag()}); }

cd complex_from_json(const json& j) {
  if (j.is_number()) return cd(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    schema("complex numbers are [re, im] pairs");
  return cd(j[0].get<double>(), j[1].get<double>());
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) schema("matrices are non-empty arrays of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  if (cols == 0) schema("matrix rows must be non-empty");
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) schema("ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

AlgebraSpec algebra_from_json(const json& j) {
  if (j.is_array()) {
    std::vector<Mat> basis;
    for (const json& x : j) basis.push_back(matrix_from_json(x));
    if (basis.empty()) schema("empty basis");
    return AlgebraSpec(std::move(basis));
  }
  if (j.is_object() && j.contains("basis")) return algebra_from_json(j.at("basis"));
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "scalars") return AlgebraSpec::scalars(dim_field(j, 1));
  if (kind == "full") return AlgebraSpec::full_matrix(dim_field(j, 1));
  if (kind == "diagonal") return AlgebraSpec::diagonal(dim_field(j, 1));
  if (kind == "block_full" || kind == "block_scalars") {
    const auto sizes = block_sizes(j);
    AlgebraSpec out;
    bool first = true;
    for (Eigen::Index n : sizes) {
      const AlgebraSpec part = kind == "block_full" ? AlgebraSpec::full_matrix(n) : AlgebraSpec::scalars(n);
      out = first ? part : AlgebraSpec::direct_sum(out, part);
      first = false;
    }
    return out;
  }
  schema("unknown algebra kind \"" + kind + "\"");
}

LinearMap kraus_map_from_json(const json& j, Eigen::Index in_dim, Eigen::Index out_dim) {
  if (!j.is_object() || !j.contains("kraus")) {
    if (in_dim != out_dim) schema("identity map needs equal sizes");
    return LinearMap::identity(in_dim);
  }
  std::vector<Mat> kraus;
  for (const json& k : j.at("kraus")) kraus.push_back(matrix_from_json(k));
  if (kraus.empty()) schema("empty Kraus list");
  return kraus_sum(std::move(kraus), in_dim, out_dim);
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) schema("scenario must be a JSON object");
  Scenario s;
  const AlgebraSpec b = algebra_from_json(field(j, "B"));
  s.family = Family(b, members_from_json(field(j, "algebras"), b, true));

  if (j.contains("thetas")) {
    const json& t = j.at("thetas");
    MapFamily maps;
    maps.d = algebra_from_json(field(t, "target"));
    maps.b_embed = b_embedding(b, maps.d.dim());
    for (const json& m : field(t, "maps")) {
      const int idx = int_field(m, "index");
      if (!s.family.has(idx)) throw Error(ErrorKind::UnknownIndex, "theta for index " + std::to_string(idx));
      maps.theta.emplace(idx, kraus_map_from_json(m, s.family.member(idx).algebra.dim(), maps.d.dim()));
    }
    for (int i : s.family.indices())
      if (!maps.theta.count(i)) schema("thetas: no map for index " + std::to_string(i));
    s.maps = std::move(maps);
  }

  if (j.contains("remark45")) {
    const json& letters = field(j.at("remark45"), "letters");
    if (!letters.is_array() || letters.size() != 3) schema("remark45 needs three letters");
    std::array<Letter, 3> out;
    for (std::size_t k = 0; k < 3; ++k) {
      out[k].index = int_field(letters[k], "index");
      if (!s.family.has(out[k].index)) throw Error(ErrorKind::UnknownIndex, "remark45 letter index");
      out[k].element = matrix_from_json(field(letters[k], "element"));
    }
    s.remark45 = out;
  }

  if (j.contains("nesting")) {
    const json& n = j.at("nesting");
    NestedScenario ns;
    ns.small = s.family;
    const AlgebraSpec bt = algebra_from_json(field(j, "Btilde"));
    ns.tilde = Family(bt, members_from_json(field(n, "algebras"), bt, true));
    if (ns.tilde.indices() != ns.small.indices()) schema("nesting must use the same indices");
    ns.iota = kraus_map_from_json(n.contains("iota") ? n.at("iota") : json::object(), b.dim(), bt.dim());
    std::map<int, json> kappas;
    if (n.contains("kappa"))
      for (const json& k : n.at("kappa")) kappas[int_field(k, "index")] = k;
    for (int i : ns.small.indices()) {
      const json k = kappas.count(i) ? kappas.at(i) : json::object();
      ns.kappa.emplace(i, kraus_map_from_json(k, ns.small.member(i).algebra.dim(),
                                              ns.tilde.member(i).algebra.dim()));
    }
    s.nesting = std::move(ns);
  }
  return s;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    schema(path + ": " + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  try {
    return scenario_from_json(load_json_file(path));
  } catch (const json::exception& e) {
    schema(path + ": " + e.what());
  }
}

json word_to_json(const Word& w) {
  json letters = json::array();
  for (const Letter& l : w.letters) {
    json x;
    if (l.index == kAmalgam)
      x["index"] = "B";
    else
      x["index"] = l.index;
    x["element"] = matrix_to_json(l.element);
    letters.push_back(std::move(x));
  }
  return json{{"coeff", complex_to_json(w.coeff)}, {"letters", std::move(letters)}};
}

Word word_from_json(const json& j) {
  if (!j.is_object()) schema("word must be a JSON object");
  Word w;
  if (j.contains("coeff")) w.coeff = complex_from_json(j.at("coeff"));
  const json& letters = field(j, "letters");
  if (!letters.is_array()) schema("\"letters\" must be an array");
  for (const json& x : letters) {
    Letter l;
    const json& idx = field(x, "index");
    if (idx.is_string() && idx.get<std::string>() == "B")
      l.index = kAmalgam;
    else if (idx.is_number_integer())
      l.index = idx.get<int>();
    else
      schema("letter index must be an integer or \"B\"");
    l.element = matrix_from_json(field(x, "element"));
    w.letters.push_back(std::move(l));
  }
  return w;
}

std::string bundled_scenario_path(const std::string& name) { return std::string(CMONO_SCENARIO_DIR) + "/" + name; }

Scenario bundled_scenario(const std::string& name) { return load_scenario(bundled_scenario_path(name)); }

CpScenario cp_scenario_from(const Scenario& s) {
  if (!s.maps) schema("scenario has no \"thetas\"");
  if (!s.family.scalar_b()) throw Error(ErrorKind::ContextMismatch, "CP embedding needs B = C");
  const MapFamily& maps = *s.maps;
  auto density_of = [](Eigen::Index d, const std::function<cd(const Mat&)>& f) {
    Mat rho(d, d);
    for (Eigen::Index p = 0; p < d; ++p)
      for (Eigen::Index q = 0; q < d; ++q) {
        Mat e = Mat::Zero(d, d);
        e(q, p) = 1.0;
        rho(p, q) = f(e);
      }
    return rho;
  };
  std::vector<Member> a_members;
  std::vector<Member> d_members;
  for (int i : s.family.indices()) {
    const Member& m = s.family.member(i);
    if (m.algebra.dim() != maps.d.dim())
      throw Error(ErrorKind::ShapeMismatch, "the target of theta_i must have the size of A_i");
    // psi_i of the scenario moves to D_i; A_i carries phi_i = psi_i o theta_i.
    const StateSpec psi_d(density_of(maps.d.dim(), [&](const Mat& x) { return m.psi(x)(0, 0); }));
    Member d;
    d.index = i;
    d.algebra = maps.d;
    d.psi = CondExpSpec::from_state(maps.d, psi_d);
    d.phi = psi_d;
    const LinearMap& th = maps.theta.at(i);
    const StateSpec phi_a(density_of(m.algebra.dim(), [&](const Mat& x) { return d.psi(th(x))(0, 0); }));
    Member a;
    a.index = i;
    a.algebra = m.algebra;
    a.psi = CondExpSpec::from_state(m.algebra, phi_a);
    a.phi = phi_a;
    a_members.push_back(std::move(a));
    d_members.push_back(std::move(d));
  }
  CpScenario out;
  out.a = Family(s.family.b(), std::move(a_members));
  out.d = Family(s.family.b(), std::move(d_members));
  out.theta = maps.theta;
  return out;
}

}  // namespace cmono
