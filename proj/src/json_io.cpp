#include "qflag/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qflag/errors.hpp"

namespace qflag::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<int>();
}

double as_finite(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ParseError(std::string(what) + " must be finite");
  return x;
}

}  // namespace

json to_json(const Quaternion& q) { return json::array({q.re, q.im_i, q.im_j, q.im_k}); }

json to_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

json to_json(const Permutation& w) { return {{"one_line", w.one_line()}}; }

json to_json(const BruhatForm& f) {
  return {{"U", to_json(f.U)}, {"D", to_json(f.D)}, {"w", to_json(f.w)}, {"V", to_json(f.V)}};
}

json to_json(const IwasawaForm& f) {
  return {{"K", to_json(f.K)}, {"R", to_json(f.R)}, {"U", to_json(f.Uu)}};
}

json to_json(const LeafSignature& s) {
  json phases = json::array();
  for (const auto& p : s.phases) phases.push_back(to_json(p));
  return {{"w", s.w.one_line()}, {"phases", std::move(phases)}};
}

json to_json(const Multivector& p) {
  const auto& alg = SpAlgebra::get(p.n());
  json terms = json::array();
  for (const auto& [mask, c] : p.terms()) {
    json idx = json::array();
    for (int a : mask_positions(mask)) idx.push_back(alg.name(a));
    terms.push_back({{"idx", std::move(idx)}, {"c", c}});
  }
  return {{"n", p.n()}, {"grade", p.grade()}, {"terms", std::move(terms)}};
}

json to_json(const OrbitReport& r) {
  json j = {{"kind", "orbit_probe"}, {"n", r.n},       {"w", r.w.one_line()},
            {"phase_dev", r.phase_dev}, {"w_constant", r.w_constant},
            {"samples", r.samples},     {"seed", r.seed}};
  if (r.reconstruction_error) j["reconstruction_error"] = *r.reconstruction_error;
  return j;
}

Quaternion quaternion_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw ParseError("a quaternion is an array of 4 numbers");
  return {as_finite(j[0], "quaternion component"), as_finite(j[1], "quaternion component"),
          as_finite(j[2], "quaternion component"), as_finite(j[3], "quaternion component")};
}

QMatrix qmatrix_from_json(const json& j) {
  const int rows = as_int(field(j, "rows"), "rows");
  const int cols = as_int(field(j, "cols"), "cols");
  if (rows <= 0 || cols <= 0) throw ParseError("matrix dimensions must be positive");
  const json& entries = field(j, "entries");
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(rows)) {
    throw ParseError("entries must have one array per row");
  }
  QMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const json& row = entries[r];
    if (!row.is_array() || row.size() != m.cols()) throw ParseError("row length differs from cols");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = quaternion_from_json(row[c]);
  }
  return m;
}

Permutation permutation_from_json(const json& j) {
  const json& ol = field(j, "one_line");
  if (!ol.is_array()) throw ParseError("one_line must be an array");
  std::vector<int> v;
  for (const auto& x : ol) v.push_back(as_int(x, "one_line entry"));
  try {
    return Permutation(std::move(v));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

namespace {

Multivector multivector_from_json_impl(const json& j) {
  const int n = as_int(field(j, "n"), "n");
  const int grade = as_int(field(j, "grade"), "grade");
  if (n < 2 || n > SpAlgebra::kMaxN) throw ParseError("n out of range");
  const auto& alg = SpAlgebra::get(n);
  Multivector p(n, grade);
  const json& terms = field(j, "terms");
  if (!terms.is_array()) throw ParseError("terms must be an array");
  for (const auto& t : terms) {
    const json& idx = field(t, "idx");
    if (!idx.is_array() || idx.size() != static_cast<std::size_t>(grade)) {
      throw ParseError("each term needs grade-many indices");
    }
    std::vector<int> pos;
    for (const auto& name : idx) {
      if (!name.is_string()) throw ParseError("basis names must be strings");
      pos.push_back(alg.position(name.get<std::string>()));
    }
    p += Multivector::monomial(n, pos, as_finite(field(t, "c"), "c"));
  }
  return p;
}

}  // namespace

Multivector multivector_from_json(const json& j) {
  try {
    return multivector_from_json_impl(j);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace qflag::io
