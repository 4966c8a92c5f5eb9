#pragma once

// JSON records for problem and result files. Every numeric value is an
// exact string ("3/2", "(z + 1)/(z^2 - 2)"); nothing is ever a float.
//
// Isotropy convention used by every isotropy verdict written here:
// the graph of beta is isotropic iff  t(beta) - beta = alpha  (symplectic,
// theta = f1(e2) - f2(e1) - f2(alpha f1)) or  t(beta) + beta = alpha
// (orthogonal, theta = f1(e2) + f2(e1) - f2(alpha f1)).

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "graphsub.hpp"
#include "text.hpp"

namespace symext {

using Json = nlohmann::json;

inline constexpr const char* kProblemFormat = "symext-problem/1";
inline constexpr const char* kResultFormat = "symext-result/1";
inline constexpr const char* kIsotropyConvention =
    "symplectic: isotropic iff t(beta) - beta = alpha; orthogonal: isotropic iff t(beta) + beta = alpha";

namespace detail {

[[noreturn]] inline void bad_record(const std::string& what) { fail(ErrorCode::ParseError, what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad_record(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) bad_record(std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad_record(std::string(what) + " must be an integer");
  return j.get<int>();
}

inline const Json& as_array(const Json& j, const char* what, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array()) bad_record(std::string(what) + " must be a list");
  if (size && j.size() != *size)
    bad_record(std::string(what) + " must have " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
  return j;
}

}  // namespace detail

inline Json rational_to_json(const Rational& r) { return to_string(r); }
inline Rational rational_from_json(const Json& j) { return parse_rational(detail::as_string(j, "rational")); }

inline Json ratfunc_to_json(const RatFunc& f) { return to_string(f); }
inline RatFunc ratfunc_from_json(const Json& j) { return parse_ratfunc(detail::as_string(j, "rational function")); }

inline Json bundle_to_json(const SplitBundle& b) { return b.degrees; }

inline SplitBundle bundle_from_json(const Json& j) {
  std::vector<int> d;
  for (const auto& v : detail::as_array(j, "bundle")) d.push_back(detail::as_int(v, "degree"));
  if (d.empty()) detail::bad_record("bundle must have positive rank");
  return SplitBundle(std::move(d));
}

inline Json point_to_json(const PointP1& x) { return to_string(x); }
inline PointP1 point_from_json(const Json& j) { return parse_point(detail::as_string(j, "point")); }

inline Json coeffs_to_json(const PolarCoeffs& c) {
  Json a = Json::array();
  for (const auto& v : c) a.push_back(to_string(v));
  return a;
}

inline PolarCoeffs coeffs_from_json(const Json& j) {
  PolarCoeffs c;
  for (const auto& v : detail::as_array(j, "coefficient list")) c.push_back(rational_from_json(v));
  return c;
}

/// Matrix of rational-function strings; rows are target components.
inline Json ratfunc_matrix_to_json(const Matrix<RatFunc>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix<RatFunc> ratfunc_matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  Matrix<RatFunc> m(rows, cols);
  detail::as_array(j, "matrix", rows);
  for (std::size_t i = 0; i < rows; ++i) {
    detail::as_array(j[i], "matrix row", cols);
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = ratfunc_from_json(j[i][c]);
  }
  return m;
}

inline Json hom_to_json(const RatHom& h) {
  return {{"source", bundle_to_json(h.source)}, {"target", bundle_to_json(h.target)}, {"entries", ratfunc_matrix_to_json(h.entries)}};
}

inline RatHom hom_entries_from_json(const Json& j, const SplitBundle& src, const SplitBundle& tgt) {
  return RatHom(src, tgt, ratfunc_matrix_from_json(j, tgt.rank(), src.rank()));
}

inline RatHom hom_from_json(const Json& j) {
  SplitBundle src = bundle_from_json(detail::field(j, "source")), tgt = bundle_from_json(detail::field(j, "target"));
  return hom_entries_from_json(detail::field(j, "entries"), src, tgt);
}

/// The list of records {point, matrix of coefficient lists}, in point order.
inline Json prin_parts_to_json(const PrinHom& p) {
  Json parts = Json::array();
  for (const auto& [x, m] : p.support) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(coeffs_to_json(m(i, j)));
      rows.push_back(std::move(row));
    }
    parts.push_back({{"point", point_to_json(x)}, {"matrix", std::move(rows)}});
  }
  return parts;
}

inline PrinHom prin_parts_from_json(const Json& j, const SplitBundle& src, const SplitBundle& tgt) {
  PrinHom p = PrinHom::zero(src, tgt);
  for (const auto& rec : detail::as_array(j, "principal part")) {
    PointP1 x = point_from_json(detail::field(rec, "point"));
    if (p.support.count(x)) detail::bad_record("point " + to_string(x) + " listed twice");
    const Json& rows = detail::as_array(detail::field(rec, "matrix"), "polar matrix", tgt.rank());
    for (std::size_t i = 0; i < tgt.rank(); ++i) {
      detail::as_array(rows[i], "polar matrix row", src.rank());
      for (std::size_t c = 0; c < src.rank(); ++c) p.set(x, i, c, coeffs_from_json(rows[i][c]));
    }
  }
  p.prune();
  return p;
}

inline Json prin_to_json(const PrinHom& p) {
  return {{"source", bundle_to_json(p.source)}, {"target", bundle_to_json(p.target)}, {"parts", prin_parts_to_json(p)}};
}

inline PrinHom prin_from_json(const Json& j) {
  return prin_parts_from_json(detail::field(j, "parts"), bundle_from_json(detail::field(j, "source")),
                              bundle_from_json(detail::field(j, "target")));
}

/// Map "i,j" -> coefficient vector, for entries that carry H^1.
inline Json class_to_json(const CohClass& c) {
  Json coeffs = Json::object();
  for (std::size_t i = 0; i < c.coeffs.rows(); ++i)
    for (std::size_t j = 0; j < c.coeffs.cols(); ++j)
      if (!c.coeffs(i, j).empty()) coeffs[std::to_string(i) + "," + std::to_string(j)] = coeffs_to_json(c.coeffs(i, j));
  return {{"source", bundle_to_json(c.source)}, {"target", bundle_to_json(c.target)}, {"coeffs", std::move(coeffs)}};
}

inline CohClass class_from_json(const Json& j) {
  CohClass c = CohClass::zero(bundle_from_json(detail::field(j, "source")), bundle_from_json(detail::field(j, "target")));
  const Json& coeffs = detail::field(j, "coeffs");
  if (!coeffs.is_object()) detail::bad_record("class coefficients must be a map");
  for (const auto& [key, value] : coeffs.items()) {
    std::size_t comma = key.find(',');
    if (comma == std::string::npos) detail::bad_record("bad entry index '" + key + "'");
    std::size_t i, jj;
    try {
      i = std::stoul(key.substr(0, comma));
      jj = std::stoul(key.substr(comma + 1));
    } catch (const std::exception&) {
      detail::bad_record("bad entry index '" + key + "'");
    }
    if (i >= c.coeffs.rows() || jj >= c.coeffs.cols()) detail::bad_record("entry index '" + key + "' out of range");
    PolarCoeffs v = coeffs_from_json(value);
    if (v.size() != c.coeffs(i, jj).size()) detail::bad_record("entry '" + key + "' has the wrong number of coefficients");
    c.coeffs(i, jj) = std::move(v);
  }
  return c;
}

inline Json extension_to_json(const ExtensionData& ext) {
  return {{"E", bundle_to_json(ext.E)}, {"L", ext.L.ell}, {"p", prin_parts_to_json(ext.p)}};
}

inline ExtensionData extension_from_json(const Json& j) {
  SplitBundle e = bundle_from_json(detail::field(j, "E"));
  LineTwist l{detail::as_int(detail::field(j, "L"), "L")};
  PrinHom p = j.contains("p") ? prin_parts_from_json(j.at("p"), dual_twisted(e, l), e) : PrinHom::zero(dual_twisted(e, l), e);
  return ExtensionData(e, l, p);
}

struct Certificate {
  std::string test;
  bool value = false;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

inline Json certificates_to_json(const std::vector<Certificate>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back({{"test", c.test}, {"value", c.value}});
  return a;
}

inline std::vector<Certificate> certificates_from_json(const Json& j) {
  std::vector<Certificate> out;
  for (const auto& c : detail::as_array(j, "certificates")) {
    const Json& v = detail::field(c, "value");
    if (!v.is_boolean()) detail::bad_record("certificate value must be a boolean");
    out.push_back({detail::as_string(detail::field(c, "test"), "certificate name"), v.get<bool>()});
  }
  return out;
}

inline Json graph_to_json(const GraphSubbundle& g, const std::vector<Certificate>& certificates = {}) {
  Json splitting = g.splitting;
  return {{"F", bundle_to_json(g.source)},
          {"E", bundle_to_json(g.target)},
          {"p", prin_parts_to_json(g.p)},
          {"beta", ratfunc_matrix_to_json(g.beta.entries)},
          {"q", prin_parts_to_json(g.q)},
          {"splitting", std::move(splitting)},
          {"degree", g.degree},
          {"certificates", certificates_to_json(certificates)}};
}

/// Rebuilds the subbundle from (p, beta) and checks the stored q, splitting
/// and degree against the recomputation.
inline GraphSubbundle graph_from_json(const Json& j, std::vector<Certificate>* certificates = nullptr) {
  SplitBundle f = bundle_from_json(detail::field(j, "F")), e = bundle_from_json(detail::field(j, "E"));
  PrinHom p = prin_parts_from_json(detail::field(j, "p"), f, e);
  RatHom beta = hom_entries_from_json(detail::field(j, "beta"), f, e);
  GraphSubbundle g = graph_subbundle(p, beta);
  if (j.contains("q") && !(prin_parts_from_json(j.at("q"), f, e) == g.q)) detail::bad_record("stored q disagrees with p - prin(beta)");
  if (j.contains("degree") && detail::as_int(j.at("degree"), "degree") != g.degree) detail::bad_record("stored degree disagrees");
  if (j.contains("splitting")) {
    std::vector<int> s;
    for (const auto& v : detail::as_array(j.at("splitting"), "splitting")) s.push_back(detail::as_int(v, "splitting entry"));
    if (s != g.splitting) detail::bad_record("stored splitting disagrees");
  }
  if (certificates) *certificates = j.contains("certificates") ? certificates_from_json(j.at("certificates")) : std::vector<Certificate>{};
  return g;
}

/// "points=0,1/2,inf;order=2;range=1;cap=64", every key optional.
inline SearchBounds parse_bounds(const std::string& spec, SearchBounds b = {}) {
  std::size_t start = 0;
  while (start < spec.size()) {
    std::size_t end = spec.find(';', start);
    if (end == std::string::npos) end = spec.size();
    std::string item = spec.substr(start, end - start);
    start = end + 1;
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) detail::bad_record("bounds item '" + item + "' needs key=value");
    std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    auto number = [&](long lo) {
      long v;
      try {
        std::size_t used = 0;
        v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        detail::bad_record("bounds value '" + value + "' is not an integer");
      }
      if (v < lo) detail::bad_record("bounds value for '" + key + "' must be >= " + std::to_string(lo));
      return v;
    };
    if (key == "points") {
      b.points.clear();
      std::size_t s = 0;
      while (s <= value.size()) {
        std::size_t e = value.find(',', s);
        if (e == std::string::npos) e = value.size();
        if (e > s) b.points.push_back(parse_point(value.substr(s, e - s)));
        s = e + 1;
      }
    } else if (key == "order") {
      b.max_order = static_cast<int>(number(0));
    } else if (key == "range") {
      b.coeff_range = number(0);
    } else if (key == "cap") {
      b.cap = static_cast<std::size_t>(number(1));
    } else {
      detail::bad_record("unknown bounds key '" + key + "'");
    }
  }
  return b;
}

inline Json bounds_to_json(const SearchBounds& b) {
  Json pts = Json::array();
  for (const auto& x : b.points) pts.push_back(point_to_json(x));
  return {{"points", std::move(pts)}, {"max_order", b.max_order}, {"coeff_range", b.coeff_range}, {"cap", b.cap}};
}

inline SearchBounds bounds_from_json(const Json& j) {
  SearchBounds b;
  if (!j.is_object()) detail::bad_record("bounds must be an object");
  if (j.contains("points"))
    for (const auto& x : detail::as_array(j.at("points"), "bounds points")) b.points.push_back(point_from_json(x));
  if (j.contains("max_order")) b.max_order = detail::as_int(j.at("max_order"), "max_order");
  if (j.contains("coeff_range")) b.coeff_range = detail::as_int(j.at("coeff_range"), "coeff_range");
  if (j.contains("cap")) b.cap = static_cast<std::size_t>(detail::as_int(j.at("cap"), "cap"));
  if (b.max_order < 0 || b.coeff_range < 0 || b.cap == 0) detail::bad_record("bounds out of range");
  return b;
}

/// A problem file: the extension plus whatever optional inputs a command needs.
struct Problem {
  FormKind kind = FormKind::Symplectic;
  ExtensionData ext;
  std::optional<RatHom> beta;
  std::optional<PrinHom> q;
  std::optional<SearchBounds> bounds;
};

inline Problem problem_from_json(const Json& j) {
  if (!j.is_object()) detail::bad_record("problem file must be an object");
  std::string fmt = detail::as_string(detail::field(j, "format"), "format");
  if (fmt != kProblemFormat) detail::bad_record("unrecognized format '" + fmt + "'");
  Problem pr;
  if (j.contains("kind")) pr.kind = parse_kind(detail::as_string(j.at("kind"), "kind"));
  pr.ext = extension_from_json(j);
  const SplitBundle f = pr.ext.F();
  if (j.contains("beta")) pr.beta = hom_entries_from_json(j.at("beta"), f, pr.ext.E);
  if (j.contains("q")) pr.q = prin_parts_from_json(j.at("q"), f, pr.ext.E);
  if (j.contains("bounds")) pr.bounds = bounds_from_json(j.at("bounds"));
  return pr;
}

inline Json problem_to_json(const Problem& pr) {
  Json j = extension_to_json(pr.ext);
  j["format"] = kProblemFormat;
  j["kind"] = to_string(pr.kind);
  if (pr.beta) j["beta"] = ratfunc_matrix_to_json(pr.beta->entries);
  if (pr.q) j["q"] = prin_parts_to_json(*pr.q);
  if (pr.bounds) j["bounds"] = bounds_to_json(*pr.bounds);
  return j;
}

inline Problem parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
  return problem_from_json(j);
}

/// Envelope for machine output.
inline Json result_envelope(const std::string& command) {
  return {{"format", kResultFormat}, {"command", command}, {"isotropy_convention", kIsotropyConvention}};
}

}  // namespace symext
