#pragma once

// File formats and report serialization. Exact values are serialized as
// "p" or "p/q" decimal strings, never as floats; float fields are advisory
// renderings and never feed a verdict.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "toricstab/approx.hpp"
#include "toricstab/chow.hpp"
#include "toricstab/relative.hpp"
#include "toricstab/version.hpp"

namespace toricstab {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// primitives

inline json rational_json(const Rational& q) { return to_string(q); }

inline json qvec_json(const QVec& v) {
  json arr = json::array();
  for (const auto& q : v) arr.push_back(to_string(q));
  return arr;
}

inline json qvec_float_json(const QVec& v) {
  json arr = json::array();
  for (const auto& q : v) arr.push_back(to_double(q));
  return arr;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write file: " + path);
  out << data;
}

// FNV-1a over the raw bytes, rendered as 16 hex digits.
inline std::string digest(const std::string& bytes) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int j = 15; j >= 0; --j) {
    out[j] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

// ---------------------------------------------------------------------------
// polytope files: { "dimension": n, "vertices": [["0","0"], ...] }

inline std::vector<IVec> parse_polytope_vertices(const json& j) {
  if (!j.is_object() || !j.contains("dimension") || !j.contains("vertices"))
    throw input_error("polytope file needs 'dimension' and 'vertices'");
  const int n = j.at("dimension").get<int>();
  if (n <= 0) throw input_error("dimension must be positive");
  std::vector<IVec> verts;
  for (const auto& row : j.at("vertices")) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw input_error("vertex arity does not match the dimension");
    IVec v;
    for (const auto& entry : row) {
      if (entry.is_string())
        v.push_back(parse_integer(entry.get<std::string>()));
      else if (entry.is_number_integer())
        v.push_back(Int(entry.get<long long>()));
      else
        throw input_error("vertex coordinates must be integers");
    }
    verts.push_back(std::move(v));
  }
  return verts;
}

inline std::vector<IVec> load_polytope_vertices(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw input_error("malformed JSON in " + path + ": " + e.what());
  }
  return parse_polytope_vertices(j);
}

inline json polytope_json(const DelzantPolytope& poly) {
  json j;
  j["dimension"] = poly.dim;
  json verts = json::array();
  for (const auto& v : poly.vertices) {
    json row = json::array();
    for (const auto& z : v) row.push_back(to_string(z));
    verts.push_back(row);
  }
  j["vertices"] = verts;
  return j;
}

// ---------------------------------------------------------------------------
// weight vector files:
// { "level": i, "values": [["x1", ..., "xn", "value"], ...] }

inline WeightVector parse_weight_vector(const json& j,
                                        const DelzantPolytope& poly) {
  if (!j.is_object() || !j.contains("level") || !j.contains("values"))
    throw input_error("weight file needs 'level' and 'values'");
  const int level = j.at("level").get<int>();
  if (level <= 0) throw input_error("level must be positive");
  const auto pts = lattice_points(poly, level);
  const std::size_t n = static_cast<std::size_t>(poly.dim);

  std::vector<std::pair<QVec, Rational>> entries;
  for (const auto& row : j.at("values")) {
    if (!row.is_array() || row.size() != n + 1)
      throw input_error("weight rows need n coordinates and one value");
    QVec x;
    for (std::size_t c = 0; c < n; ++c)
      x.push_back(parse_rational(row[c].get<std::string>()));
    entries.emplace_back(std::move(x),
                         parse_rational(row[n].get<std::string>()));
  }
  if (entries.size() != pts.size())
    throw input_error("weight vector does not cover A_i exactly");

  WeightVector wv;
  wv.level = level;
  for (const auto& p : pts) {
    const QVec x = p.q();
    bool found = false;
    for (const auto& [coords, value] : entries) {
      if (coords == x) {
        wv.values.push_back(value);
        found = true;
        break;
      }
    }
    if (!found)
      throw input_error("weight vector misses a lattice point of A_i");
  }
  return wv;
}

inline WeightVector load_weight_vector(const std::string& path,
                                       const DelzantPolytope& poly) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw input_error("malformed JSON in " + path + ": " + e.what());
  }
  return parse_weight_vector(j, poly);
}

inline json weight_vector_json(const DelzantPolytope& poly,
                               const WeightVector& wv) {
  const auto pts = lattice_points(poly, wv.level);
  json rows = json::array();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    json row = json::array();
    for (const auto& c : pts[j].q()) row.push_back(to_string(c));
    row.push_back(to_string(wv.values[j]));
    rows.push_back(row);
  }
  return json{{"level", wv.level}, {"values", rows}};
}

inline json concave_pl_json(const ConcavePL& g) {
  json cells = json::array();
  for (const auto& cell : g.cells) {
    json verts = json::array();
    for (int j : cell.corners) verts.push_back(qvec_json(g.points[j]));
    cells.push_back(json{{"vertices", verts},
                         {"gradient", qvec_json(cell.gradient)},
                         {"constant", to_string(cell.constant)}});
  }
  return json{{"level", g.level}, {"cells", cells}};
}

// ---------------------------------------------------------------------------
// reports

inline json stability_report_json(const DelzantPolytope& poly,
                                  const StabilityReport& rep) {
  json j;
  j["verdict"] = to_string(rep.verdict);
  j["level"] = rep.level;
  j["method"] = rep.method;
  j["obstruction"] = qvec_json(rep.obstruction);
  bool res_zero = true;
  for (const auto& r : rep.obstruction) res_zero = res_zero && r == 0;
  j["obstruction_zero"] = res_zero;
  if (rep.verdict == Verdict::semistable) {
    j["boundary"] = rep.boundary;
    json combo = json::array();
    for (const auto& [t, lam] : rep.combination) {
      json simplices = json::array();
      for (const auto& s : t.simplices) simplices.push_back(s);
      combo.push_back(
          json{{"lambda", to_string(lam)}, {"simplices", simplices}});
    }
    j["certificate"] = combo;
  } else if (rep.verdict == Verdict::unstable) {
    j["destabilizer"] = weight_vector_json(poly, rep.destabilizer);
    j["functional_value"] = to_string(rep.functional_value);
    j["functional_value_float"] = to_double(rep.functional_value);
    auto g = concave_envelope(poly, rep.destabilizer);
    j["destabilizer_pl"] = concave_pl_json(g);
  }
  return j;
}

inline json ehrhart_json(const EhrhartPolynomial& ep) {
  return json{{"coefficients", qvec_json(ep.coeffs)},
              {"coefficients_float", qvec_float_json(ep.coeffs)},
              {"pretty", ep.pretty()}};
}

inline json verify_report_json(const DelzantReport& rep) {
  json v = json::array();
  for (const auto& viol : rep.violations) {
    json vertex = json::array();
    for (const auto& z : viol.vertex) vertex.push_back(to_string(z));
    v.push_back(json{{"condition", viol.condition},
                     {"vertex", vertex},
                     {"detail", viol.detail}});
  }
  return json{{"pass", rep.pass}, {"violations", v}};
}

inline json profile_json(const AsymptoticProfile& prof) {
  json samples = json::array();
  for (const auto& [k, value] : prof.samples)
    samples.push_back(json{{"k", k},
                           {"value", to_string(value)},
                           {"value_float", to_double(value)}});
  return json{{"base_level", prof.base_level},
              {"samples", samples},
              {"limit", to_string(prof.limit)},
              {"limit_float", to_double(prof.limit)},
              {"fitted", to_string(prof.fitted)},
              {"c_bound", to_string(prof.c_bound)},
              {"bounded", prof.bounded}};
}

inline std::string profile_csv(const AsymptoticProfile& prof) {
  std::ostringstream out;
  out << "k,value,value_float\n";
  for (const auto& [k, value] : prof.samples)
    out << k << "," << to_string(value) << "," << to_double(value) << "\n";
  return out.str();
}

inline const char* to_string(LeadingSign s) {
  switch (s) {
    case LeadingSign::positive: return "positive";
    case LeadingSign::negative: return "negative";
    default: return "zero";
  }
}

// ---------------------------------------------------------------------------
// envelope

struct ReportEnvelope {
  std::string command;
  std::string input_digest;
  json payload;
  double wall_ms = 0;
  int exit_code = 0;

  json to_json() const {
    return json{{"tool", kToolName},       {"version", kVersion},
                {"command", command},      {"input_digest", input_digest},
                {"payload", payload},      {"wall_ms", wall_ms},
                {"exit_code", exit_code}};
  }
};

}  // namespace toricstab
