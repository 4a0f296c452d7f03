#pragma once

// Job-level front end shared by the command line tool and the tests.
// Exit codes: 0 semistable/pass, 1 unstable/fail, 2 inconclusive,
// 3 input error, 4 resource cap exceeded.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "toricstab/io.hpp"
#include "toricstab/search.hpp"

namespace toricstab {

struct JobSpec {
  std::string command;        // verify | ehrhart | chow | kstab | relative | scan
  std::string polytope_path;  // a directory for scan
  int level = 1;
  std::vector<int> levels;    // scan levels, defaults to {1}
  std::string weights_path;   // kstab: weight vector defining g
  int kmax = 32;
  int cap = -1;               // -1: use TORICSTAB_CAP or the default 16
  bool force_search = false;
  bool force_exact = false;
  std::string output_path;    // empty: stdout
  std::string format = "json";  // json | csv | text
  unsigned long long seed = 20240815ull;
};

inline int resolve_cap(const JobSpec& job) {
  if (job.cap >= 0) return job.cap;
  if (const char* env = std::getenv("TORICSTAB_CAP")) {
    try {
      return std::max(0, std::stoi(env));
    } catch (const std::exception&) {
      throw input_error("TORICSTAB_CAP is not an integer");
    }
  }
  return 16;
}

namespace detail {

inline json kstab_entry(const DelzantPolytope& poly, const std::string& name,
                        const ConcavePL& g, int kmax) {
  const Rational lead = p_leading(poly, g);
  const auto verdict = classify_leading(lead);
  auto prof = p_leading_check(poly, g.level, g, kmax);
  json entry;
  entry["name"] = name;
  entry["level"] = g.level;
  entry["leading"] = to_string(lead);
  entry["leading_float"] = to_double(lead);
  entry["sign"] = to_string(verdict.sign);
  entry["donaldson"] = to_string(donaldson_functional(poly, negation_of(g)));
  entry["profile"] = profile_json(prof);
  return entry;
}

inline std::string scan_csv(const json& rows) {
  std::ostringstream out;
  out << "file,delzant,level,points,obstruction,obstruction_zero,chow,error\n";
  for (const auto& row : rows) {
    auto field = [&](const char* key) -> std::string {
      if (!row.contains(key)) return "";
      const auto& v = row.at(key);
      if (v.is_string()) return v.get<std::string>();
      if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
      if (v.is_number_integer()) return std::to_string(v.get<long long>());
      return v.dump();
    };
    std::string obstruction;
    if (row.contains("obstruction")) {
      for (const auto& c : row.at("obstruction")) {
        if (!obstruction.empty()) obstruction += " ";
        obstruction += c.get<std::string>();
      }
    }
    out << field("file") << "," << field("delzant") << "," << field("level")
        << "," << field("points") << "," << obstruction << ","
        << field("obstruction_zero") << "," << field("chow") << ","
        << field("error") << "\n";
  }
  return out.str();
}

}  // namespace detail

inline ReportEnvelope run(const JobSpec& job) {
  const auto start = std::chrono::steady_clock::now();
  ReportEnvelope env;
  env.command = job.command;
  const int cap = resolve_cap(job);

  if (job.command == "verify") {
    const std::string bytes = read_file(job.polytope_path);
    env.input_digest = digest(bytes);
    auto verts = parse_polytope_vertices(json::parse(bytes));
    auto rep = verify_delzant(verts);
    env.payload = verify_report_json(rep);
    env.exit_code = rep.pass ? 0 : 1;
  } else if (job.command == "ehrhart") {
    const std::string bytes = read_file(job.polytope_path);
    env.input_digest = digest(bytes);
    auto poly = make_delzant(parse_polytope_vertices(json::parse(bytes)));
    auto ep = ehrhart(poly);
    auto bm = boundary_volume(poly);
    env.payload = ehrhart_json(ep);
    env.payload["volume"] = to_string(volume(poly));
    env.payload["boundary_volume"] = to_string(bm.total);
    env.payload["facet_measures"] = qvec_json(bm.per_facet);
    env.exit_code = 0;
  } else if (job.command == "chow") {
    if (job.force_exact && job.force_search)
      throw input_error("choose one of --exact and --search");
    const std::string bytes = read_file(job.polytope_path);
    env.input_digest = digest(bytes);
    auto poly = make_delzant(parse_polytope_vertices(json::parse(bytes)));
    StabilityReport rep;
    if (job.force_search) {
      SearchBudget budget;
      budget.seed = job.seed;
      rep = destabilizer_search(poly, job.level, budget);
    } else {
      rep = decide_chow(poly, job.level, cap);
    }
    env.payload = stability_report_json(poly, rep);
    env.exit_code = rep.verdict == Verdict::semistable ? 0
                    : rep.verdict == Verdict::unstable ? 1
                                                       : 2;
  } else if (job.command == "kstab") {
    const std::string bytes = read_file(job.polytope_path);
    env.input_digest = digest(bytes);
    auto poly = make_delzant(parse_polytope_vertices(json::parse(bytes)));
    std::vector<std::pair<std::string, ConcavePL>> family;
    if (!job.weights_path.empty()) {
      auto wv = load_weight_vector(job.weights_path, poly);
      family.emplace_back("user:g", concave_envelope(poly, wv));
    } else {
      family = standard_test_family(poly);
    }
    json entries = json::array();
    bool any_negative = false;
    for (const auto& [name, g] : family) {
      json e = detail::kstab_entry(poly, name, g, job.kmax);
      any_negative = any_negative || e.at("sign") == "negative";
      entries.push_back(std::move(e));
    }
    env.payload = json{{"functions", entries},
                       {"k_unstable_witness", any_negative}};
    env.exit_code = any_negative ? 1 : 0;
  } else if (job.command == "relative") {
    const std::string bytes = read_file(job.polytope_path);
    env.input_digest = digest(bytes);
    auto poly = make_delzant(parse_polytope_vertices(json::parse(bytes)));
    auto theta = extremal_affine(poly);
    auto rep = decide_relative_chow(poly, job.level, cap);
    env.payload = stability_report_json(poly, rep);
    env.payload["theta"] = json{{"gradient", qvec_json(theta.gradient)},
                                {"gradient_float",
                                 qvec_float_json(theta.gradient)},
                                {"constant", to_string(theta.constant)}};
    env.exit_code = rep.verdict == Verdict::semistable ? 0
                    : rep.verdict == Verdict::unstable ? 1
                                                       : 2;
  } else if (job.command == "scan") {
    namespace fs = std::filesystem;
    if (!fs::is_directory(job.polytope_path))
      throw input_error("scan expects a directory: " + job.polytope_path);
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(job.polytope_path))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    std::vector<int> levels = job.levels.empty() ? std::vector<int>{1}
                                                 : job.levels;
    json rows = json::array();
    std::string all_bytes;
    for (const auto& file : files) {
      const std::string name = fs::path(file).filename().string();
      try {
        const std::string bytes = read_file(file);
        all_bytes += bytes;
        auto verts = parse_polytope_vertices(json::parse(bytes));
        auto verdict = verify_delzant(verts);
        if (!verdict.pass) {
          rows.push_back(json{{"file", name}, {"delzant", false}});
          continue;
        }
        auto poly = make_delzant(verts);
        for (int lev : levels) {
          json row;
          row["file"] = name;
          row["delzant"] = true;
          row["level"] = lev;
          row["points"] =
              static_cast<long long>(lattice_points(poly, lev).size());
          const QVec res = linear_obstruction(poly, lev);
          row["obstruction"] = qvec_json(res);
          bool zero = true;
          for (const auto& r : res) zero = zero && r == 0;
          row["obstruction_zero"] = zero;
          try {
            row["chow"] = to_string(decide_chow(poly, lev, cap).verdict);
          } catch (const resource_error&) {
            row["chow"] = "skipped:cap";
          }
          rows.push_back(std::move(row));
        }
      } catch (const error& e) {
        rows.push_back(json{{"file", name}, {"error", e.what()}});
      } catch (const json::exception& e) {
        rows.push_back(
            json{{"file", name}, {"error", std::string("bad JSON: ") + e.what()}});
      }
    }
    env.input_digest = digest(all_bytes);
    env.payload = json{{"rows", rows},
                       {"files", static_cast<long long>(files.size())}};
    env.exit_code = 0;
  } else {
    throw input_error("unknown command: " + job.command);
  }

  const auto stop = std::chrono::steady_clock::now();
  env.wall_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return env;
}

// Renders the envelope in the requested format.
inline std::string render(const ReportEnvelope& env, const JobSpec& job) {
  if (job.format == "json") return env.to_json().dump(2) + "\n";
  if (job.format == "csv") {
    if (job.command == "scan") return detail::scan_csv(env.payload.at("rows"));
    if (job.command == "kstab") {
      const auto& fns = env.payload.at("functions");
      if (fns.size() == 1)
        return "k,value,value_float\n" +
               [&] {
                 std::ostringstream out;
                 for (const auto& s : fns[0].at("profile").at("samples"))
                   out << s.at("k").get<int>() << ","
                       << s.at("value").get<std::string>() << ","
                       << s.at("value_float").get<double>() << "\n";
                 return out.str();
               }();
      std::ostringstream out;
      out << "name,leading,leading_float,sign\n";
      for (const auto& f : fns)
        out << f.at("name").get<std::string>() << ","
            << f.at("leading").get<std::string>() << ","
            << f.at("leading_float").get<double>() << ","
            << f.at("sign").get<std::string>() << "\n";
      return out.str();
    }
    throw input_error("csv format is available for scan and kstab");
  }
  if (job.format == "text") {
    std::ostringstream out;
    out << env.command;
    if (env.payload.contains("verdict"))
      out << ": " << env.payload.at("verdict").get<std::string>();
    else if (env.payload.contains("pass"))
      out << ": " << (env.payload.at("pass").get<bool>() ? "pass" : "fail");
    else if (env.payload.contains("pretty"))
      out << ": " << env.payload.at("pretty").get<std::string>();
    else if (env.payload.contains("k_unstable_witness"))
      out << ": "
          << (env.payload.at("k_unstable_witness").get<bool>()
                  ? "k-unstable witness found"
                  : "no witness in the family");
    else if (env.payload.contains("files"))
      out << ": " << env.payload.at("files").get<long long>() << " files";
    out << " (exit " << env.exit_code << ")\n";
    return out.str();
  }
  throw input_error("unknown format: " + job.format);
}

}  // namespace toricstab
