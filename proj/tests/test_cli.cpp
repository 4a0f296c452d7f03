#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "toricstab/cli.hpp"

using namespace toricstab;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = TORICSTAB_FIXTURES_DIR;

JobSpec job_for(const std::string& command, const std::string& file) {
  JobSpec job;
  job.command = command;
  job.polytope_path = kFixtures + "/" + file;
  return job;
}

}  // namespace

TEST_CASE("verify command on the corpus") {
  auto ok = run(job_for("verify", "unit_square.json"));
  CHECK(ok.exit_code == 0);
  CHECK(ok.payload.at("pass").get<bool>());

  auto bad = run(job_for("verify", "nonsmooth_triangle.json"));
  CHECK(bad.exit_code == 1);
  CHECK_FALSE(bad.payload.at("pass").get<bool>());
  CHECK(bad.payload.at("violations")[0].at("condition").get<int>() == 3);
}

TEST_CASE("ehrhart command output") {
  auto env = run(job_for("ehrhart", "unit_simplex2.json"));
  CHECK(env.exit_code == 0);
  CHECK(env.payload.at("pretty").get<std::string>() == "1/2 t^2 + 3/2 t + 1");
  CHECK(env.payload.at("volume").get<std::string>() == "1/2");
  CHECK(env.payload.at("boundary_volume").get<std::string>() == "3");
}

TEST_CASE("chow command verdicts and exit codes") {
  auto semi = job_for("chow", "unit_square.json");
  semi.level = 1;
  auto rs = run(semi);
  CHECK(rs.exit_code == 0);
  CHECK(rs.payload.at("verdict").get<std::string>() == "semistable");

  auto unstable = job_for("chow", "blowup_trapezoid.json");
  unstable.level = 1;
  auto ru = run(unstable);
  CHECK(ru.exit_code == 1);
  CHECK(ru.payload.at("verdict").get<std::string>() == "unstable");
  CHECK_FALSE(ru.payload.at("obstruction_zero").get<bool>());

  auto search = job_for("chow", "unit_square.json");
  search.level = 1;
  search.force_search = true;
  auto rq = run(search);
  CHECK(rq.exit_code == 2);
  CHECK(rq.payload.at("verdict").get<std::string>() == "inconclusive");
}

TEST_CASE("kstab command with the generated family") {
  auto job = job_for("kstab", "unit_square.json");
  job.kmax = 6;
  auto env = run(job);
  CHECK(env.exit_code == 0);
  CHECK_FALSE(env.payload.at("k_unstable_witness").get<bool>());
  CHECK(env.payload.at("functions").size() == 8);
}

TEST_CASE("kstab command with a user weight vector") {
  // tent over [0,2]
  const std::string wpath = fs::temp_directory_path() / "tent02.json";
  write_file(wpath, R"({"level": 1,
    "values": [["0","0"],["1","1"],["2","0"]]})");
  auto job = job_for("kstab", "interval_0_2.json");
  job.weights_path = wpath;
  job.kmax = 8;
  auto env = run(job);
  CHECK(env.exit_code == 0);
  const auto& fn = env.payload.at("functions")[0];
  CHECK(fn.at("leading").get<std::string>() == "1");
  CHECK(fn.at("sign").get<std::string>() == "positive");
  // all sweep samples of the tent are exactly 1
  for (const auto& s : fn.at("profile").at("samples"))
    CHECK(s.at("value").get<std::string>() == "1");
}

TEST_CASE("relative command includes theta") {
  auto job = job_for("relative", "unit_square.json");
  job.level = 1;
  auto env = run(job);
  CHECK(env.exit_code == 0);
  CHECK(env.payload.at("theta").at("constant").get<std::string>() == "0");
}

TEST_CASE("scan command over the corpus") {
  JobSpec job;
  job.command = "scan";
  job.polytope_path = kFixtures;
  auto env = run(job);
  CHECK(env.exit_code == 0);
  const auto& rows = env.payload.at("rows");
  REQUIRE(rows.size() > 5);
  bool saw_nonsmooth = false, saw_square = false;
  for (const auto& row : rows) {
    const std::string file = row.at("file").get<std::string>();
    if (file == "nonsmooth_triangle.json") {
      saw_nonsmooth = true;
      CHECK_FALSE(row.at("delzant").get<bool>());
    }
    if (file == "unit_square.json") {
      saw_square = true;
      CHECK(row.at("chow").get<std::string>() == "semistable");
      CHECK(row.at("obstruction_zero").get<bool>());
    }
    // centrally symmetric fixtures have exactly zero obstruction
    if (file == "hexagon.json" || file == "square_pm1.json")
      CHECK(row.at("obstruction_zero").get<bool>());
  }
  CHECK(saw_nonsmooth);
  CHECK(saw_square);

  // deterministic ordering: rows sorted by filename
  std::vector<std::string> names;
  for (const auto& row : rows) names.push_back(row.at("file").get<std::string>());
  CHECK(std::is_sorted(names.begin(), names.end()));

  // empty directory gives an empty summary and exit 0
  const fs::path empty_dir = fs::temp_directory_path() / "toricstab_empty";
  fs::create_directories(empty_dir);
  JobSpec ejob;
  ejob.command = "scan";
  ejob.polytope_path = empty_dir.string();
  auto eenv = run(ejob);
  CHECK(eenv.exit_code == 0);
  CHECK(eenv.payload.at("rows").empty());
}

TEST_CASE("reports are deterministic and digests round-trip") {
  auto job = job_for("chow", "unit_square.json");
  auto a = run(job);
  auto b = run(job);
  CHECK(a.payload.dump() == b.payload.dump());
  CHECK(a.input_digest ==
        digest(read_file(kFixtures + "/unit_square.json")));
}

TEST_CASE("weight vector parsing is strict") {
  auto poly = make_delzant(load_polytope_vertices(kFixtures +
                                                  "/interval_0_2.json"));
  auto missing = json::parse(R"({"level":1,"values":[["0","0"],["1","1"]]})");
  CHECK_THROWS_AS(parse_weight_vector(missing, poly), input_error);
  auto offgrid = json::parse(
      R"({"level":1,"values":[["0","0"],["1/2","1"],["2","0"]]})");
  CHECK_THROWS_AS(parse_weight_vector(offgrid, poly), input_error);
  auto good = json::parse(
      R"({"level":1,"values":[["2","0"],["0","0"],["1","1"]]})");
  auto wv = parse_weight_vector(good, poly);  // order-insensitive
  CHECK(wv.values == QVec{Rational(0), Rational(1), Rational(0)});
}

TEST_CASE("cap resolution: flag beats environment beats default") {
  JobSpec job;
  job.cap = 3;
  CHECK(resolve_cap(job) == 3);
  job.cap = -1;
  ::setenv("TORICSTAB_CAP", "7", 1);
  CHECK(resolve_cap(job) == 7);
  ::unsetenv("TORICSTAB_CAP");
  CHECK(resolve_cap(job) == 16);
}

TEST_CASE("the installed binary honors the exit code contract") {
  const std::string bin = TORICSTAB_BIN;
  auto code = [&](const std::string& args) {
    const std::string cmd = bin + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };
  CHECK(code("chow --polytope " + kFixtures + "/unit_square.json --level 1") ==
        0);
  CHECK(code("chow --polytope " + kFixtures +
             "/blowup_trapezoid.json --level 1") == 1);
  CHECK(code("verify --polytope " + kFixtures + "/nonsmooth_triangle.json") ==
        1);
  CHECK(code("chow --polytope " + kFixtures + "/no_such_file.json") == 3);
  CHECK(code("chow --polytope " + kFixtures +
             "/unit_square.json --level 4 --exact") == 4);
  CHECK(code("chow --polytope " + kFixtures +
             "/nonsmooth_triangle.json --level 1") == 3);
}
