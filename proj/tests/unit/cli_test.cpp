#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gradpde/cli.hpp"

using namespace gradpde;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  Run r;
  r.code = dispatch(args, o, e);
  r.out = o.str();
  r.err = e.str();
  return r;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) : path(fs::temp_directory_path() / ("gradpde_cli_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("classify output") {
  auto r = run({"classify", "--N", "6", "--p", "2", "--q", "0"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  for (const char* k : {"N", "p", "q", "subcritical", "supercritical", "thmB_case", "liouville_C",
                        "radial_ground_state", "thmE", "values", "notes"})
    CHECK(j.contains(k));
  CHECK(j["liouville_C"] == false);
  CHECK(j["supercritical"] == true);
  CHECK(j["p"] == "2");
  CHECK(r.err.empty());

  auto d = run({"classify", "--N", "6", "--p", "0.5", "--q", "0"});
  CHECK(d.code == 0);
  CHECK(d.err.find("1/2") != std::string::npos);
  CHECK(nlohmann::json::parse(d.out)["p"] == "1/2");

  auto t = run({"classify", "--N", "6", "--p", "1/2", "--q", "0", "--format", "text"});
  CHECK(t.code == 0);
  CHECK(t.out.find("liouville_C: true") != std::string::npos);
  auto c = run({"classify", "--N", "6", "--p", "1/2", "--q", "0", "--format", "csv"});
  CHECK(c.out.rfind("key,value\n", 0) == 0);
}

TEST_CASE("error exit codes") {
  CHECK(run({"classify", "--N", "1", "--p", "2", "--q", "0"}).code == 1);
  CHECK(run({"classify", "--N", "4", "--p", "-1", "--q", "0"}).code == 1);
  CHECK(run({"classify", "--N", "4", "--p", "x", "--q", "0"}).code == 1);
  auto m = run({"classify", "--N", "4", "--q", "5"});
  CHECK(m.code == 1);
  CHECK(m.err.find("p") != std::string::npos);
  CHECK(m.err.find("q") != std::string::npos);
  CHECK(run({"nosuch"}).code == 1);
  CHECK(run({"radial", "bogus", "--N", "4"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("config parsing") {
  CHECK(parse_config_text("").empty());
  CHECK(parse_config_text("  \n ").empty());
  try {
    parse_config_text("{\n  \"N\": 4,\n  \"p\": }\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3, column") != std::string::npos);
  }
  auto cfg = build_config(Command::classify, "", nlohmann::json{{"N", 5}, {"p", "3/2"}, {"q", "1/4"}});
  CHECK(*cfg.N == 5);
  CHECK(*cfg.p == make_rational(3, 2));
  CHECK(*cfg.q == make_rational(1, 4));
  CHECK_THROWS_AS(build_config(Command::classify, "", nlohmann::json{{"N", 5}, {"bogus", 1}}), ConfigError);
  auto g = build_config(Command::sphere, "branch", nlohmann::json{{"grid", "chebyshev:65"}});
  CHECK(g.grid_kind == GridKind::chebyshev);
  CHECK(g.grid_nodes == 65);
  CHECK_THROWS_AS(build_config(Command::sphere, "branch", nlohmann::json{{"grid", "hex"}}), ConfigError);
}

TEST_CASE("config file equals flags") {
  TempDir d("cfg");
  fs::path f = d.path / "c.json";
  std::ofstream(f) << R"({"N": 5, "p": "3/2", "q": "1/4"})";
  auto a = run({"classify", "--config", f.string()});
  auto b = run({"classify", "--N", "5", "--p", "3/2", "--q", "1/4"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto o = run({"classify", "--config", f.string(), "--p", "2"});
  CHECK(nlohmann::json::parse(o.out)["p"] == "2");
  fs::path e = d.path / "empty.json";
  std::ofstream(e) << "";
  CHECK(run({"classify", "--config", e.string(), "--N", "5", "--p", "2", "--q", "0"}).code == 0);
  fs::path bad = d.path / "bad.json";
  std::ofstream(bad) << "{\"N\": 5,,}";
  auto r = run({"classify", "--config", bad.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 1, column") != std::string::npos);
}

TEST_CASE("appendix command") {
  TempDir d("app");
  auto r = run({"appendix", "--N", "3", "--out", d.str()});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["all_proven"] == true);
  CHECK(r.out.find("equality at h = 0") != std::string::npos);
  for (const char* label :
       {"m0_negative", "m0_shift_positive", "sigma_condition", "inclusion_case_i", "inclusion_case_ii"}) {
    fs::path p = d.path / "appendix" / "N3" / (std::string(label) + ".cert");
    REQUIRE(fs::exists(p));
    CHECK(slurp(p) == slurp(fs::path(GOLDEN_DIR) / ("N3_" + std::string(label) + ".cert")));
  }
}

TEST_CASE("curves and radial and sphere commands") {
  TempDir d("mods");
  CHECK(run({"curves", "--N", "4", "--out", d.str()}).code == 0);
  CHECK(fs::exists(d.path / "figure_N4.svg"));
  auto f = run({"radial", "family", "--N", "4", "--q", "1/4", "--out", d.str()});
  CHECK(f.code == 0);
  CHECK(fs::exists(d.path / "radial_family.csv"));
  auto s = run({"radial", "shoot", "--N", "4", "--p", "3", "--q", "0", "--out", d.str()});
  CHECK(s.code == 0);
  CHECK(nlohmann::json::parse(s.out)["classification"] == "ground_state");
  CHECK(run({"radial", "shoot", "--N", "4", "--out", d.str()}).code == 1);
  auto sp = run({"sphere", "spectrum", "--grid", "65", "--out", d.str()});
  CHECK(sp.code == 0);
  auto sb = run({"sphere", "branch", "--steps", "4", "--grid", "65", "--out", d.str()});
  CHECK(sb.code == 0);
  CHECK(fs::exists(d.path / "sphere_branch.csv"));
}

TEST_CASE("report is deterministic") {
  TempDir a("rep_a"), b("rep_b");
  auto r1 = run({"report", "--N", "6", "--out", a.str()});
  auto r2 = run({"report", "--N", "6", "--out", b.str()});
  REQUIRE(r1.code == 0);
  CHECK(r1.out == r2.out);
  auto j = nlohmann::json::parse(r1.out);
  CHECK(j["p_c(0)"] == "2");
  CHECK(j["appendix"]["all_proven"] == true);
  CHECK(j["curves"]["consistency"]["mismatches"] == 0);
  CHECK(slurp(a.path / "report_N6.json") == slurp(b.path / "report_N6.json"));
  CHECK(slurp(a.path / "curves" / "figure_N6.svg") == slurp(fs::path(GOLDEN_DIR) / "figure_N6.svg"));
}

TEST_CASE("output directory from the environment") {
  TempDir d("env");
  ::setenv("LIOUV_OUTPUT_DIR", d.str().c_str(), 1);
  auto r = run({"curves", "--N", "5"});
  ::unsetenv("LIOUV_OUTPUT_DIR");
  CHECK(r.code == 0);
  CHECK(fs::exists(d.path / "figure_N5.svg"));
}
