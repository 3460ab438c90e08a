#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "aitlab_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// `prefix` may carry environment assignments; the shell sorts it out.
CmdResult run_cli(const std::string& args, const std::string& prefix = "") {
  fs::path out = work_dir() / "stdout.txt";
  fs::path err = work_dir() / "stderr.txt";
  std::string cmd = prefix + (prefix.empty() ? "" : " ") + AITLAB_CLI_PATH +
                    " " + args + " >" + out.string() + " 2>" + err.string();
  int status = std::system(cmd.c_str());
  CmdResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path small_table() {
  static fs::path path = [] {
    fs::path p = work_dir() / "l6.tbl";
    CmdResult r =
        run_cli("enumerate --L 6 --T 100 --out " + p.string());
    REQUIRE(r.code == 0);
    return p;
  }();
  return path;
}

}  // namespace

TEST_CASE("no subcommand is a usage error") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("frobnicate").code == 2);
}

TEST_CASE("enumerate reports the census and writes a stable file") {
  fs::path a = work_dir() / "first.tbl";
  fs::path b = work_dir() / "second.tbl";
  CmdResult r1 = run_cli("enumerate --L 6 --T 100 --out " + a.string());
  REQUIRE(r1.code == 0);
  CHECK(r1.out.find("outputs=2") != std::string::npos);
  CHECK(r1.out.find("programs=6") != std::string::npos);
  CHECK(r1.out.find("total=13/2^6") != std::string::npos);
  CHECK(r1.out.find("wrote " + a.string()) != std::string::npos);

  CmdResult r2 = run_cli("enumerate --L 6 --T 100 --workers 3 --out " +
                         b.string());
  REQUIRE(r2.code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}

TEST_CASE("enumerate rejects bad parameters and unwritable targets") {
  CHECK(run_cli("enumerate --L 5 --T 100 --out " +
                (work_dir() / "x.tbl").string())
            .code == 2);
  CHECK(run_cli("enumerate --L 6 --T 100 --out /nonexistent-dir/x.tbl")
            .code == 3);
}

TEST_CASE("check passes a freshly written table") {
  CmdResult r = run_cli("check --table " + small_table().string());
  CHECK(r.code == 0);
  CHECK(r.out == "kraft=ok prefixfree=ok witnesses=ok\n");
}

TEST_CASE("check flags a tampered mass") {
  std::string text = slurp(small_table());
  auto pos = text.find(" 11 ");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 4, " 12 ");
  pos = text.find("TOTAL 13");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 8, "TOTAL 14");
  fs::path bad = work_dir() / "tampered.tbl";
  std::ofstream(bad) << text;

  CmdResult r = run_cli("check --table " + bad.string());
  CHECK(r.code == 1);
  CHECK(r.out.find("kraft=FAIL") != std::string::npos);
  CHECK(r.err.find("disagrees") != std::string::npos);
}

TEST_CASE("check flags a witness that proves the wrong output") {
  std::string text = slurp(small_table());
  auto pos = text.find("0 6 2 001000");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 12, "1 6 2 001000");
  fs::path bad = work_dir() / "wrong_witness.tbl";
  std::ofstream(bad) << text;

  CmdResult r = run_cli("check --table " + bad.string());
  CHECK(r.code == 1);
  CHECK(r.out.find("witnesses=FAIL") != std::string::npos);
}

TEST_CASE("info emits the full report as json") {
  // L=15 is the smallest scale where the joint of ("0", "0") is reachable
  fs::path table = work_dir() / "l15.tbl";
  REQUIRE(run_cli("enumerate --L 15 --T 256 --out " + table.string()).code ==
          0);
  fs::path cache = work_dir() / "cache";
  CmdResult r = run_cli("info --table " + table.string() + " --x 0 --y 0",
                        "AITLAB_CACHE_DIR=" + cache.string());
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["params"]["L"] == 15);
  CHECK(j["x"] == "0");
  CHECK(j["khat"]["x"] == 6);
  CHECK(j["gaps"]["symmetry"] == 0);
  CHECK(j["gaps"]["bayes_log"] == 0.0);
  std::string mass_x = j["mass"]["x"].get<std::string>();
  CHECK(mass_x.substr(mass_x.find('/')) == "/2^15");
  CHECK(fs::exists(cache / "isa1_L15_T256_cond0.tbl"));

  // second run is served from the table cache
  CmdResult again = run_cli("info --table " + table.string() +
                                " --x 0 --y 0 --cond-tables require",
                            "AITLAB_CACHE_DIR=" + cache.string());
  CHECK(again.code == 0);
  CHECK(nlohmann::json::parse(again.out) == j);
}

TEST_CASE("info on an unreachable string exhausts the resource bound") {
  CmdResult r = run_cli("info --table " + small_table().string() +
                            " --x 1 --y -",
                        "AITLAB_CACHE_DIR=" + (work_dir() / "c2").string());
  CHECK(r.code == 4);
  CHECK(r.err.find("khat_x") != std::string::npos);
}

TEST_CASE("cond-tables require refuses to build cold tables") {
  CmdResult r = run_cli("info --table " + small_table().string() +
                            " --x - --y 0 --cond-tables require",
                        "AITLAB_CACHE_DIR=" + (work_dir() / "cold").string());
  CHECK(r.code == 3);
}

TEST_CASE("predict prints the forecast csv") {
  CmdResult r = run_cli("predict --table " + small_table().string() +
                        " --stream 0");
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header, row;
  REQUIRE(std::getline(in, header));
  REQUIRE(std::getline(in, row));
  CHECK(header == "pos,observed,p0,p1,defect,logloss_cum,scored");
  CHECK(row.substr(0, 4) == "0,0,");
  CHECK(row.find("0.153846") != std::string::npos);
}

TEST_CASE("bayes traces the worked example") {
  fs::path space = work_dir() / "space.json";
  std::ofstream(space) << R"({
    "hypotheses": ["H0", "H1"],
    "prior": [0.5, 0.5],
    "likelihood": {"e": [0.8, 0.4]}
  })";
  CmdResult r =
      run_cli("bayes --space " + space.string() + " --evidence e,e");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["steps"].size() == 2);
  CHECK(j["steps"][0]["marginal"].get<double>() == doctest::Approx(0.6));
  CHECK(j["steps"][0]["drop"][0].get<double>() ==
        doctest::Approx(-1.0 / 6.0));
  CHECK(j["final"][0].get<double>() == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(j["final"][1].get<double>() == doctest::Approx(0.2).epsilon(1e-12));

  CHECK(run_cli("bayes --space " + space.string() + " --evidence nope")
            .code == 2);
  CHECK(run_cli("bayes --space /nonexistent.json --evidence e").code == 3);
}

TEST_CASE("lz subcommands") {
  CmdResult cost = run_cli("lz cost --x 0000000");
  REQUIRE(cost.code == 0);
  auto j = nlohmann::json::parse(cost.out);
  CHECK(j["cost"] == 8);

  CmdResult info = run_cli("lz info --x 0000000 --y 0000000");
  REQUIRE(info.code == 0);
  CHECK(nlohmann::json::parse(info.out)["info"] == 2);

  CHECK(run_cli("lz ncd --x - --y -").code == 2);

  fs::path corpus = work_dir() / "corpus";
  fs::create_directories(corpus);
  std::ofstream(corpus / "alpha.bits") << "01010101010101010101";
  std::ofstream(corpus / "beta.bits") << "11111111111111111111";
  CmdResult matrix = run_cli("lz matrix --corpus " + corpus.string());
  REQUIRE(matrix.code == 0);
  std::istringstream in(matrix.out);
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header == "name,alpha,beta");
  std::string row1, row2, extra;
  REQUIRE(std::getline(in, row1));
  REQUIRE(std::getline(in, row2));
  CHECK(row1.substr(0, 6) == "alpha,");
  CHECK(row2.substr(0, 5) == "beta,");
  CHECK_FALSE(std::getline(in, extra));
}
