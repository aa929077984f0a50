#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <regex>
#include <string>

#include <json.hpp>

#include "tspn/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + "'" TSPN_CLI_PATH "' " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const char* name) { return std::string("'" TSPN_DATA_DIR "/") + name + "'"; }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tspn_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const char* f) const { return "'" + (path / f).string() + "'"; }
  std::string raw(const char* f) const { return (path / f).string(); }
};

nlohmann::json load(const std::string& path) { return nlohmann::json::parse(tspn::read_text_file(path)); }

std::string without_timing(const std::string& path) {
  auto j = nlohmann::ordered_json::parse(tspn::read_text_file(path));
  j.erase("timing");
  return j.dump();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("tour-lines writes a result and an svg") {
    TempDir d;
    Run r = run("tour-lines --input " + data("tri.json") + " --epsilon 0.005 --seed 7 --out " + (d / "r.json") +
                " --svg " + (d / "r.svg"));
    CHECK(r.code == 0);
    auto j = load(d.raw("r.json"));
    CHECK(j["version"] == 1);
    CHECK(j["mode"] == "tour-lines");
    CHECK(j["m"] == 158);
    CHECK(j["seed"] == 7);
    CHECK(j["epsilon"] == 0.005);
    CHECK(j["rectangle"]["corners"].size() == 4);
    CHECK(j.contains("timing"));
    CHECK(fs::file_size(d.raw("r.svg")) > 100);
  }

  TEST_CASE("default epsilons") {
    TempDir d;
    CHECK(run("path-lines --input " + data("tri.json") + " --out " + (d / "p.json")).code == 0);
    auto p = load(d.raw("p.json"));
    CHECK(p["m"] == 786);
    CHECK(p["epsilon"] == 1.0 / 250);
    CHECK(p["path"].size() >= 1);
    CHECK(run("path-rays --input " + data("four_rays.json") + " --out " + (d / "q.json")).code == 0);
    auto q = load(d.raw("q.json"));
    CHECK(q["m"] == 786);
    CHECK(q["epsilon"] == 1.0 / 1000);
    CHECK(q["path"].size() == 5);
    CHECK(run("tour-rays --input " + data("four_rays.json") + " --out " + (d / "t.json")).code == 0);
    CHECK(load(d.raw("t.json"))["m"] == 158);
  }

  TEST_CASE("randomised epsilon") {
    TempDir d;
    CHECK(run("tour-lines --randomize-eps --seed 3 --input " + data("tri.json") + " --out " + (d / "r.json")).code == 0);
    double eps = load(d.raw("r.json"))["epsilon"];
    CHECK(eps >= 1.0 / 300);
    CHECK(eps <= 1.0 / 200);
    CHECK(run("path-lines --randomize-eps --input " + data("tri.json")).code == 1);
  }

  TEST_CASE("degenerate instance exits with 2") {
    TempDir d;
    Run r = run("tour-lines --input " + data("cross.json") + " --out " + (d / "r.json"));
    CHECK(r.code == 2);
    CHECK(r.out.find("degenerate") != std::string::npos);
    CHECK(load(d.raw("r.json"))["degenerate"] == true);
    Run c = run("certify --input " + data("cross.json") + " --result " + (d / "r.json") + " --sweep-k 1000");
    CHECK(c.code == 2);
    CHECK(c.out.find("degenerate: OPT = 0") != std::string::npos);
  }

  TEST_CASE("errors exit with 1") {
    Run bad = run("tour-lines --input " + data("bad_record.json"));
    CHECK(bad.code == 1);
    CHECK(bad.out.find("region 2") != std::string::npos);
    CHECK(run("tour-rays --input " + data("tri.json")).code == 1);
    CHECK(run("tour-lines --input " + data("tri.json") + " --epsilon 2").code == 1);
    CHECK(run("tour-lines --input /nonexistent.json").code == 1);
    CHECK(run("no-such-command").code == 1);
    CHECK(run("").code == 1);
    CHECK(run("--help").code == 0);
  }

  TEST_CASE("certify passes on fresh results and fails on tampered ones") {
    TempDir d;
    REQUIRE(run("tour-lines --input " + data("tri.json") + " --out " + (d / "r.json")).code == 0);
    Run ok = run("certify --input " + data("tri.json") + " --result " + (d / "r.json") + " --sweep-k 100000");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("PASS") != std::string::npos);
    std::smatch m;
    REQUIRE(std::regex_search(ok.out, m, std::regex("ratio=([0-9.]+)")));
    CHECK(std::stod(m[1]) <= 1.281);

    // Shrink the rectangle by 10% about its centre.
    auto j = nlohmann::ordered_json::parse(tspn::read_text_file(d.raw("r.json")));
    auto& rect = j["rectangle"];
    double cx = 0.5 * (rect["x1"].get<double>() + rect["x2"].get<double>());
    double cy = 0.5 * (rect["y1"].get<double>() + rect["y2"].get<double>());
    for (const char* k : {"x1", "x2"}) rect[k] = cx + 0.9 * (rect[k].get<double>() - cx);
    for (const char* k : {"y1", "y2"}) rect[k] = cy + 0.9 * (rect[k].get<double>() - cy);
    tspn::write_file_atomic(d.raw("bad.json"), j.dump());
    Run bad = run("certify --input " + data("tri.json") + " --result " + (d / "bad.json") + " --sweep-k 1000");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL") != std::string::npos);
    CHECK(run("verify --input " + data("tri.json") + " --result " + (d / "bad.json")).code == 1);
    CHECK(run("verify --input " + data("tri.json") + " --result " + (d / "r.json")).code == 0);

    // A result from a different instance is refused.
    Run other = run("certify --input " + data("cross.json") + " --result " + (d / "r.json"));
    CHECK(other.code == 1);
    CHECK(other.out.find("different instance") != std::string::npos);
  }

  TEST_CASE("path certificates") {
    TempDir d;
    REQUIRE(run("path-lines --input " + data("tri.json") + " --out " + (d / "p.json")).code == 0);
    CHECK(run("certify --input " + data("tri.json") + " --result " + (d / "p.json") + " --sweep-k 20000").code == 0);
    REQUIRE(run("path-rays --input " + data("segment_rays.json") + " --out " + (d / "q.json") + " --sweep-k 20000").code == 0);
    auto q = load(d.raw("q.json"));
    CHECK(q["certificate"]["passed"] == true);
    CHECK(q["objective_value"].get<double>() <= 2.241 * 3.0);
  }

  TEST_CASE("bounds") {
    Run r3 = run("bounds --curve " + data("lemma3_tight.json") + " --check lemma3");
    CHECK(r3.code == 0);
    CHECK(r3.out.find("three_sides") != std::string::npos);
    Run r5 = run("bounds --curve " + data("lemma5_tight.json") + " --check lemma5");
    CHECK(r5.code == 0);
    CHECK(run("bounds --curve " + data("lemma5_tight.json")).code == 0);
    CHECK(run("bounds --curve " + data("lemma5_tight.json") + " --check lemma7").code == 1);
    CHECK(run("bounds --curve " + data("tri.json")).code == 1);
  }

  TEST_CASE("identical runs are byte-identical apart from timing") {
    TempDir d;
    for (const char* out : {"a", "b"}) {
      std::string o = out;
      REQUIRE(run("tour-rays --seed 11 --input " + data("segment_rays.json") + " --out " + (d / (o + ".json").c_str()) +
                  " --svg " + (d / (o + ".svg").c_str()), out[0] == 'a' ? "TSPN_THREADS=1" : "TSPN_THREADS=3")
                  .code == 0);
    }
    CHECK(without_timing(d.raw("a.json")) == without_timing(d.raw("b.json")));
    CHECK(tspn::read_text_file(d.raw("a.svg")) == tspn::read_text_file(d.raw("b.svg")));
    CHECK(run("tour-lines --input " + data("tri.json"), "TSPN_THREADS=x").code == 1);
  }
}
