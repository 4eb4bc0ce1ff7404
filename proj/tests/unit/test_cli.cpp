#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "sjk/cli.hpp"

using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sjk");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = sjk::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p.string();
}

}  // namespace

TEST_CASE("eval det at the origin") {
  const Result r = run({"eval", "det", "--n", "1", "--k", "2", "--mu", "1", "--point", "origin"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"closed_form\":1.0,\"constant_C\":1.0,\"value\":1.0}\n");
  const std::string f = write_temp("sjk_origin.json", R"({"n":1,"z":[[0,0]],"W":[[[0,0]]]})");
  CHECK(run({"eval", "det", "--n", "1", "--k", "2", "--mu", "1", "--point", f}).out == r.out);
}

TEST_CASE("eval curvature") {
  const Result r = run({"eval", "curvature", "--n", "2", "--k", "2", "--mu", "1", "--point", "origin"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["scalar_curvature"].get<double>() == -12.0);
}

TEST_CASE("eval quantities") {
  for (const char* q : {"potential", "metric", "inverse", "kernel", "laplacian"}) {
    const Result r = run({"eval", q, "--n", "2", "--k", "3", "--point", "origin"});
    CHECK(r.code == 0);
    CHECK_NOTHROW(json::parse(r.out));
  }
  const Result k = run({"eval", "kernel", "--n", "1", "--point", "origin"});
  const json j = json::parse(k.out);
  CHECK(j["epsilon"].get<double>() == doctest::Approx(1.0));
  CHECK(j["berezin"].get<double>() == 1.0);
  const Result pretty = run({"eval", "det", "--n", "1", "--point", "origin", "--format", "pretty"});
  CHECK(pretty.out.find('\n') < pretty.out.size() - 1);
}

TEST_CASE("sample and transform round trip") {
  const Result s = run({"sample", "point", "--domain", "jacobi_upper", "--n", "2", "--seed", "5"});
  REQUIRE(s.code == 0);
  CHECK(run({"sample", "point", "--domain", "jacobi_upper", "--n", "2", "--seed", "5"}).out == s.out);
  CHECK(run({"sample", "point", "--domain", "jacobi_upper", "--n", "2", "--seed", "6"}).out != s.out);
  const std::string up = write_temp("sjk_up.json", s.out);
  const Result c = run({"transform", "cayley", "--point", up});
  REQUIRE(c.code == 0);
  const std::string ball = write_temp("sjk_ball.json", c.out);
  const Result back = run({"transform", "inv-cayley", "--point", ball});
  REQUIRE(back.code == 0);
  const json a = json::parse(s.out), b = json::parse(back.out);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t t = 0; t < 2; ++t)
        CHECK(a["V"][i][j][t].get<double>() == doctest::Approx(b["V"][i][j][t].get<double>()).epsilon(1e-12));

  const Result fc = run({"transform", "fc", "--point", ball});
  REQUIRE(fc.code == 0);
  CHECK(run({"transform", "inv-fc", "--point", write_temp("sjk_fc.json", fc.out)}).code == 0);
  CHECK(run({"sample", "group", "--domain", "ball", "--n", "2", "--seed", "1"}).code == 0);
}

TEST_CASE("usage and domain errors") {
  const Result none = run({});
  CHECK(none.code == 2);
  CHECK(json::parse(none.err)["error"]["kind"] == "UsageError");
  CHECK(run({"eval", "nonsense", "--point", "origin"}).code == 2);
  CHECK(run({"eval", "det", "--n", "0", "--point", "origin"}).code == 2);
  CHECK(run({"eval", "det", "--point", "/nonexistent/p.json"}).code == 2);
  CHECK(run({"verify", "bogus"}).code == 2);
  CHECK(run({"verify", "metric", "--tol", "nope"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  const std::string outside = write_temp("sjk_out.json", R"({"z":[[0,0]],"W":[[[2,0]]]})");
  const Result d = run({"eval", "metric", "--n", "1", "--point", outside});
  CHECK(d.code == 3);
  const json e = json::parse(d.err);
  CHECK(e["error"]["kind"] == "NotInBall");
  CHECK(e["error"]["detail"].is_string());
  CHECK(run({"eval", "det", "--n", "1", "--k", "-1", "--point", "origin"}).code == 2);
}

TEST_CASE("verify") {
  const Result r = run({"verify", "inverse", "--n", "2", "--trials", "4", "--seed", "7"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["properties"].size() == 3);
  for (const auto& p : j["properties"]) {
    CHECK(p.contains("property"));
    CHECK(p.contains("worst"));
    CHECK(p["worst"].contains("seed"));
  }
  CHECK(run({"verify", "inverse", "--n", "2", "--trials", "4", "--seed", "7", "--threads", "2"}).out == r.out);
  const Result f = run({"verify", "metric", "--n", "1", "--trials", "2", "--tol", "metric_oracle=1e-30"});
  CHECK(f.code == 1);
}

TEST_CASE("installed binary exit codes") {
  const char* exe = std::getenv("SJK_CLI");
  if (!exe) {
    MESSAGE("SJK_CLI not set; skipped");
    return;
  }
  auto status = [&](const std::string& args) {
    const int s = std::system((std::string(exe) + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  CHECK(status("eval det --n 1 --point origin") == 0);
  CHECK(status("verify metric --n 1 --trials 1 --tol metric_oracle=1e-30") == 1);
  CHECK(status("frobnicate") == 2);
  CHECK(status("eval det --n 1 --point " + write_temp("sjk_out2.json", R"({"z":[[0,0]],"W":[[[2,0]]]})")) == 3);
}
