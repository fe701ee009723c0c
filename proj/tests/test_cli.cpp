#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nullbound/cli.hpp"
#include "nullbound/errors.hpp"

using namespace nullbound;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::vector<json> lines() const {
    std::vector<json> v;
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line)) v.push_back(json::parse(line));
    return v;
  }
  json doc() const { return json::parse(out); }
};

Outcome call(std::vector<const char*> args, const std::string& input = "") {
  args.insert(args.begin(), "nullbound");
  std::ostringstream out, err;
  std::istringstream in(input);
  const int code = cli::main_entry(static_cast<int>(args.size()), args.data(), out, err, in);
  return {code, out.str()};
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / (std::string("nullbound_test_") + name)).string();
}

// Every value in a result document is a string, bool, null or container of those.
bool no_raw_numbers(const json& j) {
  if (j.is_number()) return false;
  if (j.is_structured()) {
    for (const auto& x : j) {
      if (!no_raw_numbers(x)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("length") {
  const auto r = call({"length", "--f", "pow2:1", "--m", "3", "--n", "1"});
  CHECK(r.code == cli::kExitOk);
  const json j = r.doc();
  CHECK(j["schema"] == "1");
  CHECK(j["length"] == "70");
  CHECK(j["method"] == "psi_exact");
  CHECK(no_raw_numbers(j));
  CHECK(call({"length", "--f", "pow2:1", "--m", "1", "--n", "4"}).doc()["length"] == "4");
  CHECK(call({"length", "--f", "pow2:2", "--m", "3"}).doc()["length"] == "2^(2^520+520)+2^520+519");
}

TEST_CASE("oracle agrees with length") {
  for (const char* f : {"affine:1:1", "affine:1:0", "affine:2:0"}) {
    CAPTURE(f);
    const auto o = call({"oracle", "--f", f, "--m", "2", "--cap", "12"});
    REQUIRE(o.code == cli::kExitOk);
    CHECK(o.doc()["length"] == call({"length", "--f", f, "--m", "2"}).doc()["length"]);
    CHECK(o.doc()["method"] == "brute_force");
  }
  CHECK(call({"oracle", "--mode", "fixed_degree", "--start", "3", "--m", "2"}).doc()["length"] == "4");
}

TEST_CASE("exit codes") {
  CHECK(call({"length", "--f", "nope", "--m", "3"}).code == cli::kExitParse);
  CHECK(call({"length", "--m", "3"}).code == cli::kExitParse);
  CHECK(call({"frobnicate"}).code == cli::kExitParse);
  CHECK(call({"length", "--f", "pow2:1", "--m", "3", "--unknown", "1"}).code == cli::kExitParse);

  const auto inf = call({"length", "--f", "pow2:1", "--m", "4"});
  CHECK(inf.code == cli::kExitInfeasible);
  const json e = inf.doc();
  CHECK(e["error"] == "infeasible");
  CHECK(e["partial_state"]["coords"].size() == 4);
  CHECK(e["partial_state"]["counter"].is_string());

  const auto hyp = call({"bound", "--mode", "lexbound", "--d", "1", "--f", "affine:2:0", "--m", "1"});
  CHECK(hyp.code == cli::kExitHypothesis);
  CHECK(hyp.doc()["hypothesis"]["holds"] == false);
  const auto forced = call({"bound", "--mode", "lexbound", "--d", "1", "--f", "affine:2:0", "--m", "1", "--force"});
  CHECK(forced.code == cli::kExitOk);
  CHECK(forced.doc()["value"] == "5");

  CHECK(call({"oracle", "--f", "pow2:1", "--m", "3", "--cap", "12"}).code == cli::kExitError);
  CHECK(call({"--help"}).code == cli::kExitOk);
}

TEST_CASE("bound and report") {
  const json b = call({"bound", "--mode", "lexbound3", "--d", "2", "--a", "3", "--f", "geom:3/2:2/3", "--m", "2"}).doc();
  CHECK(b["bound"] == "⌈log_{3/2}((2^(2^65536)-3)/2)⌉");
  CHECK(b["hypothesis"]["holds"] == true);
  CHECK(b["value"].is_null());

  const json r = call({"report", "--m", "3", "--l", "1", "--D", "5"}).doc();
  CHECK(r["T"] == "2^71");
  CHECK(r["T_upper"] == "2*A(6,3)");
  CHECK(r["exact_within_upper"] == true);
  CHECK(no_raw_numbers(r));
  CHECK(call({"report", "--m", "3", "--l", "2", "--D", "5"}).doc()["T"] == "2^(2^(2^520+520)+2^520+521)");
  CHECK(call({"report", "--m", "3", "--l", "1", "--D", "5", "--c", "x"}).code == cli::kExitParse);
}

TEST_CASE("sequence stream") {
  const auto r = call({"sequence", "--f", "pow2:1", "--m", "3", "--emit-limit", "8", "--tail", "2"});
  REQUIRE(r.code == cli::kExitOk);
  const auto lines = r.lines();
  REQUIRE(lines.size() == 1 + 8 + 1 + 2 + 1);
  CHECK(lines[1]["tuple"] == json::array({"2", "0", "0"}));
  CHECK(lines[5]["tuple"] == json::array({"1", "0", "31"}));
  CHECK(lines[9]["truncated"] == true);
  CHECK(lines[9]["omitted"] == "60");
  CHECK(lines[10]["tuple"] == json::array({"0", "1", "2^69-1"}));
  CHECK(lines[11]["tuple"] == json::array({"0", "0", "2^70"}));
  CHECK(lines[12]["length"] == "70");
  CHECK(lines[12]["blocks"].size() == 3);

  const auto whole = call({"sequence", "--f", "pow2:1", "--m", "3"});
  CHECK(whole.lines().size() == 72);
  CHECK(whole.lines().back()["truncated"] == false);
}

TEST_CASE("verify and hilbert") {
  const auto stream = call({"sequence", "--f", "pow2:1", "--m", "3"}).out;
  const json v = call({"verify", "-"}, stream).doc();
  CHECK(v["antichain"] == true);
  CHECK(v["certificate"] == true);
  CHECK(v["length"] == "70");

  const json bad = call({"verify", "-"}, R"({"m":"2","elements":[["1","0"],["1","1"]]})").doc();
  CHECK(bad["dicksonian"] == false);
  CHECK(bad["witness"] == json::array({"0", "1"}));

  const json cert = call({"verify", "-", "--f", "affine:1:0"}, "[[0,3],[2,0]]").doc();
  CHECK(cert["antichain"] == true);
  CHECK(cert["certificate"] == false);

  const json h = call({"hilbert", "--f", "affine:1:1", "--m", "2"}).doc();
  CHECK(h["compressed"] == true);
  CHECK(h["values"] == json::array({"1", "2", "2", "1", "0", "0"}));
  CHECK(call({"hilbert", "--f", "pow2:1", "--m", "2", "--D", "3"}).doc()["hs"] == "2");
  CHECK(call({"verify", "-"}, "{not json").code == cli::kExitParse);
}

TEST_CASE("job spec round trip") {
  cli::JobSpec s;
  s.command = cli::Command::report;
  s.m = 3;
  s.l = "2";
  s.D = "5";
  s.c = "1/2";
  s.force = true;
  s.output = cli::OutputFormat::text;
  s.cache_path = "/tmp/x";
  CHECK(cli::JobSpec::from_json(s.to_json()) == s);
  CHECK(s.canonical().find("cache") == std::string::npos);
  CHECK_THROWS_AS(cli::JobSpec::from_json(R"({"command":"length","extra":"1"})"), ParseError);
  CHECK_THROWS_AS(cli::JobSpec::from_json(R"({"m":"3"})"), ParseError);

  const cli::JobSpec parsed = [] {
    const char* argv[] = {"nullbound", "length", "--f", "pow2:1", "--m", "3"};
    return cli::parse_args(6, argv);
  }();
  CHECK(cli::JobSpec::from_json(parsed.to_json()) == parsed);

  const std::string path = temp_path("job.json");
  std::ofstream(path) << parsed.to_json();
  CHECK(call({"job", path.c_str()}).doc()["length"] == "70");
  std::filesystem::remove(path);
}

TEST_CASE("cache transparency") {
  const std::string path = temp_path("cache.json");
  std::filesystem::remove(path);
  ::unsetenv("NULLBOUND_CACHE");
  json first = call({"length", "--f", "pow2:2", "--m", "3", "--cache", path.c_str()}).doc();
  json second = call({"length", "--f", "pow2:2", "--m", "3", "--cache", path.c_str()}).doc();
  CHECK(first["cached"] == false);
  CHECK(second["cached"] == true);
  first.erase("cached");
  second.erase("cached");
  CHECK(first == second);
  // Equivalent spellings share an entry.
  CHECK(call({"length", "--f", "pow2:2", "--m", "3", "--n", "1", "--cache", path.c_str()}).doc()["cached"] == true);

  const std::string env = temp_path("env_cache.json");
  std::filesystem::remove(env);
  ::setenv("NULLBOUND_CACHE", env.c_str(), 1);
  CHECK(call({"length", "--f", "pow2:2", "--m", "3", "--cache", path.c_str()}).doc()["cached"] == false);
  CHECK(std::filesystem::exists(env));
  ::unsetenv("NULLBOUND_CACHE");
  std::filesystem::remove(path);
  std::filesystem::remove(env);
}
