#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nilp/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = nilp::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("nilp-cli-" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const std::string path = (dir_ / name).string();
    std::ofstream(path, std::ios::binary) << text;
    return path;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const char* kItem5 = R"({"schema":1,"family":5,"p":7,"params":{"a":49}})";
const char* kZero = R"({"schema":1,"operation":"prelie","p":7,"exponents":[3,1],"table":[[[0,0],[0,0]],[[0,0],[0,0]]]})";

}  // namespace

TEST_CASE("build") {
  Scratch t;
  const Run ok = run({"build", t.write("s5.json", kItem5)});
  CHECK(ok.code == 0);
  const json table = json::parse(ok.out);
  CHECK(table["operation"] == "prelie");
  CHECK(table["table"] == json::parse("[[[49,0],[0,0]],[[0,0],[0,0]]]"));

  const Run bad = run({"build", t.write("s4.json", R"({"schema":1,"family":4,"p":7,"params":{"a":1}})")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("p | a") != std::string::npos);

  const Run sampled = run({"sample", "--family", "1", "--p", "7", "--count", "1", "--seed", "3"});
  REQUIRE(sampled.code == 0);
  const Run built = run({"build", t.write("s1.json", sampled.out), "-o", t.path("t1.json")});
  CHECK(built.code == 0);
  CHECK(run({"verify", t.path("t1.json"), "--samples", "2000"}).code == 0);
}

TEST_CASE("verify") {
  Scratch t;
  const Run z = run({"verify", t.write("zero.json", kZero), "--samples", "100"});
  CHECK(z.code == 0);
  CHECK(json::parse(z.out)["passed"] == true);

  // family 4 table with the x-coefficient of x.y bumped to 50
  const std::string mutated =
      R"({"schema":1,"operation":"prelie","p":7,"exponents":[3,1],"table":[[[7,0],[50,0]],[[0,0],[0,0]]]})";
  const Run m = run({"verify", t.write("mut.json", mutated), "--samples", "100"});
  CHECK(m.code == 2);
  const json rep = json::parse(m.out);
  CHECK(rep["passed"] == false);
  CHECK_FALSE(rep["violations"].empty());

  CHECK(run({"verify", t.write("garbage.json", "{not json")}).code == 3);
  CHECK(run({"verify", t.path("missing.json")}).code == 3);
  CHECK(run({"verify", t.write("odd.json", R"({"schema":2,"operation":"prelie"})")}).code == 3);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", t.path("zero.json"), "--mode", "thorough"}).code == 2);
}

TEST_CASE("verify dispatches brace tables") {
  Scratch t;
  REQUIRE(run({"build", t.write("s5.json", kItem5), "-o", t.path("r5.json")}).code == 0);
  REQUIRE(run({"flow", t.path("r5.json"), "--direction", "to-brace", "-o", t.path("b5.json")}).code == 0);
  const Run v = run({"verify", t.path("b5.json"), "--samples", "2000"});
  CHECK(v.code == 0);
  CHECK(json::parse(v.out)["kind"] == "brace-axioms");
}

TEST_CASE("flow round trip and regime") {
  Scratch t;
  REQUIRE(run({"build", t.write("s5.json", kItem5), "-o", t.path("r5.json")}).code == 0);
  REQUIRE(run({"flow", t.path("r5.json"), "--direction", "to-brace", "-o", t.path("b5.json")}).code == 0);
  REQUIRE(run({"flow", t.path("b5.json"), "--direction", "to-prelie", "-o", t.path("back.json")}).code == 0);
  CHECK(slurp(t.path("back.json")) == slurp(t.path("r5.json")));

  const Run trivial = run({"flow", t.write("zero.json", kZero), "--direction", "to-brace"});
  REQUIRE(trivial.code == 0);
  const json b = json::parse(trivial.out);
  CHECK(b["operation"] == "circle");
  CHECK(b["table"][1][0] == json::parse("[1,1]"));  // element 1 is y, y o x = x + y

  const std::string s7 = R"({"schema":1,"family":7,"p":3,"params":{"a":3,"b":0,"c":0,"d":0}})";
  const Run r = run({"flow", t.write("s7.json", s7), "--direction", "to-brace"});
  CHECK(r.code == 4);
  CHECK(r.err.find("p - 1") != std::string::npos);
}

TEST_CASE("chains") {
  Scratch t;
  const Run z = run({"chains", t.write("zero.json", kZero)});
  REQUIRE(z.code == 0);
  const json zj = json::parse(z.out);
  for (const char* kind : {"left", "right", "strong"}) CHECK(zj[kind]["orders"] == json::parse("[2401,1]"));

  const Run r7 = run({"chains", t.write("s7.json", R"({"schema":1,"family":7,"p":7,"params":{"a":7,"b":0,"c":14,"d":0}})")});
  REQUIRE(r7.code == 0);
  CHECK(json::parse(r7.out)["strong"]["orders"] == json::parse("[2401,343,49,7,1]"));

  const Run r6 = run({"chains", t.write("s6.json", R"({"schema":1,"family":6,"p":7,"params":{"a":49}})")});
  REQUIRE(r6.code == 0);
  CHECK(json::parse(r6.out)["strong"]["orders"] == json::parse("[2401,7,1]"));
}

TEST_CASE("ybe") {
  Scratch t;
  const Run ok = run({"ybe", t.write("zero.json", kZero), "--samples", "500", "--export", t.path("flip.json")});
  CHECK(ok.code == 0);
  const json flip = json::parse(slurp(t.path("flip.json")));
  CHECK(flip["first"][3][5] == 5);
  CHECK(flip["second"][3][5] == 3);
  const std::string p11 = R"({"schema":1,"family":5,"p":11,"params":{"a":121}})";
  CHECK(run({"ybe", t.write("s11.json", p11)}).code == 2);
}

TEST_CASE("enumerate and iso") {
  Scratch t;
  const std::string space = R"({"schema":1,"p":3,"exponents":[3,1],"entries":[
    {"i":0,"j":0,"k":0,"start":0,"stride":9,"count":3},{"i":0,"j":1,"k":0,"start":0,"stride":9,"count":3},
    {"i":1,"j":0,"k":0,"start":0,"stride":9,"count":3},{"i":1,"j":1,"k":0,"start":0,"stride":9,"count":3}]})";
  const Run e = run({"enumerate", t.write("space.json", space), "--report", t.path("enum.json")});
  REQUIRE(e.code == 0);
  CHECK(std::count(e.out.begin(), e.out.end(), '\n') == 81);
  const json rep = json::parse(slurp(t.path("enum.json")));
  CHECK(rep["valid"] == 81);
  CHECK(run({"enumerate", t.path("space.json"), "--budget", "10"}).code == 2);

  REQUIRE(run({"build", t.write("a.json", kItem5), "-o", t.path("ra.json")}).code == 0);
  REQUIRE(run({"build", t.write("b.json", R"({"schema":1,"family":5,"p":7,"params":{"a":98}})"), "-o", t.path("rb.json")}).code == 0);
  const Run iso = run({"iso", t.path("ra.json"), t.path("rb.json")});
  CHECK(iso.code == 0);
  CHECK(json::parse(iso.out)["verdict"] == "yes");
  const Run none = run({"iso", t.path("ra.json"), t.write("zero.json", kZero)});
  CHECK(none.code == 0);
  CHECK(json::parse(none.out)["verdict"] == "no");
}

TEST_CASE("seeded runs are byte-identical") {
  Scratch t;
  const std::string spec = t.write("s8.json", R"({"schema":1,"family":8,"p":7,"params":{"c":7,"e":7,"h":7,"g":1}})");
  const Run a = run({"verify", spec, "--samples", "3000", "--seed", "17"});
  const Run b = run({"verify", spec, "--samples", "3000", "--seed", "17", "--threads", "1"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run({"sample", "--family", "3", "--p", "11", "--count", "5", "--seed", "2"}).out ==
        run({"sample", "--family", "3", "--p", "11", "--count", "5", "--seed", "2"}).out);
  const Run y1 = run({"ybe", spec, "--samples", "1000", "--seed", "5"});
  const Run y2 = run({"ybe", spec, "--samples", "1000", "--seed", "5", "--threads", "3"});
  CHECK(y1.out == y2.out);
}
