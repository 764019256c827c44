#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef IDAP_BIN
#error "IDAP_BIN must point at the idap executable"
#endif

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + std::string(IDAP_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, k);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json payload(const Run& r) { return nlohmann::json::parse(r.out).at("payload"); }

const char* kPair = "--system 'x1^2+x2^2; x1^2-x2^2'";

}  // namespace

TEST_CASE("morphism-check") {
  auto r = run(std::string("morphism-check ") + kPair);
  REQUIRE(r.code == 0);
  auto p = payload(r);
  CHECK(p["certificate"]["holds"] == true);
  CHECK(p["certificate"]["basis"] == nlohmann::json::array({"x1^2", "x2^2"}));
  CHECK(p["certificate"]["witnesses"][0]["leading"] == "x1^2");
  CHECK(p["certificate"]["witnesses"][1]["leading"] == "x2^2");
  auto env = nlohmann::json::parse(r.out);
  for (const char* k : {"command", "input_digest", "tool_version", "timestamp", "payload"}) CHECK(env.contains(k));
  CHECK(env["command"] == "morphism-check");

  auto h = payload(run("morphism-check --system 'x1^2+x2^2'"));
  CHECK(h["certificate"]["holds"] == false);
  CHECK(h["certificate"]["missing_variables"] == nlohmann::json::array({"x2"}));
}

TEST_CASE("dimension and verdicts") {
  auto d = run("dimension --n 1 --d 2 --tau 2");
  REQUIRE(d.code == 0);
  CHECK(payload(d)["s"] == "1/2");
  CHECK(payload(d)["applicable"] == true);
  CHECK(payload(d)["intrinsic_equals_ambient"] == false);
  CHECK(run("dimension --n 1 --d 2 --tau 1").code == 3);
  auto sys = run(std::string("dimension --tau 3 ") + kPair);
  CHECK(payload(sys)["s"] == "1/2");
  CHECK(payload(sys)["intrinsic_equals_ambient"] == true);

  auto v = run("verdict --n 1 --d 2 --tau 2 --s 0.6");
  REQUIRE(v.code == 0);
  CHECK(payload(v)["outcome"] == "zero");
  CHECK(payload(v)["exponent"] == "-7/5");
  CHECK(payload(run("verdict --n 1 --d 2 --tau 2 --s 1/2"))["outcome"] == "infinity");
  CHECK(run("verdict --n 1 --d 2 --tau 2 --s 3/2").code == 3);
  CHECK(run("verdict --system 'x1^2+x2^2' --tau 2 --s 1/2").code == 3);
  CHECK(payload(run("classical-verdict --n 1 --tau 3 --s 1"))["outcome"] == "zero");
  CHECK(payload(run("classical-verdict --n 1 --tau 2 --s 1"))["regime"] == "khintchine");
}

TEST_CASE("heights and height bounds") {
  auto h = run(std::string("heights --point 1/2,1/2 ") + kPair);
  REQUIRE(h.code == 0);
  auto pt = payload(h)["points"][0];
  CHECK(pt["affine_height"] == "2");
  CHECK(pt["ratio"] == "1/2");
  CHECK(pt["F"] == nlohmann::json::array({"1/2", "1/2", "1/2", "0"}));
  auto v = payload(run("heights --vector 2/3,1/2"));
  CHECK(v["projective"] == "6:4:3");
  CHECK(v["affine_height"] == "6");

  auto s1 = run(std::string("heights --sample 5 --seed 3 --q-max 20 ") + kPair);
  auto s2 = run(std::string("heights --sample 5 --seed 3 --q-max 20 ") + kPair);
  CHECK(payload(s1) == payload(s2));
  CHECK(payload(s1)["points"].size() == 5);

  auto csv = run("height-bounds --system x1^2 --q-max 5 --format csv");
  REQUIRE(csv.code == 0);
  CHECK(csv.out == "q,count,min_ratio,max_ratio\n1,2,1,1\n2,1,1,1\n3,2,1,1\n4,2,1,1\n5,4,1,1\n");
  auto js = payload(run(std::string("height-bounds --q-max 8 ") + kPair));
  CHECK(js["report"]["delta_hat"] == "1/2");
  CHECK(js["report"]["above_one"] == 0);
}

TEST_CASE("empirical subcommands") {
  auto e = run("estimate-dim --system x1^2 --tau 2 --format csv");
  REQUIRE(e.code == 0);
  CHECK(e.out.rfind("level,eps,count\n0,", 0) == 0);
  auto ej = payload(run("estimate-dim --system x1^2 --tau 2"));
  CHECK(ej["estimate"]["predicted"] == "1/2");
  CHECK(ej["estimate"]["levels"].size() == 4);

  auto t = payload(run("tail-sum --system x1^2 --tau 2 --s 1 --N 0 --Q 6"));
  CHECK(t["sums"][0]["s2_exact"] == "28567/24000");  // sum q^-3, q <= 6
  CHECK_FALSE(t["sums"][0]["s1_exact"].is_null());
  auto w = payload(run("tail-sum --system x1^2 --tau 2 --s 0.6 --windows 20,40"));
  REQUIRE(w["sums"].size() == 2);
  CHECK(w["sums"][0]["s1_le_s2"] == true);
  CHECK(w["sums"][0]["s1_exact"].is_null());

  auto c = payload(run("cover --system x1^2 --tau 2 --q-lo 0 --q-hi 4 --mode upper --balls"));
  CHECK(c["cover"]["balls"] == 7);
  CHECK(c["cover"]["max_radius"] == "1");

  auto ci = run("check-intrinsic --system x1^2 --tau 3 --d-min 3 --d-max 30");
  REQUIRE(ci.code == 0);
  CHECK(payload(ci)["result"]["clean"] == true);
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 1);
  CHECK(run("no-such-command").code == 1);
  CHECK(run("morphism-check --system x1 --system-file /dev/null").code == 1);
  CHECK(run("tail-sum --system x1^2 --tau 2 --s 1 --N 0 --Q 6 --windows 10").code == 1);
  CHECK(run("verdict --system x1^2 --n 1 --tau 2 --s 1/2").code == 1);
  CHECK(run("dimension --n 1 --d 2 --tau 2 --format csv").code == 1);
  CHECK(run("morphism-check --system x1/2").code == 2);
  CHECK(run("morphism-check --system 'x1 + 1.5'").code == 2);
  CHECK(run("morphism-check --system 'x1^2 + x9' --n 2").code == 2);
  CHECK(run("verdict --n 1 --d 2 --tau 2 --s 2").code == 3);
  CHECK(run("dimension --n 1 --d 2 --tau 1").code == 3);
  CHECK(run("check-intrinsic --system x1^2 --tau 1").code == 4);
  CHECK(run("estimate-dim --system 'x1^2+x2^2' --tau 3").code == 4);
  CHECK(run("estimate-dim --system x1^2 --tau 1").code == 4);
}

TEST_CASE("system files") {
  const char* path = "cli_system_test.json";
  {
    std::ofstream out(path);
    out << R"({"n": 2, "polys": [{"terms": [{"exp": [2, 0], "coef": 1}, {"exp": [0, 2], "coef": 1}]}, "x1^2 - x2^2"]})";
  }
  auto r = run(std::string("morphism-check --system-file ") + path);
  REQUIRE(r.code == 0);
  CHECK(payload(r)["certificate"]["holds"] == true);
  {
    std::ofstream out(path);
    out << R"({"n": 2, "polys": [)";
  }
  CHECK(run(std::string("morphism-check --system-file ") + path).code == 2);
  std::remove(path);
}

TEST_CASE("identical invocations give identical payloads") {
  for (const std::string args : {std::string("morphism-check ") + kPair, std::string("height-bounds --q-max 12 ") + kPair,
                                 std::string("estimate-dim --system x1^2 --tau 3"),
                                 std::string("verdict --n 2 --d 3 --tau 1/2 --s 1 --beta 1/3")}) {
    auto a = run(args);
    auto b = run(args);
    auto ja = nlohmann::json::parse(a.out);
    auto jb = nlohmann::json::parse(b.out);
    CHECK(ja["payload"].dump() == jb["payload"].dump());
    CHECK(ja["input_digest"] == jb["input_digest"]);
  }
  const std::string scan = std::string("height-bounds --q-max 16 ") + kPair;
  CHECK(payload(run(scan, "IDAP_THREADS=1 ")) == payload(run(scan, "IDAP_THREADS=3 ")));
  CHECK(payload(run(scan + " --exec serial")) == payload(run(scan)));
}
