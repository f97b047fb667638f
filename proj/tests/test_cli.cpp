#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quivhom/report.hpp"

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(QUIVHOM_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf;
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

std::string doc(const std::string& name) {
  return std::string(QUIVHOM_CORPUS_DIR) + "/" + name + ".json";
}

}  // namespace

TEST_CASE("hh tables match the pinned dimensions") {
  auto r = run("hh " + doc("double_fan") + " --degree 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("1\t4\t0\t0") != std::string::npos);
  auto pt = run("hh " + doc("point") + " --degree 2");
  CHECK(pt.exit_code == 0);
  CHECK(pt.out.find("1\t0\t0") != std::string::npos);
  auto tc = run("hh " + doc("two_cycle") + " --degree 4");
  CHECK(tc.exit_code == 0);
  // nonzero entries in every degree
  CHECK(tc.out.find("\t0") == std::string::npos);
}

TEST_CASE("mv: witness mismatch is a validation error, sh accepts condition (2)") {
  auto bad = run("mv " + doc("four_cycle") + " --theory hh --degree 2");
  CHECK(bad.exit_code == 2);
  auto sh = run("mv " + doc("four_cycle") + " --theory sh --degree 2");
  CHECK(sh.exit_code == 0);
  CHECK(sh.out.find("PASS") != std::string::npos);
  auto hh = run("mv " + doc("double_fan") + " --theory hh --degree 3");
  CHECK(hh.exit_code == 0);
  CHECK(hh.out.find("PASS long exact sequence") != std::string::npos);
}

TEST_CASE("pi1 --core prints the free group of the glued pair core") {
  auto r = run("pi1 " + doc("glued_pair") + " --core");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("abelianization\tZ") != std::string::npos);
}

TEST_CASE("hc --connes on the point algebra") {
  auto r = run("hc " + doc("point") + " --degree 4 --variant homology --connes");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("1\t0\t1\t0\t1") != std::string::npos);
  CHECK(r.out.find("PASS Connes sequence exact") != std::string::npos);
}

TEST_CASE("orient reports the absence of full witnesses on the two cycle") {
  auto r = run("orient " + doc("two_cycle"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("no full witness with all three parts nonempty") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs and round-trip through JSON") {
  auto a = run("mv " + doc("double_fan") + " --theory hh --degree 2");
  auto b = run("mv " + doc("double_fan") + " --theory hh --degree 2");
  CHECK(a.out == b.out);
  auto j1 = run("mv " + doc("double_fan") + " --theory hh --degree 2 --json");
  auto j2 = run("mv " + doc("double_fan") + " --theory hh --degree 2 --json");
  CHECK(j1.out == j2.out);
  auto parsed = quivhom::Report::from_json(nlohmann::json::parse(j1.out));
  CHECK(parsed.to_json().dump(2) + "\n" == j1.out);
}

TEST_CASE("validation errors exit with code 2") {
  auto r = run("hh /nonexistent.json");
  CHECK(r.exit_code == 2);
}

TEST_CASE("a failed theorem verdict exits with code 4") {
  // the gluing hypothesis fails on this input, so the vk verdict is false
  auto r = run("pi1 " + doc("glued_pair") + " --vk");
  CHECK(r.exit_code == 4);
  CHECK(r.out.find("FAIL van Kampen hypothesis") != std::string::npos);
}

TEST_CASE("budget exceeded exits with code 3") {
  auto r = run("hc " + doc("looped_line") + " --degree 40");
  CHECK(r.exit_code == 3);
}

TEST_CASE("hh with dual coefficients matches the homology dimensions") {
  auto d = run("hh " + doc("looped_line") + " --degree 3 --coefficients dual");
  auto h = run("hh " + doc("looped_line") + " --degree 3 --variant homology");
  CHECK(d.exit_code == 0);
  CHECK(h.exit_code == 0);
  auto table = [](const std::string& out) {
    auto pos = out.find("dim\t");
    return out.substr(pos, out.find('\n', pos) - pos);
  };
  CHECK(table(d.out) == table(h.out));
}
