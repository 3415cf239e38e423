#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + SPINORLAB_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("cli: exit codes") {
  CHECK(run("certify unknown").code == 2);
  CHECK(run("certify eq1 --n 3..1").code == 2);
  CHECK(run("certify eq1 --n x").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("certify sharpness").code == 0);
  CHECK(run("certify eq4 --n 1 --trials 2").code == 1);
  CHECK(run("spectrum torus --n 9").code == 2);
  CHECK(run("spectrum sphere --n 3 --p 5 --kmax 1").code == 2);
  CHECK(run("spectrum circle --K 0").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("cli: certify reports and counterexamples") {
  const auto ok = parse(run("certify sharpness --n 3..21"));
  CHECK(ok["schema"] == 1);
  CHECK(ok["passed"] == true);
  CHECK(ok["exact"] == true);
  const auto bad = parse(run("certify eq4 --n 1 --trials 2"));
  CHECK(bad["passed"] == false);
  CHECK(bad["counterexample"]["n"] == 1);
}

TEST_CASE("cli: determinism and the seed environment variable") {
  const auto a = run("certify eq1 --n 1..3 --trials 20 --seed 9");
  const auto b = run("certify eq1 --n 1..3 --trials 20 --seed 9");
  CHECK(a.out == b.out);
  const auto env = run("certify eq1 --n 1..3 --trials 20", "SPINORLAB_SEED=9");
  CHECK(env.out == a.out);
  CHECK(run("certify eq1 --n 1 --trials 1", "SPINORLAB_SEED=abc").code == 2);
}

TEST_CASE("cli: sphere spectrum") {
  const auto j = parse(run("spectrum sphere --n 3 --p 2 --kmax 3"));
  REQUIRE(j["lines"].size() == 4);
  const int want[] = {4, 9, 16, 25};
  for (int k = 0; k < 4; ++k) CHECK(j["lines"][k]["eigenvalue"] == want[k]);
  CHECK(j["lines"][0]["multiplicity"] == 6);
  CHECK_FALSE(j["lines"][1].contains("multiplicity"));
}

TEST_CASE("cli: circle and torus spectra") {
  const auto c = parse(run("spectrum circle --structure nontrivial --K 2 --operator fundamental"));
  REQUIRE(c["eigenvalues"].size() == 4);
  CHECK(c["eigenvalues"][0]["value"] == -1.5);
  CHECK(c["eigenvalues"][3]["value"] == 1.5);
  CHECK(c["structure"] == "nontrivial");
  const auto twisted = parse(run("spectrum circle --structure nontrivial --K 2"));
  REQUIRE(twisted["eigenvalues"].size() == 4);
  CHECK(twisted["eigenvalues"][1]["value"] == -0.5);
  CHECK(twisted["eigenvalues"][1]["multiplicity"] == 2);

  const auto t = parse(run("spectrum torus --n 2 --K 1"));
  bool found_zero = false;
  for (const auto& e : t["eigenvalues"])
    if (e["value"] == 0.0) {
      found_zero = true;
      CHECK(e["multiplicity"] == 4);
    }
  CHECK(found_zero);
  CHECK(t["residuals"]["twisted_dirac_minus_euler"] == 0.0);
}

TEST_CASE("cli: bound") {
  const auto sharp = parse(run("bound --n 3 --alpha2 1 --h-mean-sq 0 --N 6 --model sphere"));
  CHECK(sharp["bound"] == "4");
  CHECK(sharp["margin"] == 0.0);
  CHECK(sharp["margin_exact"] == "0");
  const auto kernel = run("bound --n 2 --alpha2 0 --h-mean-sq 0 --N 4 --model torus --K 1");
  CHECK(kernel.code == 0);
  CHECK(parse(kernel)["margin"] == 0.0);
  const auto vac = parse(run("bound --n 3 --alpha2 -1 --h-sup-sq 1 --N 1"));
  CHECK(vac["bound"] == "-7/4");
  CHECK(vac["vacuous"] == true);
  CHECK(vac["regime"] == "vacuous/imaginary-alpha regime");
  CHECK(run("bound --n 3 --alpha2 1 --N 6").code == 2);
  CHECK(run("bound --n 3 --alpha2 1 --h-mean-sq 0 --h-sup-sq 0 --N 6").code == 2);
  CHECK(run("bound --n 3 --alpha2 1 --h-mean-sq 0 --N 1 --lambda2 5").code == 1);
}

TEST_CASE("cli: markdown output") {
  const auto md = run("spectrum sphere --n 3 --p 2 --kmax 1 --format md");
  CHECK(md.code == 0);
  CHECK(md.out.find("| 3 | 2 | 0 | 4 | 6 |") != std::string::npos);
}
