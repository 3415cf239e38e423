#include "spinorlab/certify.hpp"
#include "spinorlab/report.hpp"

#include <doctest.h>

#include <set>

using namespace spinorlab;

namespace {

SuiteOptions small(int n_min, int n_max, int trials) {
  SuiteOptions o;
  o.n_min = n_min;
  o.n_max = n_max;
  o.trials = trials;
  return o;
}

}  // namespace

TEST_CASE("registry ids are unique and resolvable") {
  std::set<std::string> seen;
  for (const auto& s : suite_registry()) {
    CHECK(seen.insert(s.id).second);
    CHECK(&find_suite(s.id) == &s);
    CHECK(s.default_n_min <= s.default_n_max);
  }
  CHECK(find_suite("eq5").id == "eq4");
  CHECK_THROWS_AS(find_suite("unknown"), UnknownSuite);
  CHECK_THROWS_AS(certify("unknown", {}), UnknownSuite);
}

TEST_CASE("option validation") {
  CHECK_THROWS_AS(certify("eq1", small(3, 2, 1)), std::invalid_argument);
  CHECK_THROWS_AS(certify("eq1", small(1, 2, 0)), std::invalid_argument);
  auto o = small(1, 1, 1);
  o.cutoff = 0;
  CHECK_THROWS_AS(certify("corollary10", o), std::invalid_argument);
}

TEST_CASE("small runs of every algebraic suite pass away from n = 1 mod 4") {
  for (const char* id : {"eq1", "lemma1", "eq4", "witt-frame-independence", "eq6", "eq8", "eq9", "kahler-action",
                         "hermitian-normalization", "killing"}) {
    const auto r = certify(id, small(2, 3, 4));
    CAPTURE(id);
    CHECK(r.passed);
    CHECK(r.checks > 0);
    CHECK_FALSE(r.counterexample.has_value());
  }
}

TEST_CASE("defaults are applied from the registry") {
  const auto r = certify("sharpness", {});
  CHECK(r.passed);
  CHECK(r.n_min == 3);
  CHECK(r.n_max == 21);
  CHECK(r.exact);
}

TEST_CASE("same seed gives byte-identical reports, another seed other samples") {
  auto o = small(1, 3, 10);
  o.seed = 42;
  const auto a = to_json(certify("eq1", o)).dump();
  const auto b = to_json(certify("eq1", o)).dump();
  CHECK(a == b);
  o.seed = 43;
  CHECK(to_json(certify("eq4", o)).dump() != to_json(certify("eq4", small(1, 3, 10))).dump());
}

TEST_CASE("printed right-action sign fails at n = 1 with a counterexample") {
  const auto r = certify("eq4", small(1, 1, 3));
  CHECK_FALSE(r.passed);
  REQUIRE(r.counterexample.has_value());
  CHECK((*r.counterexample)["check"] == "right action sign");
  CHECK((*r.counterexample)["residual_with_opposite_sign"].get<double>() < 1e-12);
  CHECK(r.failed_n == std::vector<int>{1});
}

TEST_CASE("a tight tolerance turns a numeric suite red") {
  auto o = small(4, 4, 5);
  o.tolerance = 1e-30;
  const auto r = certify("lemma1", o);
  CHECK_FALSE(r.passed);
  CHECK(r.counterexample.has_value());
}

TEST_CASE("suite JSON carries the report fields") {
  const auto j = with_schema(to_json(certify("kahler-action", small(1, 2, 2))));
  CHECK(j["schema"] == 1);
  CHECK(j["suite"] == "kahler-action");
  CHECK(j["passed"] == true);
  CHECK(j["n_range"] == nlohmann::json::array({1, 2}));
  CHECK_FALSE(j.contains("tolerance"));
}
