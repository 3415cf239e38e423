// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance              all criteria
//   acceptance --criterion N

#include "spinorlab/certify.hpp"
#include "spinorlab/report.hpp"
#include "spinorlab/witt_model.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace spinorlab;

namespace {

struct Verdict {
  bool passed = false;
  std::string detail;
};

std::uint64_t seed() {
  const char* env = std::getenv("SPINORLAB_SEED");
  return env ? std::stoull(env) : 7;
}

SuiteOptions options(int n_min, int n_max, std::optional<int> trials = std::nullopt, std::optional<int> cutoff = std::nullopt) {
  SuiteOptions o;
  o.n_min = n_min;
  o.n_max = n_max;
  o.trials = trials;
  o.cutoff = cutoff;
  o.seed = seed();
  return o;
}

std::string failed_list(const SuiteResult& r) {
  std::ostringstream os;
  os << r.id << " at n =";
  for (std::size_t i = 0; i < r.failed_n.size(); ++i) os << (i ? "," : " ") << r.failed_n[i];
  return os.str();
}

std::string residual_text(const SuiteResult& r) {
  return r.exact ? std::string("exact") : "max residual " + format_double(r.max_residual);
}

Verdict single(const SuiteResult& r) {
  Verdict v{r.passed, r.id + ": " + std::to_string(r.checks) + " checks, " + residual_text(r)};
  if (!r.passed) v.detail += ", failed " + failed_list(r);
  return v;
}

Verdict criterion1() {
  const auto start = std::chrono::steady_clock::now();
  Verdict v{true, ""};
  std::string failures;
  std::size_t checks = 0;
  for (const char* id : {"eq1", "lemma1", "eq4", "witt-frame-independence", "eq6", "eq8", "eq9", "kahler-action",
                         "hermitian-normalization"}) {
    const auto r = certify(id, options(1, 6, 100));
    checks += r.checks;
    if (!r.passed) {
      v.passed = false;
      failures += (failures.empty() ? "" : "; ") + failed_list(r);
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.detail = "9 suites, n = 1..6, 100 trials, " + std::to_string(checks) + " checks in " + format_double(std::round(seconds)) + " s";
  if (!v.passed) v.detail += "; failed " + failures + " (printed sign; the opposite sign holds there)";
  return v;
}

Verdict criterion2() {
  SuiteOptions o = options(1, 5, 100);
  const auto r = certify("killing", o);
  Verdict v = single(r);
  // The un-negated sum, for the record.
  std::string raw;
  for (int n : {1, 3, 5}) {
    const auto& model = WittModel::get(n);
    const auto s = model.witt_pair_sum(true);
    BladeMask top = 0;
    for (BladeMask m = 0; m < model.dim(); ++m)
      if (std::popcount(m) == (n + 1) / 2) top = m;
    raw += (raw.empty() ? "" : ", ") + to_string(s(top, top).re);
  }
  v.detail += "; K+ = -sum p+(e_j)p-(e_j) = -(i/2)Omega + n/2 equals (n+1)/2 on L^{(n+1)/2}; the sum itself acts there by " + raw +
              " for n = 1, 3, 5";
  return v;
}

Verdict criterion3() {
  Verdict a = single(certify("corollary10", options(1, 3, 1, 5)));
  Verdict b = single(certify("eq12", options(1, 3, 1, 5)));
  return {a.passed && b.passed, a.detail + "; " + b.detail};
}

Verdict criterion4() { return single(certify("remark-circle", options(1, 1, 1, 20))); }

Verdict criterion5() { return single(certify("sharpness", options(3, 21, 1))); }

Verdict criterion6() {
  SuiteOptions o = options(1, 1, 50);
  o.tolerance = 1e-8;
  return single(certify("minmax", o));
}

const char* const kTitles[] = {"algebraic certification", "Killing contraction", "flat torus", "circle counterexample",
                               "sphere sharpness", "min-max soundness"};

}  // namespace

int main(int argc, char** argv) {
  const std::function<Verdict()> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (only < 0 || only > 6) {
    std::cerr << "criterion must be 1..6\n";
    return 2;
  }
  bool all = true;
  for (int c = 1; c <= 6; ++c) {
    if (only && c != only) continue;
    Verdict v;
    try {
      v = criteria[c - 1]();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    all = all && v.passed;
    std::cout << "criterion " << c << " (" << kTitles[c - 1] << "): " << (v.passed ? "PASS" : "FAIL") << ": " << v.detail << "\n";
  }
  return all ? 0 : 1;
}
