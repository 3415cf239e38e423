// spinorlab: certification suites, model spectra and eigenvalue bounds.
// Exit codes: 0 pass, 1 certified failure, 2 usage error.

#include "spinorlab/certify.hpp"
#include "spinorlab/flat_models.hpp"
#include "spinorlab/report.hpp"
#include "spinorlab/sphere_spectra.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <regex>

using namespace spinorlab;
using json = nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::pair<int, int> parse_range(const std::string& s) {
  static const std::regex pattern(R"(^\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, pattern)) throw UsageError("--n expects N or A..B, got '" + s + "'");
  const int a = std::stoi(m[1]);
  const int b = m[2].matched ? std::stoi(m[2]) : a;
  if (a < 1 || b < a) throw UsageError("--n range must satisfy 1 <= A <= B");
  return {a, b};
}

Rational parse_rational(const std::string& s, const std::string& flag) {
  static const std::regex pattern(R"(^\s*[-+]?\d+(/\d+)?\s*$)");
  if (!std::regex_match(s, pattern)) throw UsageError(flag + " expects an integer or p/q, got '" + s + "'");
  std::string t = s;
  t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  const Rational q(t);
  return q;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SPINORLAB_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("SPINORLAB_SEED must be a nonnegative integer");
  }
  return 7;
}

void emit(const json& body, const std::string& markdown, const std::string& format) {
  if (format == "json") {
    std::cout << with_schema(body).dump(2) << "\n";
  } else {
    std::cout << markdown;
  }
}

// ---------------------------------------------------------------- certify

struct CertifyArgs {
  std::string suite;
  std::string n_range;
  std::optional<int> trials;
  std::optional<int> cutoff;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
};

int run_certify(const CertifyArgs& a, const std::string& format) {
  SuiteOptions o;
  if (!a.n_range.empty()) std::tie(o.n_min, o.n_max) = parse_range(a.n_range);
  o.trials = a.trials;
  o.cutoff = a.cutoff;
  o.tolerance = a.tolerance;
  o.seed = a.seed ? *a.seed : default_seed();

  std::vector<std::string> ids;
  if (a.suite == "all") {
    for (const auto& s : suite_registry()) ids.push_back(s.id);
  } else {
    ids.push_back(find_suite(a.suite).id);
  }
  std::vector<SuiteResult> results;
  for (const auto& id : ids) {
    try {
      results.push_back(certify(id, o));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    } catch (const std::out_of_range& e) {
      throw UsageError(e.what());
    }
  }
  json body;
  bool all_passed = true;
  for (const auto& r : results) all_passed = all_passed && r.passed;
  if (results.size() == 1) {
    body = to_json(results.front());
  } else {
    json list = json::array();
    for (const auto& r : results) list.push_back(to_json(r));
    body = {{"suites", list}, {"passed", all_passed}};
  }
  emit(body, to_markdown(results), format);
  return all_passed ? kExitPass : kExitFailure;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
  std::string model;
  int n = 1;
  int cutoff = 5;
  std::string structure = "nontrivial";
  std::string op = "twisted-dirac";
  std::optional<int> p;
  std::optional<int> kmax;
};

ModeOperator flat_operator(const SpectrumArgs& a, std::vector<std::pair<std::string, double>>& residuals,
                           std::optional<std::string>& structure) {
  if (a.cutoff < 1) throw UsageError("--K must be at least 1");
  if (a.model == "circle") {
    const auto s = parse_circle_structure(a.structure);
    structure = to_string(s);
    const auto ops = circle_operators(s, a.cutoff);
    const auto sq = verify_square_identity(ops.twisted_dirac, ops.dirac_witten, MeanCurvatureData::unit_circle());
    residuals.emplace_back("square_identity", sq.max_residual);
    residuals.emplace_back("dirac_witten_self_adjointness_defect", self_adjointness_defect(ops.dirac_witten));
    if (a.op == "twisted-dirac") return ops.twisted_dirac;
    if (a.op == "twisted-dirac-squared") return ops.twisted_dirac.squared();
    if (a.op == "euler") return ops.euler;
    if (a.op == "dirac-witten") return ops.dirac_witten;
    if (a.op == "fundamental") return fundamental_dirac_circle(s, a.cutoff);
    throw UsageError("unknown circle operator '" + a.op + "'");
  }
  if (a.n < 1 || a.n > 4) throw UsageError("torus: --n must lie in 1..4");
  const auto dirac = twisted_dirac_torus(a.n, a.cutoff);
  const auto euler = euler_operator_torus(a.n, a.cutoff);
  residuals.emplace_back("twisted_dirac_minus_euler", block_distance(dirac, euler));
  if (a.op == "twisted-dirac") return dirac;
  if (a.op == "twisted-dirac-squared") return dirac.squared();
  if (a.op == "euler") return euler;
  throw UsageError("unknown torus operator '" + a.op + "'");
}

int run_spectrum(const SpectrumArgs& a, const std::string& format) {
  if (a.model == "sphere") {
    if (!a.p || !a.kmax) throw UsageError("sphere needs --n, --p and --kmax");
    std::vector<SphereSpectrumLine> lines;
    try {
      lines = closed_form_spectrum(a.n, *a.p, *a.kmax);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    emit(to_json(lines), to_markdown(lines), format);
    return kExitPass;
  }
  std::vector<std::pair<std::string, double>> residuals;
  std::optional<std::string> structure;
  const auto op = flat_operator(a, residuals, structure);
  auto rep = spectrum(op);
  rep.structure = structure;
  rep.residuals = residuals;
  emit(to_json(rep), to_markdown(rep), format);
  return kExitPass;
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
  int n = 0;
  std::string alpha2;
  std::optional<std::string> h_mean_sq;
  std::optional<std::string> h_sup_sq;
  std::string killing_dim;
  std::optional<std::string> model;
  int cutoff = 5;
  std::string structure = "nontrivial";
  std::optional<double> lambda2;
};

// N-th smallest lambda^2 of the chosen model; exact for the sphere.
std::variant<Rational, double> model_lambda2(const BoundArgs& a, const BigInt& n_index) {
  if (n_index < 1) throw UsageError("--N must be positive to compare against a spectrum");
  if (*a.model == "sphere") {
    if (a.n < 3 || a.n % 2 == 0) throw UsageError("sphere comparison needs odd n >= 3");
    const auto line = closed_form_spectrum(a.n, (a.n + 1) / 2, 0).front();
    if (n_index > *line.multiplicity)
      throw UsageError("N exceeds the multiplicity of the first closed-form eigenvalue; higher multiplicities are not tabulated");
    return Rational(line.eigenvalue);
  }
  ModeOperator squared;
  if (*a.model == "torus") {
    if (a.n < 1 || a.n > 4) throw UsageError("torus: --n must lie in 1..4");
    squared = twisted_dirac_torus(a.n, a.cutoff).squared();
  } else if (*a.model == "circle") {
    if (a.n != 1) throw UsageError("circle comparison needs --n 1");
    squared = circle_operators(parse_circle_structure(a.structure), a.cutoff).twisted_dirac.squared();
  } else {
    throw UsageError("unknown model '" + *a.model + "'");
  }
  const auto values = sorted_eigenvalues(squared);
  if (n_index > values.size()) throw UsageError("--N exceeds the number of retained eigenvalues");
  return values[static_cast<std::size_t>(n_index) - 1];
}

int run_bound(const BoundArgs& a, const std::string& format) {
  if (a.h_mean_sq.has_value() == a.h_sup_sq.has_value()) throw UsageError("give exactly one of --h-mean-sq and --h-sup-sq");
  if (a.model && a.lambda2) throw UsageError("give at most one of --model and --lambda2");
  BoundInput in;
  in.n = a.n;
  in.alpha2 = parse_rational(a.alpha2, "--alpha2");
  if (a.h_mean_sq) in.h_mean_sq = parse_rational(*a.h_mean_sq, "--h-mean-sq");
  if (a.h_sup_sq) in.h_sup_sq = parse_rational(*a.h_sup_sq, "--h-sup-sq");
  const Rational nq = parse_rational(a.killing_dim, "--N");
  if (denominator(nq) != 1) throw UsageError("--N must be an integer");
  in.killing_dim = numerator(nq);

  BoundResult r;
  try {
    r = theorem_bound(in);
  } catch (const InvalidBoundInput& e) {
    throw UsageError(e.what());
  }
  json body = to_json(r);
  std::optional<double> margin;
  if (a.model || a.lambda2) {
    if (a.model) {
      const auto lam = model_lambda2(a, in.killing_dim);
      if (const auto* exact = std::get_if<Rational>(&lam)) {
        const Rational m = *exact - r.bound;
        body["lambda_N_squared"] = to_string(*exact);
        body["margin_exact"] = to_string(m);
        margin = static_cast<double>(m);
      } else {
        body["lambda_N_squared"] = std::get<double>(lam);
        margin = std::get<double>(lam) - static_cast<double>(r.bound);
      }
      body["model"] = *a.model;
    } else {
      body["lambda_N_squared"] = *a.lambda2;
      margin = *a.lambda2 - static_cast<double>(r.bound);
    }
    if (std::abs(*margin) < 1e-8) margin = 0.0;
    body["margin"] = *margin;
    body["consistent"] = r.vacuous || *margin <= 0.0;
  }
  emit(body, to_markdown(r, margin), format);
  if (margin && !r.vacuous && *margin > 0.0) return kExitFailure;
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinorlab: spin geometry certification and spectra"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "md"}));

  CertifyArgs cargs;
  auto* certify_cmd = app.add_subcommand("certify", "run a certification suite (or 'all')");
  certify_cmd->add_option("suite", cargs.suite, "suite id")->required();
  certify_cmd->add_option("--n", cargs.n_range, "dimension or range A..B");
  certify_cmd->add_option("--trials", cargs.trials, "random trials per n");
  certify_cmd->add_option("--K,--cutoff", cargs.cutoff, "Fourier cutoff for flat-model suites");
  certify_cmd->add_option("--seed", cargs.seed, "seed (default: SPINORLAB_SEED or 7)");
  certify_cmd->add_option("--tolerance", cargs.tolerance, "residual tolerance for numeric suites");
  certify_cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "md"}));

  auto* list_cmd = app.add_subcommand("list", "list certification suites");
  list_cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "md"}));

  SpectrumArgs sargs;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "spectrum of a model operator");
  spectrum_cmd->add_option("model", sargs.model, "circle, torus or sphere")
      ->required()
      ->check(CLI::IsMember({"circle", "torus", "sphere"}));
  spectrum_cmd->add_option("--n", sargs.n, "dimension");
  spectrum_cmd->add_option("--K,--cutoff", sargs.cutoff, "Fourier cutoff");
  spectrum_cmd->add_option("--structure", sargs.structure, "circle tangent spin structure: trivial or nontrivial");
  spectrum_cmd->add_option("--operator", sargs.op,
                           "twisted-dirac, twisted-dirac-squared, euler, dirac-witten (circle), fundamental (circle)");
  spectrum_cmd->add_option("--p", sargs.p, "sphere: form degree");
  spectrum_cmd->add_option("--kmax", sargs.kmax, "sphere: last k");
  spectrum_cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "md"}));

  BoundArgs bargs;
  auto* bound_cmd = app.add_subcommand("bound", "eigenvalue bound from Kahlerian Killing spinors");
  bound_cmd->add_option("--n", bargs.n, "dimension")->required();
  bound_cmd->add_option("--alpha2", bargs.alpha2, "alpha^2 as integer or p/q; negative for imaginary alpha")->required();
  bound_cmd->add_option("--h-mean-sq", bargs.h_mean_sq, "volume average of |H|^2");
  bound_cmd->add_option("--h-sup-sq", bargs.h_sup_sq, "sup of |H|^2");
  bound_cmd->add_option("--N", bargs.killing_dim, "dimension of the Killing spinor space")->required();
  bound_cmd->add_option("--model", bargs.model, "compare against sphere, torus or circle");
  bound_cmd->add_option("--K,--cutoff", bargs.cutoff, "Fourier cutoff for flat models");
  bound_cmd->add_option("--structure", bargs.structure, "circle tangent spin structure");
  bound_cmd->add_option("--lambda2", bargs.lambda2, "supplied lambda_N^2");
  bound_cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "md"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*certify_cmd) return run_certify(cargs, format);
    if (*spectrum_cmd) return run_spectrum(sargs, format);
    if (*bound_cmd) return run_bound(bargs, format);
    if (*list_cmd) {
      json list = json::array();
      std::string md = "| suite | n | description |\n|---|---|---|\n";
      for (const auto& s : suite_registry()) {
        list.push_back({{"suite", s.id}, {"n_range", {s.default_n_min, s.default_n_max}}, {"exact", s.exact}, {"description", s.description}});
        md += "| " + s.id + " | " + std::to_string(s.default_n_min) + ".." + std::to_string(s.default_n_max) + " | " + s.description + " |\n";
      }
      emit(json{{"suites", list}}, md, format);
      return kExitPass;
    }
  } catch (const UnknownSuite& e) {
    std::cerr << "spinorlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "spinorlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "spinorlab: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
