#include "spinorlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace spinorlab {

using json = nlohmann::json;

namespace {

// Trim eigensolver noise so repeated runs print the same digits.
double stable(double x) {
  const double r = std::round(x * 1e10) / 1e10;
  return r == 0.0 ? 0.0 : r;
}

json integer_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

json rational_json(const Rational& q) { return to_string(q); }

template <class S, class Tag>
json multivector_json(const Multivector<S, Tag>& a) {
  json terms = json::array();
  for (const auto& [mask, c] : a.terms()) {
    if constexpr (is_exact_v<S>) {
      terms.push_back({{"mask", mask}, {"re", to_string(c.re)}, {"im", to_string(c.im)}});
    } else {
      terms.push_back({{"mask", mask}, {"re", c.real()}, {"im", c.imag()}});
    }
  }
  return {{"dim", a.dim()}, {"terms", terms}};
}

std::string complex_text(const Complex& z, bool hermitian) {
  if (hermitian || std::abs(z.imag()) < 1e-10) return format_double(stable(z.real()));
  const double im = stable(z.imag());
  return format_double(stable(z.real())) + (im < 0 ? " - " : " + ") + format_double(std::abs(im)) + "i";
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x == 0.0 ? 0.0 : x);
  return buf;
}

json to_json(const CliffordElement<GaussianRational>& a) { return multivector_json(a); }
json to_json(const CliffordElement<Complex>& a) { return multivector_json(a); }
json to_json(const ExteriorElement<GaussianRational>& a) { return multivector_json(a); }

json to_json(const SuiteResult& r) {
  json j{{"suite", r.id},
         {"n_range", {r.n_min, r.n_max}},
         {"trials", r.trials},
         {"seed", r.seed},
         {"exact", r.exact},
         {"max_residual", r.max_residual},
         {"checks", r.checks},
         {"failures", r.failures},
         {"passed", r.passed},
         {"failed_n", r.failed_n},
         {"notes", r.notes}};
  if (!r.exact) j["tolerance"] = r.tolerance;
  if (r.counterexample) j["counterexample"] = *r.counterexample;
  return j;
}

json to_json(const SpectrumReport& r) {
  json lines = json::array();
  for (const auto& e : r.eigenvalues) {
    json value = r.hermitian ? json(stable(e.value.real())) : json{{"re", stable(e.value.real())}, {"im", stable(e.value.imag())}};
    lines.push_back({{"value", value}, {"multiplicity", e.multiplicity}});
  }
  json residuals = json::object();
  for (const auto& [k, v] : r.residuals) residuals[k] = v;
  json j{{"model", r.model},
         {"operator", r.operator_name},
         {"n", r.n},
         {"cutoff", r.cutoff},
         {"tolerance", r.tolerance},
         {"hermitian", r.hermitian},
         {"eigenvalues", lines},
         {"residuals", residuals}};
  if (r.structure) j["structure"] = *r.structure;
  return j;
}

json to_json(const std::vector<SphereSpectrumLine>& lines) {
  json out = json::array();
  for (const auto& l : lines) {
    json j{{"n", l.n}, {"p", l.p}, {"k", l.k}, {"eigenvalue", integer_json(l.eigenvalue)}};
    if (l.multiplicity) j["multiplicity"] = integer_json(*l.multiplicity);
    out.push_back(std::move(j));
  }
  return {{"model", "sphere"}, {"lines", out}};
}

json to_json(const BoundResult& r) {
  json j{{"alpha", to_string(r.kind)},
         {"statistic", r.statistic},
         {"bound", rational_json(r.bound)},
         {"bound_value", static_cast<double>(r.bound)},
         {"N", integer_json(r.killing_dim)},
         {"vacuous", r.vacuous},
         {"regime", r.regime}};
  if (r.doubled_count_bound) {
    j["doubled_count_bound"] = rational_json(*r.doubled_count_bound);
    j["doubled_count_N"] = integer_json(2 * r.killing_dim);
  }
  return j;
}

json to_json(const SharpnessReport& r) {
  return {{"n", r.n},
          {"p", r.p},
          {"first_eigenvalue", integer_json(r.first_eigenvalue)},
          {"expected", rational_json(r.expected)},
          {"multiplicity", integer_json(r.multiplicity)},
          {"lower_binomial", integer_json(r.lower_binomial)},
          {"upper_binomial", integer_json(r.upper_binomial)},
          {"N", integer_json(r.killing_dim)},
          {"closed_form_count", integer_json(r.closed_form_count)},
          {"bound", rational_json(r.bound)},
          {"margin", rational_json(r.margin)},
          {"passed", r.passed()}};
}

json with_schema(json body) {
  body["schema"] = kReportSchema;
  return body;
}

std::string to_markdown(const std::vector<SuiteResult>& results) {
  std::ostringstream os;
  os << "| suite | n | trials | checks | max residual | result |\n";
  os << "|---|---|---|---|---|---|\n";
  for (const auto& r : results) {
    os << "| " << r.id << " | " << r.n_min << ".." << r.n_max << " | " << r.trials << " | " << r.checks << " | "
       << (r.exact ? (r.failures ? "inexact" : "exact") : format_double(r.max_residual)) << " | " << (r.passed ? "pass" : "FAIL")
       << " |\n";
  }
  for (const auto& r : results) {
    for (const auto& note : r.notes) os << "\n- " << r.id << ": " << note;
    if (r.counterexample) os << "\n- " << r.id << " counterexample: `" << r.counterexample->dump() << "`";
  }
  if (!results.empty()) os << "\n";
  return os.str();
}

std::string to_markdown(const SpectrumReport& r) {
  std::ostringstream os;
  os << "**" << r.model << "** " << r.operator_name << ", n = " << r.n << ", cutoff " << r.cutoff;
  if (r.structure) os << ", structure " << *r.structure;
  os << "\n\n| eigenvalue | multiplicity |\n|---|---|\n";
  for (const auto& e : r.eigenvalues) os << "| " << complex_text(e.value, r.hermitian) << " | " << e.multiplicity << " |\n";
  if (!r.residuals.empty()) {
    os << "\n| residual | value |\n|---|---|\n";
    for (const auto& [k, v] : r.residuals) os << "| " << k << " | " << format_double(v) << " |\n";
  }
  return os.str();
}

std::string to_markdown(const std::vector<SphereSpectrumLine>& lines) {
  std::ostringstream os;
  os << "| n | p | k | eigenvalue | multiplicity |\n|---|---|---|---|---|\n";
  for (const auto& l : lines)
    os << "| " << l.n << " | " << l.p << " | " << l.k << " | " << l.eigenvalue << " | "
       << (l.multiplicity ? l.multiplicity->str() : std::string("-")) << " |\n";
  return os.str();
}

std::string to_markdown(const BoundResult& r, const std::optional<double>& margin) {
  std::ostringstream os;
  os << "| quantity | value |\n|---|---|\n";
  os << "| alpha | " << to_string(r.kind) << " |\n";
  os << "| H statistic | " << r.statistic << " |\n";
  os << "| N | " << r.killing_dim << " |\n";
  os << "| bound on lambda_N^2 | " << r.bound << " |\n";
  if (r.doubled_count_bound) os << "| bound on lambda_2N^2 | " << *r.doubled_count_bound << " |\n";
  if (margin) os << "| margin lambda_N^2 - bound | " << format_double(*margin) << " |\n";
  os << "| regime | " << r.regime << " |\n";
  return os.str();
}

}  // namespace spinorlab
