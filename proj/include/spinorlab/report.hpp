#pragma once

// JSON and Markdown renderings. Every JSON document carries "schema": 1 at
// the top level; key order is lexicographic so output is byte-stable.

#include "spinorlab/certify.hpp"
#include "spinorlab/clifford.hpp"
#include "spinorlab/flat_models.hpp"
#include "spinorlab/sphere_spectra.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace spinorlab {

inline constexpr int kReportSchema = 1;

// {dim, terms: [{mask, re, im}]}; exact coefficients are "p/q" strings.
nlohmann::json to_json(const CliffordElement<GaussianRational>& a);
nlohmann::json to_json(const CliffordElement<Complex>& a);
nlohmann::json to_json(const ExteriorElement<GaussianRational>& a);

nlohmann::json to_json(const SuiteResult& r);
nlohmann::json to_json(const SpectrumReport& r);
nlohmann::json to_json(const std::vector<SphereSpectrumLine>& lines);
nlohmann::json to_json(const BoundResult& r);
nlohmann::json to_json(const SharpnessReport& r);

nlohmann::json with_schema(nlohmann::json body);

std::string to_markdown(const std::vector<SuiteResult>& results);
std::string to_markdown(const SpectrumReport& r);
std::string to_markdown(const std::vector<SphereSpectrumLine>& lines);
std::string to_markdown(const BoundResult& r, const std::optional<double>& margin);

std::string format_double(double x);

}  // namespace spinorlab
