#pragma once

#include <string>

#include <json.hpp>

#include "linespec/ast.hpp"
#include "linespec/certificates.hpp"
#include "linespec/types.hpp"

namespace linespec {

using json = nlohmann::json;

json samples_to_json(const Samples& s);
Samples samples_from_json(const json& j);

json decomposition_to_json(const AtomicDecomposition& d);
AtomicDecomposition decomposition_from_json(const json& j);

/// Solution JSON carries y and tau alongside the solver output so the
/// localization step can run from the file alone.
json solution_to_json(const AstSolution& sol, const Samples& y, double tau);
struct StoredSolution {
  AstSolution sol;
  Samples y;
  double tau = 0.0;
};
StoredSolution solution_from_json(const json& j);

json certificate_report_to_json(const CertificateReport& rep);

/// Samples from a two/three-column CSV (index ignored, re, im) or a JSON
/// file produced by the generate subcommand.
Samples load_samples_file(const std::string& path);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace linespec
