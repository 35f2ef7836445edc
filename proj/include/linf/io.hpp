#pragma once

// JSON documents for algebras, morphisms, gauges and homotopy certificates.
// Operation values are written in Λ form with coefficients as "p/q" strings;
// output is canonical (sorted keys, generators by (degree, label),
// components by (arity, args)).

#include "linf/convolution.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace linf::io {

using Json = nlohmann::json;

Json algebra_to_json(const LInftyAlgebra& g);
Json morphism_to_json(const LInftyMorphism& f);
Json gauge_to_json(const LInftyAlgebra& source, const LInftyAlgebra& target, const Cochain& h);
Json certificate_to_json(const HomotopyCertificate& c);
// Components of a cochain of the given shifted degree, in Λ form.
Json components_to_json(const Cochain& c, const LInftyAlgebra& source, const LInftyAlgebra& target);

// References to other documents ("source": "path.json") are resolved
// relative to base. Throws ParseError on malformed input (unknown fields
// included) and ShapeMismatch on a degree violation, naming the generator.
LInftyAlgebra algebra_from_json(const Json& j, const std::filesystem::path& base = {});
LInftyMorphism morphism_from_json(const Json& j, const std::filesystem::path& base = {});
struct GaugeDocument {
  LInftyAlgebra source, target;
  Cochain gauge;
};
GaugeDocument gauge_from_json(const Json& j, const std::filesystem::path& base = {});
// Also throws InvalidCertificate if the certificate does not re-verify.
HomotopyCertificate certificate_from_json(const Json& j, const std::filesystem::path& base = {});
Cochain components_from_json(const Json& j, const LInftyAlgebra& source, const LInftyAlgebra& target,
                             int shifted_degree);

// Reads a file ("-" for stdin); throws ParseError.
Json read_json(const std::string& path);
std::string dump(const Json& j);

}  // namespace linf::io
