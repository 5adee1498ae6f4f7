#pragma once

#include "extlin/chaincx.hpp"
#include "extlin/dglocsys.hpp"
#include "extlin/locsys.hpp"
#include "extlin/quantum.hpp"

#include <json.hpp>

#include <string>

namespace extlin::io {

using json = nlohmann::json;

// Writers. Matrices are row-major arrays of scalar strings; objects, morphisms and degrees
// are keyed by name.

json to_json(const Scalar& s);
json to_json(const Matrix& m);
json to_json(const FinGroupoid& g);
/// {"source", "target", "objects": {x: f(x)}, "morphisms": {m: f(m)}}.
json to_json(const GroupoidFunctor& f);
json to_json(const LocalSystem& v);
/// {"domain", "codomain", "map", "components": {x: matrix}}.
json to_json(const LocMorphism& phi);
json to_json(const ChainComplex& c);
/// {"domain", "codomain", "maps": {n: matrix}}.
json to_json(const ChainMap& f);
json to_json(const TruncatedSimplicialComplex& v);
/// Mirrors the local system form with chain complexes as fibers and {n: matrix} transports.
json to_json(const DgLocalSystem& v);
json to_json(const DgLocMorphism& phi);
/// {"n": dim} over the nonzero degrees.
json to_json(const Homology& h);
json to_json(const Classification& c);
json to_json(const QubitReport& r);

// Readers. Malformed input raises SchemaError with a path like "$.fibers.x.dim"; law
// violations raise ValidationError prefixed with the path of the offending value.

Scalar scalar_from_json(const json& j, const std::string& path = "$");
Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& path = "$");
/// Full form or one of the sugars {"group"}, {"codiscrete"}, {"discrete"}, {"action"}.
Grpd groupoid_from_json(const json& j, const std::string& path = "$");
/// Source may be omitted when `source` is given; "identity" and a target-only form into the
/// terminal groupoid are accepted.
GroupoidFunctor functor_from_json(const json& j, const Grpd& source, const Grpd& target, const std::string& path = "$");
GroupoidFunctor functor_from_json(const json& j, const std::string& path = "$");
LocalSystem locsys_from_json(const json& j, const std::string& path = "$");
LocMorphism loc_morphism_from_json(const json& j, const std::string& path = "$");
ChainComplex complex_from_json(const json& j, const std::string& path = "$");
ChainMap chain_map_from_json(const json& j, const std::string& path = "$");
/// Full form {"levels", "faces", "degeneracies"} or {"constant": complex, "truncation": N}.
TruncatedSimplicialComplex simplicial_from_json(const json& j, const std::string& path = "$");
DgLocalSystem dg_from_json(const json& j, const std::string& path = "$");
/// Accepts {"identity": system} for the identity morphism.
DgLocMorphism dg_morphism_from_json(const json& j, const std::string& path = "$");

/// Which reader a document belongs to, judged by its keys; empty when none fits.
std::string detect_kind(const json& j);
/// Parses a document of any kind, running every construction-time check.
void validate_document(const json& j);

} // namespace extlin::io
