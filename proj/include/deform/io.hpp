#pragma once

#include "deform/artin.hpp"
#include "deform/bicomplex.hpp"
#include "deform/deformation.hpp"
#include "deform/dgla.hpp"
#include "deform/models.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace deform {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& value);

// Rationals appear as integers or "p/q" strings.
Rational json_to_rational(const Json& value);
Json rational_to_json(const Rational& value);

// Matrices are arrays of rows; an empty array denotes the zero matrix of the
// expected shape.
QMatrix json_to_matrix(const Json& value, int rows, int cols);
Json matrix_to_json(const QMatrix& value);

// {"generators": [...], "truncation": N, "relations": [[exponents], ...]}
ArtinAlgebra::Ptr load_algebra(const Json& value);
Json algebra_to_json(const ArtinAlgebra& algebra);

// Shorthand: "e" (dual numbers), "t^3" (one generator, truncation 3), or a
// path to an algebra description file.
ArtinAlgebra::Ptr parse_algebra_spec(const std::string& spec);

// {"degrees": [...], "dims": [...], "basis_names": [[...]], "differential":
//  [matrix per degree], "bracket": [[p,i,q,j,k,c], ...], "action": {...}}
Dgla::Ptr load_dgla(const Json& value);
std::optional<GroupAction> load_dgla_action(const Json& value, const Dgla::Ptr& dgla);

// {"degree": d, "algebra": spec?, "terms": [{"basis": name, "monomial":
//  [exponents], "coeff": c}, ...]}
DglaCochain load_cochain(const Json& value, const Dgla::Ptr& dgla, ArtinAlgebra::Ptr algebra);
Json cochain_to_json(const DglaCochain& cochain);

// {"images": [[{"monomial": [...], "coeff": c}, ...] per source generator]}
AlgebraMorphism load_algebra_morphism(const Json& value, ArtinAlgebra::Ptr source,
                                      ArtinAlgebra::Ptr target);

// {"total": spec, "quotient": spec, "projection": optional algebra morphism}
SmallExtension load_extension(const Json& value);

// {"maps": {"degree": matrix, ...}}
DglaMorphism load_dgla_morphism(const Json& value, Dgla::Ptr source, Dgla::Ptr target);

// {"P": ..., "Q": ..., "dims": [[...]], "horizontal": {"p,q": matrix},
//  "vertical": {...}, "left_edge"/"bottom_edge": complexes,
//  "left_augmentation"/"bottom_augmentation": {"p": matrix}}
AugmentedBicomplex load_bicomplex(const Json& value);
Json bicomplex_to_json(const AugmentedBicomplex& ab);

// {"simplices": [["a","b","c"], ...]} (maximal simplices)
SimplicialComplex load_simplicial_complex(const Json& value);

// {"elements": [...], "table": [[...]], "V": {"dim": n, "action": [matrix
//  per element]}, "R": {"dims": [...], "action": [[matrix per element] per
//  degree], "differential": [matrix, ...]}, "augmentation": matrix}
EquivariantComplex load_equivariant_complex(const Json& value);

Json class_to_json(const CohomologyClass& cls);

}  // namespace deform
