#pragma once

#include "deform/bicomplex.hpp"
#include "deform/deformation.hpp"
#include "deform/dgla.hpp"
#include "deform/rng.hpp"

#include <optional>
#include <string>
#include <vector>

namespace deform {

// Documented behavior of a catalog entry, re-verified every time the
// catalog is produced.
struct CatalogExpected {
    std::map<int, int> cohomology_dims;
    bool abelian = false;
    enum class Lifting {
        NotApplicable,
        // Witness: first degree-1 basis vector tensor t over Q[t]/(t^2),
        // lifted along Q[t]/(t^3) -> Q[t]/(t^2).
        ObstructedOverT3,
        UnobstructedOverT3,
    } lifting = Lifting::NotApplicable;
    std::optional<int> invariant_dim_degree1;  // for entries with an action
};

struct CatalogEntry {
    std::string name;
    Dgla::Ptr dgla;
    std::optional<GroupAction> action;
    CatalogExpected expected;
};

// Fixture registry. Every entry is validated and its expected table is
// re-verified by the owning operations before being returned.
std::vector<CatalogEntry> catalog();
CatalogEntry catalog_entry(const std::string& name);

// Description of Def_L(A) for a zero-bracket DGLA: Maurer-Cartan solutions
// are the degree-1 cocycles with ideal coefficients, gauge orbits are shifts
// by coboundaries, so classes in H^1 tensor m_A classify orbits exactly.
class AbelianDeformations {
public:
    AbelianDeformations(Dgla::Ptr dgla, ArtinAlgebra::Ptr algebra);

    const CohomologyBasis& h1() const { return h1_; }
    // One H^1 coordinate vector per positive-degree algebra basis element.
    QMatrix orbit_coordinates(const DglaCochain& x) const;
    bool is_solution(const DglaCochain& x) const;
    bool equivalent(const DglaCochain& x, const DglaCochain& y) const;

private:
    Dgla::Ptr dgla_;
    ArtinAlgebra::Ptr algebra_;
    CohomologyBasis h1_;
};

AbelianDeformations def_abelian_oracle(Dgla::Ptr dgla, ArtinAlgebra::Ptr algebra);

// Finite group with a named multiplication table.
struct FiniteGroup {
    std::vector<std::string> names;
    std::vector<std::vector<int>> table;

    int order() const { return static_cast<int>(names.size()); }
    int mult(int a, int b) const { return table[a][b]; }
    int identity() const;
    void validate() const;  // throws InputError on defects

    static FiniteGroup cyclic(int n);
};

// Augmented exact complex 0 -> V -> R^0 -> ... -> R^Q of G-representations.
struct EquivariantComplex {
    FiniteGroup group;
    int v_dim = 0;
    std::vector<QMatrix> v_action;                 // per group element, v_dim square
    std::vector<int> r_dims;                       // R^0 .. R^Q
    std::vector<std::vector<QMatrix>> r_action;    // [q][element]
    std::vector<QMatrix> r_differential;           // R^q -> R^{q+1}
    QMatrix augmentation;                          // V -> R^0

    int top_degree() const { return static_cast<int>(r_dims.size()) - 1; }
    // Throws on representation or equivariance defects; returns whether the
    // augmented complex is exact (rank-checked, tail included).
    bool validate_and_check_exactness() const;
};

struct GroupCechModel {
    AugmentedBicomplex model;
    bool input_exact = false;       // exactness of the augmented R complex
    HypothesesReport hypotheses;    // re-verified by rank on the result
};

// Body(p, q) = functions G^p -> R^q with the group-cochain horizontal
// differential and the coefficient vertical differential; left edge is the
// group cochain complex of V, bottom edge the invariants of R. Čech levels
// run to P = Q + 1 by default so that every transferred degree stays inside
// the averaged-exact range.
GroupCechModel group_cech_model(const EquivariantComplex& data, int cech_levels = -1);

// Random instance for seeded suites: cyclic group of order 1..4, V a
// one-dimensional character, R built from the constant resolution plus
// random equivariant cones with scaled differentials.
EquivariantComplex random_equivariant_complex(Rng& rng);

// Abstract simplicial complex on named vertices, closed under faces.
struct SimplicialComplex {
    std::vector<std::string> vertex_names;
    // by_dim[d] = sorted list of d-simplices as sorted vertex index lists.
    std::vector<std::vector<std::vector<int>>> by_dim;

    static SimplicialComplex from_maximal(const std::vector<std::vector<std::string>>& maximal);
    int dim() const { return static_cast<int>(by_dim.size()) - 1; }
    int count(int d) const
    {
        return d < 0 || d > dim() ? 0 : static_cast<int>(by_dim[d].size());
    }

    static SimplicialComplex boundary_of_simplex(int n);  // boundary of the n-simplex
};

// Body(p, q) = direct sum over p-simplices of the simplicial q-cochains of
// their closed stars; horizontal is the Čech alternating restriction sum,
// vertical the simplicial coboundary. Left edge: star-cover Čech complex
// with constant coefficients; bottom edge: simplicial cochains of K.
AugmentedBicomplex cech_simplicial_model(const SimplicialComplex& K);

// Simplicial cochain complex of K itself (the independent comparison point
// for the model's edges).
CochainComplex::Ptr simplicial_cochain_complex(const SimplicialComplex& K);

}  // namespace deform
