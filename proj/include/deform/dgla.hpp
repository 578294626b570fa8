#pragma once

#include "deform/artin.hpp"
#include "deform/matrix.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace deform {

// Finitely supported graded vector space over Q with named bases.
struct GradedVectorSpace {
    std::map<int, std::vector<std::string>> basis_names;

    std::vector<int> degrees() const;
    int dim(int degree) const;
    const std::string& name(int degree, int index) const { return basis_names.at(degree)[index]; }
};

// Key of a bracket block [L^p, L^q] -> L^{p+q}.
struct BracketKey {
    int p, q;
    auto operator<=>(const BracketKey&) const = default;
};

// One structure constant: [e_i^p, e_j^q] has coefficient c on e_k^{p+q}.
struct BracketEntry {
    int p, i, q, j, k;
    Rational c;
};

// Differential graded Lie algebra on explicit structure constants.
//
// Data members are plain so that tests can poke single entries and feed the
// mutants to validate(); make_dgla() is the validating constructor for
// everything else.
struct Dgla {
    using Ptr = std::shared_ptr<const Dgla>;

    GradedVectorSpace space;
    // differential[p]: matrix dim(p+1) x dim(p); absent keys are zero maps.
    std::map<int, QMatrix> differential;
    // bracket[{p,q}][i][j] = sparse expansion over the basis of L^{p+q};
    // stores both orders after symmetrization.
    std::map<BracketKey, std::map<std::pair<int, int>, ArtinAlgebra::SparseVec>> bracket;

    int dim(int degree) const { return space.dim(degree); }
    std::vector<int> degrees() const { return space.degrees(); }
    QMatrix differential_matrix(int degree) const;  // zero matrix when absent
    // Expansion of [e_i^p, e_j^q] as a dense vector over L^{p+q}.
    QVector bracket_of_basis(int p, int i, int q, int j) const;
    bool bracket_is_zero() const;
};

struct AxiomViolation {
    enum class Axiom { DifferentialSquare, SkewSymmetry, Jacobi, Leibniz };
    Axiom axiom;
    // Witness basis tuple: degrees and indices, as many as the axiom uses.
    std::vector<int> degrees;
    std::vector<int> indices;
    std::string description;
};

struct DglaValidation {
    std::vector<AxiomViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

// Checks the four axiom families exactly on all basis tuples and reports
// every violation with its witness.
DglaValidation validate(const Dgla& dgla);

// Builds a Dgla from raw data. Symmetrizes the bracket: a missing opposite
// order is filled in with the sign rule, a present one must agree with it.
// Dimension errors and inconsistent redundant data throw; axiom violations
// are left to validate() when `check_axioms` is false.
Dgla::Ptr make_dgla(GradedVectorSpace space, std::map<int, QMatrix> differential,
                    const std::vector<BracketEntry>& bracket_entries, bool check_axioms = true);

// L1 + L2 with blockwise structure; basis names get prefixed when they clash.
Dgla::Ptr direct_sum(const Dgla::Ptr& a, const Dgla::Ptr& b);

// Transport of structure along per-degree invertible matrices: the new basis
// vectors are the columns of maps[p] expressed in the old basis.
Dgla::Ptr transport(const Dgla::Ptr& dgla, const std::map<int, QMatrix>& maps);

class DglaMorphism {
public:
    const Dgla::Ptr& source() const { return source_; }
    const Dgla::Ptr& target() const { return target_; }
    QMatrix map_matrix(int degree) const;  // zero when absent

    friend DglaMorphism make_dgla_morphism(Dgla::Ptr, Dgla::Ptr, std::map<int, QMatrix>);
    friend DglaMorphism identity_dgla_morphism(Dgla::Ptr);

private:
    DglaMorphism() = default;
    Dgla::Ptr source_, target_;
    std::map<int, QMatrix> maps_;
};

// Validates that the maps commute with the differentials and preserve the
// brackets on all basis pairs.
DglaMorphism make_dgla_morphism(Dgla::Ptr source, Dgla::Ptr target, std::map<int, QMatrix> maps);
DglaMorphism identity_dgla_morphism(Dgla::Ptr dgla);

// A finite group acting on a DGLA by automorphisms.
struct GroupAction {
    std::vector<std::string> element_names;
    std::vector<std::vector<int>> table;  // table[a][b] = index of a*b
    // matrices[g][degree]: invertible action of element g; absent degrees act
    // as the identity.
    std::vector<std::map<int, QMatrix>> matrices;

    int order() const { return static_cast<int>(element_names.size()); }
    int identity_index() const;
    QMatrix action_matrix(int element, int degree, int dim) const;
};

// Checks the group table axioms and that every element acts as a DGLA
// automorphism of `dgla`.
void validate_action(const Dgla::Ptr& dgla, const GroupAction& action);

struct SubDgla {
    Dgla::Ptr sub;
    DglaMorphism inclusion;
};

// Degreewise kernel of f - g with the restricted differential and bracket.
SubDgla equalizer_subalgebra(const DglaMorphism& f, const DglaMorphism& g);

// Fixed subalgebra of a validated group action; computed from the averaging
// projector (1/|G|) sum of the action matrices.
SubDgla invariant_subalgebra(const Dgla::Ptr& dgla, const GroupAction& action);

// Averaging projector of the action in one degree.
QMatrix averaging_projector(const Dgla::Ptr& dgla, const GroupAction& action, int degree);

// An element of L^degree tensor m_A, stored as a dim(L^degree) x dim(A)
// coefficient matrix whose unit column is zero.
class DglaCochain {
public:
    DglaCochain(Dgla::Ptr dgla, ArtinAlgebra::Ptr algebra, int degree);
    DglaCochain(Dgla::Ptr dgla, ArtinAlgebra::Ptr algebra, int degree, QMatrix coefficients);

    const Dgla::Ptr& dgla() const { return dgla_; }
    const ArtinAlgebra::Ptr& algebra() const { return algebra_; }
    int degree() const { return degree_; }
    const QMatrix& coefficients() const { return coeffs_; }
    const Rational& coefficient(int basis_index, int monomial_index) const
    {
        return coeffs_.at(basis_index, monomial_index);
    }

    bool is_zero() const { return coeffs_.is_zero(); }
    DglaCochain operator+(const DglaCochain& other) const;
    DglaCochain operator-(const DglaCochain& other) const;
    DglaCochain scaled(const Rational& c) const;
    bool operator==(const DglaCochain& other) const;

    // Pushes the algebra coefficients through a morphism of algebras, e.g.
    // reduction along a small extension.
    DglaCochain map_coefficients(const AlgebraMorphism& morphism) const;
    // Applies a linear section (splitting) to the algebra coefficients.
    DglaCochain split_coefficients(const SmallExtension& extension) const;

    std::string to_string() const;

private:
    Dgla::Ptr dgla_;
    ArtinAlgebra::Ptr algebra_;
    int degree_;
    QMatrix coeffs_;
};

// d(e tensor a) = de tensor a, extended linearly.
DglaCochain differential_eval(const DglaCochain& u);

// [e tensor a, e' tensor a'] = [e, e'] tensor a a', extended bilinearly.
DglaCochain bracket_eval(const DglaCochain& u, const DglaCochain& v);

// Image of a cochain under a DGLA morphism (coefficientwise on the L factor).
DglaCochain map_cochain(const DglaMorphism& morphism, const DglaCochain& u);

}  // namespace deform
