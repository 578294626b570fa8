#pragma once

#include "deform/matrix.hpp"
#include "deform/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace deform {

// Monomial in a fixed generator list, stored as an exponent vector.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<unsigned> exponents);

    static Monomial unit(size_t generator_count) { return Monomial(std::vector<unsigned>(generator_count, 0)); }

    const std::vector<unsigned>& exponents() const { return exps_; }
    unsigned total_degree() const { return degree_; }
    bool is_unit() const { return degree_ == 0; }

    Monomial operator*(const Monomial& other) const;
    bool divides(const Monomial& other) const;

    bool operator==(const Monomial& other) const = default;
    // Graded order: total degree first, then lexicographic on exponents.
    bool operator<(const Monomial& other) const;

    std::string to_string(const std::vector<std::string>& generator_names) const;

private:
    std::vector<unsigned> exps_;
    unsigned degree_ = 0;
};

// A finite-dimensional local commutative Q-algebra A with A/m_A = Q.
//
// Two presentations share this type. Truncated monomial quotients
// Q[x_1..x_k]/(m^N + monomial relations) carry their monomial basis; algebras
// derived from them (fiber products, quotients along extensions) carry a
// plain named basis with explicit structure constants. In both cases basis
// element 0 is the unit and all other basis elements span the maximal ideal.
class ArtinAlgebra {
public:
    using Ptr = std::shared_ptr<const ArtinAlgebra>;

    int dim() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& basis_names() const { return names_; }
    // Formal degree of each basis element: total degree for monomial bases,
    // m-adic order otherwise. Element 0 has degree 0, the rest are >= 1.
    const std::vector<int>& basis_degrees() const { return degrees_; }
    int nil_index() const { return nil_index_; }

    bool has_monomial_basis() const { return !monomials_.empty(); }
    const std::vector<Monomial>& monomial_basis() const { return monomials_; }
    const std::vector<std::string>& generator_names() const { return generator_names_; }
    int truncation_order() const { return truncation_order_; }
    const std::vector<Monomial>& relations() const { return relations_; }

    // Basis index of a generator's monomial, or -1 if it reduces to zero.
    int generator_basis_index(size_t gen) const;
    int monomial_basis_index(const Monomial& m) const;

    // Structure constants: product of basis elements i and j expanded over
    // the basis, as sparse (index, coefficient) pairs sorted by index.
    using SparseVec = std::vector<std::pair<int, Rational>>;
    const SparseVec& product(int i, int j) const { return table_[static_cast<size_t>(i) * names_.size() + j]; }

    // Power filtration m = m^1 > m^2 > ... > m^nil = 0, each as a subspace
    // of the coordinate space.
    const std::vector<Subspace>& power_filtration() const { return powers_; }
    // Basis of the coordinate space adapted to the filtration: order[i] is
    // the m-adic order of adapted basis vector i (order 0 = the unit).
    const QMatrix& adapted_basis() const { return adapted_; }          // columns are adapted vectors
    const QMatrix& adapted_inverse() const { return adapted_inv_; }   // coordinates w.r.t. adapted basis
    const std::vector<int>& adapted_orders() const { return adapted_orders_; }

    std::string describe() const;

    friend ArtinAlgebra::Ptr build_truncated_algebra(const std::vector<std::string>&, int,
                                                     const std::vector<Monomial>&);
    friend ArtinAlgebra::Ptr make_table_algebra(std::vector<std::string>, std::vector<SparseVec>);

private:
    ArtinAlgebra() = default;
    void finalize();  // validates axioms, computes nil index and filtration

    std::vector<std::string> names_;
    std::vector<int> degrees_;
    std::vector<SparseVec> table_;
    int nil_index_ = 1;

    std::vector<Monomial> monomials_;
    std::vector<std::string> generator_names_;
    int truncation_order_ = 1;
    std::vector<Monomial> relations_;

    std::vector<Subspace> powers_;
    QMatrix adapted_, adapted_inv_;
    std::vector<int> adapted_orders_;
};

// Q[x_1..x_k] / (all monomials of degree >= truncation_order, relations).
// The basis is every surviving monomial in graded-lex order, unit first.
ArtinAlgebra::Ptr build_truncated_algebra(const std::vector<std::string>& generator_names,
                                          int truncation_order,
                                          const std::vector<Monomial>& relations);

// Algebra from explicit structure constants on a named basis. Index 0 must
// act as the unit; associativity and commutativity are verified.
ArtinAlgebra::Ptr make_table_algebra(std::vector<std::string> names,
                                     std::vector<ArtinAlgebra::SparseVec> table);

ArtinAlgebra::Ptr rational_field();

class AlgebraElement {
public:
    AlgebraElement(ArtinAlgebra::Ptr algebra, QVector coefficients);
    static AlgebraElement zero(ArtinAlgebra::Ptr algebra);
    static AlgebraElement one(ArtinAlgebra::Ptr algebra);
    static AlgebraElement basis(ArtinAlgebra::Ptr algebra, int index);

    const ArtinAlgebra::Ptr& algebra() const { return algebra_; }
    const QVector& coefficients() const { return coeffs_; }
    const Rational& coefficient(int i) const { return coeffs_[i]; }

    bool is_zero() const { return deform::is_zero(coeffs_); }
    bool in_maximal_ideal() const { return coeffs_[0] == 0; }

    AlgebraElement operator+(const AlgebraElement& other) const;
    AlgebraElement operator-(const AlgebraElement& other) const;
    AlgebraElement scaled(const Rational& c) const;
    bool operator==(const AlgebraElement& other) const;

    std::string to_string() const;

private:
    ArtinAlgebra::Ptr algebra_;
    QVector coeffs_;
};

// Bilinear extension of the multiplication table.
AlgebraElement multiply(const AlgebraElement& u, const AlgebraElement& v);

// Unital algebra morphism, stored as its full matrix on basis elements.
class AlgebraMorphism {
public:
    const ArtinAlgebra::Ptr& source() const { return source_; }
    const ArtinAlgebra::Ptr& target() const { return target_; }
    const QMatrix& matrix() const { return matrix_; }

    AlgebraElement apply(const AlgebraElement& x) const;
    // Image of source basis element i.
    AlgebraElement image_of_basis(int i) const;
    bool is_surjective() const;

    friend AlgebraMorphism make_morphism(ArtinAlgebra::Ptr, ArtinAlgebra::Ptr,
                                         const std::vector<AlgebraElement>&);
    friend AlgebraMorphism make_morphism_on_basis(ArtinAlgebra::Ptr, ArtinAlgebra::Ptr, QMatrix);
    friend AlgebraMorphism compose(const AlgebraMorphism& g, const AlgebraMorphism& f);
    friend AlgebraMorphism identity_morphism(ArtinAlgebra::Ptr);

private:
    AlgebraMorphism() = default;
    ArtinAlgebra::Ptr source_, target_;
    QMatrix matrix_;  // dim(target) x dim(source)
};

// Morphism from images of the source generators (monomial-presented source);
// the induced basis map is validated to be unital and multiplicative.
AlgebraMorphism make_morphism(ArtinAlgebra::Ptr source, ArtinAlgebra::Ptr target,
                              const std::vector<AlgebraElement>& generator_images);

// Morphism from an explicit basis matrix; same validation.
AlgebraMorphism make_morphism_on_basis(ArtinAlgebra::Ptr source, ArtinAlgebra::Ptr target,
                                       QMatrix matrix);

AlgebraMorphism identity_morphism(ArtinAlgebra::Ptr algebra);
AlgebraMorphism compose(const AlgebraMorphism& g, const AlgebraMorphism& f);

// Truncation morphism between monomial algebras on the same generators,
// sending each generator to its same-named image.
AlgebraMorphism truncation_morphism(ArtinAlgebra::Ptr source, ArtinAlgebra::Ptr target);

// Surjection A -> A/W with A's ideal subspace W; quotient basis elements keep
// the names of the surviving A basis elements.
struct QuotientPresentation {
    ArtinAlgebra::Ptr quotient;
    AlgebraMorphism projection;
};
QuotientPresentation quotient_by_ideal(ArtinAlgebra::Ptr algebra, const Subspace& ideal);

// A surjection of artinian algebras whose kernel I satisfies I * m_A = 0,
// together with a chosen linear splitting of the projection.
class SmallExtension {
public:
    const ArtinAlgebra::Ptr& total() const { return projection_.source(); }
    const ArtinAlgebra::Ptr& quotient() const { return projection_.target(); }
    const AlgebraMorphism& projection() const { return projection_; }
    const std::vector<AlgebraElement>& ideal_basis() const { return ideal_basis_; }
    int ideal_dim() const { return static_cast<int>(ideal_basis_.size()); }
    // Section of the projection: dim(total) x dim(quotient), projection o
    // splitting = identity, unit goes to unit.
    const QMatrix& splitting() const { return splitting_; }

    AlgebraElement split(const AlgebraElement& x) const;
    // Replace the splitting by splitting + perturbation; the perturbation
    // must map the quotient into the ideal and kill the unit.
    SmallExtension with_perturbed_splitting(const QMatrix& perturbation) const;

    // Human-readable ideal basis element name, for reports.
    std::string ideal_element_name(int i) const;

    friend SmallExtension make_small_extension(AlgebraMorphism);

private:
    explicit SmallExtension(AlgebraMorphism projection) : projection_(std::move(projection)) {}
    AlgebraMorphism projection_;
    std::vector<AlgebraElement> ideal_basis_;
    QMatrix splitting_;
};

// Validates surjectivity and I * m_A = 0, picks the canonical splitting
// (name-matched monomials when possible, RREF section otherwise).
SmallExtension make_small_extension(AlgebraMorphism projection);

// Factors a surjection A -> A-bar into a chain of small extensions along the
// filtration of the kernel by powers of m_A. The first step's total is A and
// the last step's quotient is the given A-bar object.
std::vector<SmallExtension> factor_small_extensions(const AlgebraMorphism& surjection);

struct FiberProduct {
    ArtinAlgebra::Ptr algebra;           // B x_A C on an explicit pair basis
    AlgebraMorphism to_first;            // projection onto B
    AlgebraMorphism to_second;           // projection onto C
    // Pair-basis vectors as elements of B + C (dim B + dim C coordinates).
    std::vector<QVector> pair_basis;
};

// {(b, c) : f(b) = g(c)} with componentwise operations, re-presented as an
// artinian algebra with an explicit basis and multiplication table.
FiberProduct fiber_product(const AlgebraMorphism& f, const AlgebraMorphism& g);

}  // namespace deform
