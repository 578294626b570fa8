#pragma once

#include "deform/dgla.hpp"
#include "deform/matrix.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace deform {

// Finite cochain complex with named bases and exact differentials.
class CochainComplex {
public:
    using Ptr = std::shared_ptr<const CochainComplex>;

    // Throws when consecutive differentials do not compose to zero.
    static Ptr make(std::map<int, std::vector<std::string>> basis_names,
                    std::map<int, QMatrix> differentials);

    std::vector<int> degrees() const;
    int dim(int degree) const;
    const std::vector<std::string>& names(int degree) const;
    QMatrix differential(int degree) const;  // zero matrix when absent

private:
    CochainComplex() = default;
    std::map<int, std::vector<std::string>> basis_names_;
    std::map<int, QMatrix> differentials_;
};

// Underlying cochain complex of a DGLA.
CochainComplex::Ptr complex_of(const Dgla::Ptr& dgla);

// Basis of H^degree with deterministic pivot-chosen representatives and a
// projection that kills exactly the coboundaries.
class CohomologyBasis {
public:
    int degree() const { return degree_; }
    int dim() const { return static_cast<int>(representatives_.size()); }
    int ambient_dim() const { return projection_.cols(); }
    const std::vector<QVector>& representatives() const { return representatives_; }
    // dim() x ambient matrix; applied to a cocycle it yields class coordinates.
    const QMatrix& projection() const { return projection_; }
    const CochainComplex::Ptr& complex() const { return complex_; }

    bool is_cocycle(const QVector& v) const;

    friend CohomologyBasis cohomology(const CochainComplex::Ptr&, int);

private:
    CohomologyBasis() = default;
    CochainComplex::Ptr complex_;
    int degree_ = 0;
    std::vector<QVector> representatives_;
    QMatrix projection_;
};

CohomologyBasis cohomology(const CochainComplex::Ptr& complex, int degree);

// A class in H^degree, or in H^degree tensor I when ideal labels are set:
// one coordinate vector per ideal basis element.
struct CohomologyClass {
    int degree = 0;
    std::vector<QVector> coordinates;       // size 1, or one per ideal element
    std::vector<std::string> ideal_labels;  // empty for a plain class

    bool is_zero() const;
    const QVector& plain() const { return coordinates.at(0); }
    std::string to_string() const;
};

// Coordinates of a cocycle; throws when the input is not a cocycle.
CohomologyClass class_of(const CohomologyBasis& basis, const QVector& cocycle);

// Class in H tensor I: one cocycle per ideal basis element.
CohomologyClass class_of(const CohomologyBasis& basis, const std::vector<QVector>& cocycles,
                         const std::vector<std::string>& ideal_labels);

struct NoSolution {
    CohomologyClass obstruction;  // the class of the target
};

using PreimageResult = std::variant<QVector, NoSolution>;

// Solves d z = target for z in degree `degree`, target in degree + 1.
// Returns the canonical particular solution, optionally shifted by a kernel
// combination chosen by `randomize` (used to test choice independence).
// When no solution exists the target must be a cocycle (else the input is
// inconsistent and an InputError is thrown) and its class is returned.
PreimageResult preimage_d(const CochainComplex::Ptr& complex, int degree, const QVector& target,
                          const std::function<Rational()>* randomize = nullptr);

}  // namespace deform
