#pragma once

#include "deform/artin.hpp"
#include "deform/dgla.hpp"
#include "deform/homology.hpp"

#include <optional>
#include <variant>

namespace deform {

// dx + (1/2)[x, x] for a degree-1 cochain.
DglaCochain mc_residual(const DglaCochain& x);
bool is_mc(const DglaCochain& x);

// A degree-1 cochain with exactly vanishing Maurer-Cartan residual.
class McSolution {
public:
    // Throws InputError when the cochain has the wrong degree or a nonzero
    // residual.
    static McSolution verify(DglaCochain x);
    const DglaCochain& cochain() const { return cochain_; }

private:
    explicit McSolution(DglaCochain x) : cochain_(std::move(x)) {}
    DglaCochain cochain_;
};

// A degree-0 gauge parameter; any such cochain is admissible.
class GaugeWitness {
public:
    explicit GaugeWitness(DglaCochain parameter);
    static GaugeWitness zero(Dgla::Ptr dgla, ArtinAlgebra::Ptr algebra);
    const DglaCochain& parameter() const { return parameter_; }

private:
    DglaCochain parameter_;
};

// e^a * x = x + sum_{n>=0} [a,-]^n / (n+1)!  ([a,x] - da).
// The series terminates because [a,-] raises the m-adic order.
DglaCochain gauge_act(const GaugeWitness& a, const DglaCochain& x);

// c with e^c = e^a e^b, by the Dynkin expansion of the
// Baker-Campbell-Hausdorff series truncated at the nilpotency order.
GaugeWitness gauge_compose(const GaugeWitness& a, const GaugeWitness& b);

struct GaugeOptions {
    // Grid radius for the bounded search over stabilizer directions when the
    // staged decision is not complete.
    int branch_grid_radius = 1;
    int max_candidates_per_stage = 64;
    int max_nodes = 4096;
};

struct EquivalenceVerdict {
    enum class Kind { Equivalent, NotEquivalent, Unknown };
    Kind kind;
    // Verified witness for Equivalent.
    std::optional<GaugeWitness> witness;
    // Filtration stage of the failure or search exhaustion (1-based).
    int stage = 0;
    // For NotEquivalent: the H^1-valued class of the stage discrepancy
    // (gauge-transported x minus y), one coordinate vector per stage
    // coset basis element.
    std::optional<CohomologyClass> certificate;
};

// Decides gauge equivalence along the filtration by powers of m_A. The
// verdict NotEquivalent is emitted only when the staged procedure is
// complete: at the first stage, for zero-bracket algebras, or when the
// degree-0 differential has trivial kernel (stage corrections are then
// unique). Otherwise a bounded search runs and exhaustion yields Unknown.
EquivalenceVerdict gauge_equivalent(const McSolution& x, const McSolution& y,
                                    const GaugeOptions& options = {});

struct TangentReport {
    int dim = 0;
    bool representatives_mc = false;
    bool representatives_pairwise_inequivalent = false;
    bool every_solution_covered = false;
    bool ok() const
    {
        return representatives_mc && representatives_pairwise_inequivalent && every_solution_covered;
    }
};

struct TangentSpace {
    CohomologyBasis h1;
    TangentReport report;
};

// H^1 with a verification that over the dual numbers the Maurer-Cartan set
// modulo gauge is exactly the representative span.
TangentSpace tangent_space(const Dgla::Ptr& dgla);

struct ObstructionReport {
    SmallExtension extension;
    DglaCochain lift_attempt;   // split lift of the downstairs solution
    DglaCochain residual;       // h = d lift + (1/2)[lift, lift], coefficients in I
    CohomologyClass obstruction;  // class in H^2 tensor I

    bool obstructed() const { return !obstruction.is_zero(); }
};

// Lifts along the splitting, forms the residual h, verifies d h = 0 and that
// h has coefficients in the ideal, and returns its class in H^2 tensor I.
ObstructionReport obstruction_class(const SmallExtension& extension, const McSolution& downstairs);

using LiftResult = std::variant<McSolution, ObstructionReport>;

// Constructive completeness: when the obstruction class vanishes, returns a
// verified Maurer-Cartan lift reducing to the input.
LiftResult lift_mc(const SmallExtension& extension, const McSolution& downstairs);

struct LiftOutcome {
    std::optional<McSolution> lift;             // set on success
    std::optional<ObstructionReport> failure;   // set on obstruction
    int failed_stage = 0;                       // 1-based stage of the failure
    std::vector<SmallExtension> stages;         // the factored chain, total side first
};

// Stagewise lifting along an arbitrary surjection of artinian algebras.
LiftOutcome lift_along(const AlgebraMorphism& surjection, const McSolution& downstairs);

// Commuting square of small extensions with the induced quotient and ideal
// maps.
struct SmallExtensionMorphism {
    SmallExtension source;  // alpha_1
    SmallExtension target;  // alpha_2
    AlgebraMorphism total_map;
    AlgebraMorphism quotient_map;
    QMatrix ideal_matrix;  // coordinates of phi(iota_l) in the target ideal basis
};

SmallExtensionMorphism make_small_extension_morphism(SmallExtension source, SmallExtension target,
                                                     AlgebraMorphism total_map);

struct NaturalityReport {
    bool equal = false;
    CohomologyClass pushed_then_obstructed;  // ob(alpha_2)(phi-bar x)
    CohomologyClass obstructed_then_mapped;  // (id (x) phi_I) ob(alpha_1)(x)
};

// Runtime self-test of obstruction naturality along a morphism of small
// extensions; both sides are computed independently.
NaturalityReport obstruction_naturality_check(const SmallExtensionMorphism& morphism,
                                              const McSolution& downstairs);

struct EtaleReport {
    enum class Verdict { Etale, Smooth, NotSatisfied };
    Verdict verdict;
    QMatrix h1_map, h2_map;
    int h1_source_dim = 0, h1_target_dim = 0;
    int h2_source_dim = 0, h2_target_dim = 0;
    bool h1_surjective = false, h1_bijective = false, h2_injective = false;
};

// Sufficient criterion on induced cohomology maps: etale when H^1 is
// bijective and H^2 injective, smooth when H^1 is surjective and H^2
// injective. No converse is claimed.
EtaleReport etale_criterion(const DglaMorphism& morphism);

}  // namespace deform
