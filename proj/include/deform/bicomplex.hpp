#pragma once

#include "deform/homology.hpp"
#include "deform/matrix.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace deform {

// First-quadrant double complex, 0 <= p <= P and 0 <= q <= Q, with
// commuting squares. The horizontal differential raises p, the vertical one
// raises q; signs appear only when the total complex is formed.
struct Bicomplex {
    int P = 0, Q = 0;
    std::vector<std::vector<int>> dims;  // dims[p][q]
    std::map<std::pair<int, int>, QMatrix> horizontal;  // (p,q) -> (p+1,q)
    std::map<std::pair<int, int>, QMatrix> vertical;    // (p,q) -> (p,q+1)

    int dim(int p, int q) const;
    QMatrix horizontal_at(int p, int q) const;  // zero matrix outside range
    QMatrix vertical_at(int p, int q) const;
};

// Bicomplex with a left edge complex C^p -> entry(p, 0) and a bottom edge
// complex K^q -> entry(0, q).
struct AugmentedBicomplex {
    Bicomplex body;
    CochainComplex::Ptr left_edge;
    CochainComplex::Ptr bottom_edge;
    std::map<int, QMatrix> left_augmentation;    // C^p -> entry(p, 0)
    std::map<int, QMatrix> bottom_augmentation;  // K^q -> entry(0, q)

    QMatrix left_augmentation_at(int p) const;
    QMatrix bottom_augmentation_at(int q) const;
};

// Shape-checking constructor; throws InputError on dimension mismatches.
AugmentedBicomplex make_augmented_bicomplex(Bicomplex body, CochainComplex::Ptr left_edge,
                                            CochainComplex::Ptr bottom_edge,
                                            std::map<int, QMatrix> left_augmentation,
                                            std::map<int, QMatrix> bottom_augmentation);

struct BicomplexViolation {
    std::string rule;  // "horizontal-square", "commuting-square", ...
    int p = 0, q = 0;
};

struct BicomplexValidation {
    std::vector<BicomplexViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

BicomplexValidation validate(const Bicomplex& body);
// Also checks that augmentations are injective cochain maps killed by the
// transverse differential.
BicomplexValidation validate(const AugmentedBicomplex& ab);

// Exactness of one augmented line 0 -> edge -> entries(0..last).
struct LineExactness {
    bool injective = false;          // edge embeds
    std::vector<bool> interior;      // positions 0..last-1
    bool tail = false;               // surjectivity onto the final entry
    bool exact_interior() const;
    bool exact_full() const { return exact_interior() && tail; }
};

struct HypothesesReport {
    std::vector<LineExactness> rows;     // indexed by p
    std::vector<LineExactness> columns;  // indexed by q
    bool rows_exact() const;             // interior exactness of every row
    bool columns_exact() const;
    int first_failing_row() const;   // -1 when none
    int first_failing_column() const;
};

// Exact rank computations at every position of every augmented row and
// column. Tail positions are reported separately: a truncated complex can be
// exact everywhere it is defined while its continuation is cut off.
HypothesesReport check_hypotheses(const AugmentedBicomplex& ab);

enum class TransferDirection { BottomToLeft, LeftToBottom };

// Thrown when a zig-zag solve has no solution, i.e. the exactness hypothesis
// fails at the named entry.
struct HypothesisFailure : std::runtime_error {
    HypothesisFailure(const std::string& what, int p_, int q_)
        : std::runtime_error(what), p(p_), q(q_) {}
    int p, q;
};

struct TransferStep {
    int p, q;
    QVector cochain;
};

struct TransferTrace {
    TransferDirection direction = TransferDirection::BottomToLeft;
    int degree = 0;
    QVector input_cocycle;                // edge coordinates
    std::vector<TransferStep> pullbacks;  // transverse preimages, in order
    std::vector<TransferStep> pushes;     // parallel differential images
    QVector output_cocycle;
};

// Re-verifies every defining equation of a recorded trace.
bool verify_trace(const AugmentedBicomplex& ab, const TransferTrace& trace);

struct TransferOptions {
    // Optional kernel-direction randomization of every interior solve; the
    // output class must not change (tested property).
    const std::function<Rational()>* randomize = nullptr;
};

struct TransferResult {
    CohomologyClass output;
    TransferTrace trace;
};

// Edge-to-edge zig-zag of a degree-n class: inject the representative,
// alternately solve the transverse differential and push along the parallel
// one, then read off the opposite edge.
TransferResult transfer_class(const AugmentedBicomplex& ab, TransferDirection direction, int degree,
                              const QVector& class_coordinates, const TransferOptions& options = {});

// Lower-level entry point on a cocycle of the chosen edge.
std::pair<QVector, TransferTrace> transfer_cocycle(const AugmentedBicomplex& ab,
                                                   TransferDirection direction, int degree,
                                                   const QVector& cocycle,
                                                   const TransferOptions& options = {});

// The degree-2 bottom-to-left transfer with the three intermediates named:
// vertical tau = h, vertical rho = horizontal tau, omega = horizontal rho.
struct ObstructionTransfer {
    std::vector<std::string> ideal_labels;
    std::vector<QVector> tau;    // entry (0, 1)
    std::vector<QVector> rho;    // entry (1, 0)
    std::vector<QVector> omega;  // left edge degree 2
    std::vector<TransferTrace> traces;
    CohomologyClass output;  // class of omega in H^2(left edge), per label
};

ObstructionTransfer obstruction_transfer(const AugmentedBicomplex& ab,
                                         const std::vector<QVector>& bottom_cocycles,
                                         const std::vector<std::string>& ideal_labels,
                                         const TransferOptions& options = {});

struct TotalCohomology {
    int total = 0;
    int left = 0;
    int bottom = 0;
};

// Dimensions of H^n of the total complex (with the (-1)^p vertical twist)
// and of both edges; all three agree when the hypotheses hold.
TotalCohomology total_cohomology(const AugmentedBicomplex& ab, int degree);

}  // namespace deform
