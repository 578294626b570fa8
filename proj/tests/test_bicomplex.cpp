#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "deform/bicomplex.hpp"
#include "deform/models.hpp"
#include "deform/rng.hpp"

using namespace deform;

namespace {

Rational q(const char* s) { return rational_from_string(s); }

AugmentedBicomplex trivial_single_entry()
{
    Bicomplex body;
    body.P = 0;
    body.Q = 0;
    body.dims = {{1}};
    auto edge = CochainComplex::make({{0, {"x"}}}, {});
    return make_augmented_bicomplex(body, edge, edge, {{0, QMatrix::identity(1)}},
                                    {{0, QMatrix::identity(1)}});
}

}  // namespace

TEST_CASE("trivial single-entry bicomplex validates and has H^0 = (1,1,1)")
{
    auto ab = trivial_single_entry();
    CHECK(validate(ab).ok());
    auto hyp = check_hypotheses(ab);
    CHECK(hyp.rows_exact());
    CHECK(hyp.columns_exact());
    auto t = total_cohomology(ab, 0);
    CHECK(t.total == 1);
    CHECK(t.left == 1);
    CHECK(t.bottom == 1);

    auto r = transfer_class(ab, TransferDirection::BottomToLeft, 0, {q("1")});
    CHECK(r.output.plain() == QVector{q("1")});
    CHECK(verify_trace(ab, r.trace));
}

TEST_CASE("simplicial model of the triangle boundary validates and is exact")
{
    auto K = SimplicialComplex::boundary_of_simplex(2);
    auto ab = cech_simplicial_model(K);
    CHECK(validate(ab).ok());
    auto hyp = check_hypotheses(ab);
    CHECK(hyp.rows_exact());
    CHECK(hyp.columns_exact());
    for (const auto& row : hyp.rows)
        CHECK(row.tail);
    for (const auto& col : hyp.columns)
        CHECK(col.tail);
}

TEST_CASE("mutating one sign breaks a commuting square with the right witness")
{
    auto K = SimplicialComplex::boundary_of_simplex(2);
    auto ab = cech_simplicial_model(K);
    // Flip one entry of a horizontal map inside the square (0,0)-(1,1).
    QMatrix h = ab.body.horizontal_at(0, 0);
    int fi = -1, fj = -1;
    for (int i = 0; i < h.rows() && fi < 0; ++i)
        for (int j = 0; j < h.cols(); ++j)
            if (h.at(i, j) != 0) {
                fi = i;
                fj = j;
                break;
            }
    REQUIRE(fi >= 0);
    h.at(fi, fj) = -h.at(fi, fj);
    ab.body.horizontal[{0, 0}] = h;
    auto report = validate(ab);
    REQUIRE_FALSE(report.ok());
    bool square_broken = false;
    for (const auto& v : report.violations)
        if (v.rule == "commuting-square" && v.p == 0 && v.q == 0)
            square_broken = true;
    CHECK(square_broken);
}

TEST_CASE("triangle boundary: edge and total cohomology are the circle's")
{
    auto ab = cech_simplicial_model(SimplicialComplex::boundary_of_simplex(2));
    auto t0 = total_cohomology(ab, 0);
    auto t1 = total_cohomology(ab, 1);
    auto t2 = total_cohomology(ab, 2);
    CHECK(t0.total == 1);
    CHECK(t0.left == 1);
    CHECK(t0.bottom == 1);
    CHECK(t1.total == 1);
    CHECK(t1.left == 1);
    CHECK(t1.bottom == 1);
    CHECK(t2.total == 0);
    CHECK(t2.left == 0);
    CHECK(t2.bottom == 0);
}

TEST_CASE("tetrahedron boundary: the 2-sphere pattern (1, 0, 1)")
{
    auto ab = cech_simplicial_model(SimplicialComplex::boundary_of_simplex(3));
    CHECK(validate(ab).ok());
    auto hyp = check_hypotheses(ab);
    CHECK(hyp.rows_exact());
    CHECK(hyp.columns_exact());
    auto t0 = total_cohomology(ab, 0);
    auto t1 = total_cohomology(ab, 1);
    auto t2 = total_cohomology(ab, 2);
    CHECK(t0.total == 1);
    CHECK(t1.total == 0);
    CHECK(t2.total == 1);
    CHECK(t0.left == 1);
    CHECK(t1.left == 0);
    CHECK(t2.left == 1);
    CHECK(t0.bottom == 1);
    CHECK(t1.bottom == 0);
    CHECK(t2.bottom == 1);
}

TEST_CASE("transfer of the simplicial H^1 generator is nonzero and round-trips")
{
    auto ab = cech_simplicial_model(SimplicialComplex::boundary_of_simplex(2));
    auto r = transfer_class(ab, TransferDirection::BottomToLeft, 1, {q("1")});
    CHECK_FALSE(r.output.is_zero());
    CHECK(verify_trace(ab, r.trace));
    auto back = transfer_class(ab, TransferDirection::LeftToBottom, 1, r.output.plain());
    CHECK(back.output.plain() == QVector{q("1")});
}

TEST_CASE("round trips hold in every degree on the tetrahedron boundary")
{
    auto ab = cech_simplicial_model(SimplicialComplex::boundary_of_simplex(3));
    for (int n = 0; n <= 2; ++n) {
        auto hb = cohomology(ab.bottom_edge, n);
        for (int i = 0; i < hb.dim(); ++i) {
            QVector cls(hb.dim(), Rational(0));
            cls[i] = 1;
            auto there = transfer_class(ab, TransferDirection::BottomToLeft, n, cls);
            auto back = transfer_class(ab, TransferDirection::LeftToBottom, n, there.output.plain());
            CHECK(back.output.plain() == cls);
        }
        auto hl = cohomology(ab.left_edge, n);
        for (int i = 0; i < hl.dim(); ++i) {
            QVector cls(hl.dim(), Rational(0));
            cls[i] = 1;
            auto there = transfer_class(ab, TransferDirection::LeftToBottom, n, cls);
            auto back = transfer_class(ab, TransferDirection::BottomToLeft, n, there.output.plain());
            CHECK(back.output.plain() == cls);
        }
    }
}

TEST_CASE("transfer output is independent of interior preimage choices")
{
    auto ab = cech_simplicial_model(SimplicialComplex::boundary_of_simplex(2));
    auto canonical = transfer_class(ab, TransferDirection::BottomToLeft, 1, {q("1")});
    Rng rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        std::function<Rational()> noise = [&]() { return rng.small_rational(3); };
        TransferOptions options;
        options.randomize = &noise;
        auto shifted = transfer_class(ab, TransferDirection::BottomToLeft, 1, {q("1")}, options);
        CHECK(shifted.output.plain() == canonical.output.plain());
    }
}

TEST_CASE("transfer is linear in the class")
{
    auto ab = cech_simplicial_model(SimplicialComplex::boundary_of_simplex(2));
    auto one = transfer_class(ab, TransferDirection::BottomToLeft, 1, {q("1")});
    auto three = transfer_class(ab, TransferDirection::BottomToLeft, 1, {q("3")});
    CHECK(three.output.plain() == q("3") * one.output.plain());
}

TEST_CASE("obstruction transfer names tau, rho, omega and matches transfer_class")
{
    auto ab = cech_simplicial_model(SimplicialComplex::boundary_of_simplex(3));
    auto h2_bottom = cohomology(ab.bottom_edge, 2);
    REQUIRE(h2_bottom.dim() == 1);
    QVector h = h2_bottom.representatives()[0];

    auto result = obstruction_transfer(ab, {h}, {"t^2"});
    REQUIRE(result.traces.size() == 1);
    CHECK(verify_trace(ab, result.traces[0]));
    // tau solves the vertical equation against the injected h.
    QVector injected = ab.bottom_augmentation_at(2).apply(h);
    CHECK(ab.body.vertical_at(0, 1).apply(result.tau[0]) == injected);
    // rho solves against the horizontal image of tau.
    CHECK(ab.body.vertical_at(1, 0).apply(result.rho[0]) ==
          ab.body.horizontal_at(0, 1).apply(result.tau[0]));
    // omega embeds as the horizontal image of rho.
    CHECK(ab.left_augmentation_at(2).apply(result.omega[0]) ==
          ab.body.horizontal_at(1, 0).apply(result.rho[0]));

    auto direct = transfer_class(ab, TransferDirection::BottomToLeft, 2, {q("1")});
    CHECK(result.output.coordinates[0] == direct.output.plain());

    // Scaling: transfer of 3h is 3 times the transfer of h.
    auto scaled = obstruction_transfer(ab, {q("3") * h}, {"t^2"});
    CHECK(scaled.output.coordinates[0] == q("3") * result.output.coordinates[0]);

    // The zero class transfers to zero with an all-zero trace admissible.
    auto zero = obstruction_transfer(ab, {QVector(h.size(), Rational(0))}, {"t^2"});
    CHECK(zero.output.is_zero());
}

TEST_CASE("hypothesis failure is reported with the failing entry")
{
    // Two-column strip whose row is not exact: E(0,0) = Q with zero maps and
    // a zero left edge, so ker(vertical) is not covered by the augmentation.
    Bicomplex body;
    body.P = 0;
    body.Q = 1;
    body.dims = {{1, 1}};
    auto zero_edge = CochainComplex::make({{0, std::vector<std::string>{}}}, {});
    auto bottom = CochainComplex::make({{0, {"k0"}}, {1, {"k1"}}}, {});
    auto ab = make_augmented_bicomplex(body, zero_edge, bottom,
                                       {{0, QMatrix::zero(1, 0)}},
                                       {{0, QMatrix::identity(1)}, {1, QMatrix::identity(1)}});
    auto hyp = check_hypotheses(ab);
    CHECK_FALSE(hyp.rows_exact());
    CHECK(hyp.first_failing_row() == 0);
    CHECK_THROWS_AS(transfer_class(ab, TransferDirection::BottomToLeft, 1, {q("1")}),
                    HypothesisFailure);
}
