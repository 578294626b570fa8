#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "deform/deformation.hpp"

using namespace deform;

namespace {

Rational q(const char* s) { return rational_from_string(s); }

// deg 1: e; deg 2: f; d = 0; [e, e] = f.
Dgla::Ptr make_obstructed()
{
    GradedVectorSpace space;
    space.basis_names[1] = {"e"};
    space.basis_names[2] = {"f"};
    return make_dgla(std::move(space), {}, {{1, 0, 1, 0, 0, q("1")}});
}

// Adds g in degree 1 with d g = f; brackets with g vanish.
Dgla::Ptr make_unobstructed_corrected()
{
    GradedVectorSpace space;
    space.basis_names[1] = {"e", "g"};
    space.basis_names[2] = {"f"};
    QMatrix d1(1, 2);
    d1.at(0, 1) = 1;
    return make_dgla(std::move(space), {{1, d1}}, {{1, 0, 1, 0, 0, q("1")}});
}

// deg 0: a0; deg 1: b1, b2; deg 2: c; d a0 = b1; [a0, b1] = b2.
Dgla::Ptr make_gauge_demo()
{
    GradedVectorSpace space;
    space.basis_names[0] = {"a0"};
    space.basis_names[1] = {"b1", "b2"};
    space.basis_names[2] = {"c"};
    QMatrix d0(2, 1);
    d0.at(0, 0) = 1;
    return make_dgla(std::move(space), {{0, d0}}, {{0, 0, 1, 0, 1, q("1")}});
}

// Abelian variant: d a0 = b1, zero bracket.
Dgla::Ptr make_gauge_demo_abelian()
{
    GradedVectorSpace space;
    space.basis_names[0] = {"a0"};
    space.basis_names[1] = {"b1", "b2"};
    QMatrix d0(2, 1);
    d0.at(0, 0) = 1;
    return make_dgla(std::move(space), {{0, d0}}, {});
}

DglaCochain cochain1(const Dgla::Ptr& L, const ArtinAlgebra::Ptr& A,
                     const std::vector<std::pair<int, QVector>>& cols)
{
    QMatrix c(L->dim(1), A->dim());
    for (const auto& [col, v] : cols)
        c.set_col(col, v);
    return DglaCochain(L, A, 1, c);
}

}  // namespace

TEST_CASE("abelian residual vanishes on cocycles")
{
    auto L = make_gauge_demo_abelian();
    auto A = build_truncated_algebra({"t"}, 3, {});
    // b2 is a cocycle; b2 (x) (t + t^2) solves Maurer-Cartan.
    auto x = cochain1(L, A, {{1, {q("0"), q("1")}}, {2, {q("0"), q("1")}}});
    CHECK(mc_residual(x).is_zero());
}

TEST_CASE("obstructed residual is (1/2) f (x) t^2 over Q[t]/(t^3)")
{
    auto L = make_obstructed();
    auto A = build_truncated_algebra({"t"}, 3, {});
    auto x = cochain1(L, A, {{1, {q("1")}}});  // e (x) t
    auto r = mc_residual(x);
    CHECK(r.degree() == 2);
    CHECK(r.coefficient(0, 2) == q("1/2"));
    CHECK(r.coefficient(0, 1) == q("0"));

    auto dual = build_truncated_algebra({"t"}, 2, {});
    auto xd = cochain1(L, dual, {{1, {q("1")}}});
    CHECK(mc_residual(xd).is_zero());
}

TEST_CASE("gauge action with zero parameter is the identity")
{
    auto L = make_gauge_demo();
    auto A = build_truncated_algebra({"t"}, 3, {});
    auto x = cochain1(L, A, {{1, {q("1"), q("0")}}});
    auto a = GaugeWitness::zero(L, A);
    CHECK(gauge_act(a, x) == x);
}

TEST_CASE("gauge action of a0 (x) t on zero")
{
    auto L = make_gauge_demo();
    auto A = build_truncated_algebra({"t"}, 3, {});
    QMatrix pc(1, 3);
    pc.at(0, 1) = 1;
    GaugeWitness a{DglaCochain(L, A, 0, pc)};
    DglaCochain zero(L, A, 1);
    auto moved = gauge_act(a, zero);
    // -b1 (x) t - (1/2) b2 (x) t^2
    CHECK(moved.coefficient(0, 1) == q("-1"));
    CHECK(moved.coefficient(1, 2) == q("-1/2"));
    CHECK(moved.coefficient(0, 2) == q("0"));
    CHECK(moved.coefficient(1, 1) == q("0"));
}

TEST_CASE("gauge action of a0 (x) t on b1 (x) t")
{
    auto L = make_gauge_demo();
    auto A = build_truncated_algebra({"t"}, 3, {});
    QMatrix pc(1, 3);
    pc.at(0, 1) = 1;
    GaugeWitness a{DglaCochain(L, A, 0, pc)};
    auto x = cochain1(L, A, {{1, {q("1"), q("0")}}});
    auto moved = gauge_act(a, x);
    // (1/2) b2 (x) t^2 exactly
    CHECK(moved.coefficient(0, 1) == q("0"));
    CHECK(moved.coefficient(0, 2) == q("0"));
    CHECK(moved.coefficient(1, 1) == q("0"));
    CHECK(moved.coefficient(1, 2) == q("1/2"));
}

TEST_CASE("gauge compose with zero returns the other parameter")
{
    auto L = make_gauge_demo();
    auto A = build_truncated_algebra({"t"}, 3, {});
    QMatrix pc(1, 3);
    pc.at(0, 1) = 1;
    GaugeWitness a{DglaCochain(L, A, 0, pc)};
    auto c = gauge_compose(a, GaugeWitness::zero(L, A));
    CHECK(c.parameter() == a.parameter());
    auto c2 = gauge_compose(GaugeWitness::zero(L, A), a);
    CHECK(c2.parameter() == a.parameter());
}

TEST_CASE("gauge compose is addition for zero brackets")
{
    auto L = make_gauge_demo_abelian();
    auto A = build_truncated_algebra({"t"}, 4, {});
    QMatrix pa(1, 4), pb(1, 4);
    pa.at(0, 1) = q("2");
    pa.at(0, 3) = q("1");
    pb.at(0, 2) = q("-3");
    GaugeWitness a{DglaCochain(L, A, 0, pa)};
    GaugeWitness b{DglaCochain(L, A, 0, pb)};
    CHECK(gauge_compose(a, b).parameter() == a.parameter() + b.parameter());
}

TEST_CASE("BCH truncates to a + b + (1/2)[a,b] at nil index 3")
{
    // Degree-0 Heisenberg pair: [p, r] = z, z central.
    GradedVectorSpace space;
    space.basis_names[0] = {"p", "r", "z"};
    auto L = make_dgla(std::move(space), {}, {{0, 0, 0, 1, 2, q("1")}});
    auto A = build_truncated_algebra({"t"}, 3, {});
    QMatrix pa(3, 3), pb(3, 3);
    pa.at(0, 1) = 1;  // p (x) t
    pb.at(1, 1) = 1;  // r (x) t
    GaugeWitness a{DglaCochain(L, A, 0, pa)};
    GaugeWitness b{DglaCochain(L, A, 0, pb)};
    auto c = gauge_compose(a, b);
    DglaCochain expected =
        a.parameter() + b.parameter() +
        bracket_eval(a.parameter(), b.parameter()).scaled(q("1/2"));
    CHECK(c.parameter() == expected);
}

TEST_CASE("gauge group law holds through BCH on the gauge demo")
{
    auto L = make_gauge_demo();
    auto A = build_truncated_algebra({"t"}, 4, {});
    QMatrix pa(1, 4), pb(1, 4);
    pa.at(0, 1) = q("1");
    pb.at(0, 1) = q("2");
    pb.at(0, 2) = q("-1");
    GaugeWitness a{DglaCochain(L, A, 0, pa)};
    GaugeWitness b{DglaCochain(L, A, 0, pb)};
    auto x = cochain1(L, A, {{1, {q("1"), q("0"), q("0")}}});
    CHECK(gauge_act(gauge_compose(a, b), x) == gauge_act(a, gauge_act(b, x)));
}

TEST_CASE("identical solutions are equivalent with the zero witness")
{
    auto L = make_obstructed();
    auto A = build_truncated_algebra({"t"}, 2, {});
    auto x = McSolution::verify(cochain1(L, A, {{1, {q("1")}}}));
    auto v = gauge_equivalent(x, x);
    REQUIRE(v.kind == EquivalenceVerdict::Kind::Equivalent);
    CHECK(v.witness->parameter().is_zero());
}

TEST_CASE("gauge demo over dual numbers: 0 and -b1 (x) eps are equivalent")
{
    auto L = make_gauge_demo();
    auto A = build_truncated_algebra({"eps"}, 2, {});
    auto x = McSolution::verify(DglaCochain(L, A, 1));
    auto y = McSolution::verify(cochain1(L, A, {{1, {q("-1"), q("0")}}}));
    auto v = gauge_equivalent(x, y);
    REQUIRE(v.kind == EquivalenceVerdict::Kind::Equivalent);
    CHECK(gauge_act(*v.witness, x.cochain()) == y.cochain());
    // The expected witness a0 (x) eps indeed works.
    QMatrix pc(1, 2);
    pc.at(0, 1) = 1;
    GaugeWitness a{DglaCochain(L, A, 0, pc)};
    CHECK(gauge_act(a, x.cochain()) == y.cochain());
}

TEST_CASE("no gauge parameters: distinct classes are not equivalent")
{
    GradedVectorSpace space;
    space.basis_names[1] = {"e"};
    auto L = make_dgla(std::move(space), {}, {});
    auto A = build_truncated_algebra({"eps"}, 2, {});
    auto x = McSolution::verify(cochain1(L, A, {{1, {q("1")}}}));
    auto y = McSolution::verify(DglaCochain(L, A, 1));
    auto v = gauge_equivalent(x, y);
    REQUIRE(v.kind == EquivalenceVerdict::Kind::NotEquivalent);
    CHECK(v.stage == 1);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->coordinates[0] == QVector{q("1")});  // class of e
}

TEST_CASE("tangent space of the zero DGLA is trivial")
{
    GradedVectorSpace space;
    space.basis_names[0] = {"a"};
    QMatrix d0(0, 1);
    auto L = make_dgla(std::move(space), {}, {});
    auto t = tangent_space(L);
    CHECK(t.report.dim == 0);
    CHECK(t.report.ok());
}

TEST_CASE("tangent space of the obstructed model is one-dimensional")
{
    auto L = make_obstructed();
    auto t = tangent_space(L);
    CHECK(t.report.dim == 1);
    CHECK(t.report.ok());
    CHECK(t.h1.representatives()[0] == QVector{q("1")});
}

TEST_CASE("tangent space of the abelian gauge demo quotients out b1")
{
    auto L = make_gauge_demo_abelian();
    auto t = tangent_space(L);
    CHECK(t.report.dim == 1);
    CHECK(t.report.ok());
    CHECK(t.h1.representatives()[0] == QVector{q("0"), q("1")});  // b2

    // b1 (x) eps is gauge-trivial.
    auto A = build_truncated_algebra({"eps"}, 2, {});
    auto b1 = McSolution::verify(cochain1(L, A, {{1, {q("1"), q("0")}}}));
    auto zero = McSolution::verify(DglaCochain(L, A, 1));
    CHECK(gauge_equivalent(b1, zero).kind == EquivalenceVerdict::Kind::Equivalent);
}

TEST_CASE("obstruction class of the obstructed model is (1/2)[f] at t^2")
{
    auto L = make_obstructed();
    auto total = build_truncated_algebra({"t"}, 3, {});
    auto quot = build_truncated_algebra({"t"}, 2, {});
    auto ext = make_small_extension(truncation_morphism(total, quot));
    auto xbar = McSolution::verify(cochain1(L, quot, {{1, {q("1")}}}));
    auto report = obstruction_class(ext, xbar);
    CHECK(report.obstructed());
    REQUIRE(report.obstruction.coordinates.size() == 1);
    CHECK(report.obstruction.ideal_labels[0] == "t^2");
    CHECK(report.obstruction.coordinates[0] == QVector{q("1/2")});

    // Zero solution has zero obstruction.
    auto zero = McSolution::verify(DglaCochain(L, quot, 1));
    CHECK_FALSE(obstruction_class(ext, zero).obstructed());
}

TEST_CASE("obstruction class is splitting independent")
{
    auto L = make_obstructed();
    auto total = build_truncated_algebra({"t"}, 3, {});
    auto quot = build_truncated_algebra({"t"}, 2, {});
    auto ext = make_small_extension(truncation_morphism(total, quot));
    auto xbar = McSolution::verify(cochain1(L, quot, {{1, {q("1")}}}));
    auto base = obstruction_class(ext, xbar);
    QMatrix pert(3, 2);
    pert.at(2, 1) = q("7");
    auto perturbed = obstruction_class(ext.with_perturbed_splitting(pert), xbar);
    CHECK(base.obstruction.coordinates == perturbed.obstruction.coordinates);
}

TEST_CASE("abelian obstruction vanishes and the split lift works")
{
    auto L = make_gauge_demo_abelian();
    auto total = build_truncated_algebra({"t"}, 3, {});
    auto quot = build_truncated_algebra({"t"}, 2, {});
    auto ext = make_small_extension(truncation_morphism(total, quot));
    auto xbar = McSolution::verify(cochain1(L, quot, {{1, {q("0"), q("3")}}}));  // b2 (x) 3t
    auto lifted = lift_mc(ext, xbar);
    REQUIRE(std::holds_alternative<McSolution>(lifted));
}

TEST_CASE("lift_mc refuses the obstructed model and succeeds on the corrected one")
{
    auto total = build_truncated_algebra({"t"}, 3, {});
    auto quot = build_truncated_algebra({"t"}, 2, {});
    auto ext = make_small_extension(truncation_morphism(total, quot));

    auto L1 = make_obstructed();
    auto x1 = McSolution::verify(cochain1(L1, quot, {{1, {q("1")}}}));
    auto r1 = lift_mc(ext, x1);
    REQUIRE(std::holds_alternative<ObstructionReport>(r1));
    CHECK(std::get<ObstructionReport>(r1).obstruction.coordinates[0] == QVector{q("1/2")});

    auto L2 = make_unobstructed_corrected();
    QMatrix c(2, 2);
    c.at(0, 1) = 1;  // e (x) t
    auto x2 = McSolution::verify(DglaCochain(L2, quot, 1, c));
    auto r2 = lift_mc(ext, x2);
    REQUIRE(std::holds_alternative<McSolution>(r2));
    const auto& lift = std::get<McSolution>(r2).cochain();
    // e (x) t - (1/2) g (x) t^2
    CHECK(lift.coefficient(0, 1) == q("1"));
    CHECK(lift.coefficient(1, 2) == q("-1/2"));
    CHECK(lift.coefficient(0, 2) == q("0"));
    CHECK(lift.coefficient(1, 1) == q("0"));
}

TEST_CASE("lift_along composes stages and reports failures")
{
    auto L = make_obstructed();
    auto total = build_truncated_algebra({"t"}, 3, {});
    auto field = rational_field();

    // Lifting zero from the field succeeds stage by stage.
    auto zero = McSolution::verify(DglaCochain(L, field, 1));
    auto up = lift_along(truncation_morphism(total, field), zero);
    REQUIRE(up.lift.has_value());
    CHECK(up.lift->cochain().is_zero());
    CHECK(up.stages.size() == 2);

    // e (x) t over Q[t]/(t^2) fails at the single stage with class 1/2 [f].
    auto quot = build_truncated_algebra({"t"}, 2, {});
    auto xbar = McSolution::verify(cochain1(L, quot, {{1, {q("1")}}}));
    auto fail = lift_along(truncation_morphism(total, quot), xbar);
    REQUIRE(fail.failure.has_value());
    CHECK(fail.failed_stage == 1);
    CHECK(fail.failure->obstruction.coordinates[0] == QVector{q("1/2")});
}

TEST_CASE("obstruction naturality for the identity morphism")
{
    auto L = make_obstructed();
    auto total = build_truncated_algebra({"t"}, 3, {});
    auto quot = build_truncated_algebra({"t"}, 2, {});
    auto ext = make_small_extension(truncation_morphism(total, quot));
    auto phi = make_small_extension_morphism(ext, ext, identity_morphism(total));
    auto xbar = McSolution::verify(cochain1(L, quot, {{1, {q("1")}}}));
    auto report = obstruction_naturality_check(phi, xbar);
    CHECK(report.equal);
}

TEST_CASE("obstruction naturality for t -> 2s")
{
    auto L = make_obstructed();
    auto total_t = build_truncated_algebra({"t"}, 3, {});
    auto quot_t = build_truncated_algebra({"t"}, 2, {});
    auto total_s = build_truncated_algebra({"s"}, 3, {});
    auto quot_s = build_truncated_algebra({"s"}, 2, {});
    auto ext_t = make_small_extension(truncation_morphism(total_t, quot_t));
    auto ext_s = make_small_extension(truncation_morphism(total_s, quot_s));

    AlgebraElement two_s(total_s, {q("0"), q("2"), q("0")});
    auto phi = make_small_extension_morphism(ext_t, ext_s, make_morphism(total_t, total_s, {two_s}));

    auto xbar = McSolution::verify(cochain1(L, quot_t, {{1, {q("1")}}}));
    auto report = obstruction_naturality_check(phi, xbar);
    CHECK(report.equal);
    // Both sides equal 2 [f] at s^2.
    CHECK(report.pushed_then_obstructed.coordinates[0] == QVector{q("2")});
    CHECK(report.obstructed_then_mapped.coordinates[0] == QVector{q("2")});
}

TEST_CASE("obstruction naturality for t -> 0 factors through zero")
{
    auto L = make_obstructed();
    auto total_t = build_truncated_algebra({"t"}, 3, {});
    auto quot_t = build_truncated_algebra({"t"}, 2, {});
    auto total_s = build_truncated_algebra({"s"}, 3, {});
    auto quot_s = build_truncated_algebra({"s"}, 2, {});
    auto ext_t = make_small_extension(truncation_morphism(total_t, quot_t));
    auto ext_s = make_small_extension(truncation_morphism(total_s, quot_s));

    auto phi = make_small_extension_morphism(
        ext_t, ext_s, make_morphism(total_t, total_s, {AlgebraElement::zero(total_s)}));
    auto xbar = McSolution::verify(cochain1(L, quot_t, {{1, {q("1")}}}));
    auto report = obstruction_naturality_check(phi, xbar);
    CHECK(report.equal);
    CHECK(report.pushed_then_obstructed.is_zero());
    CHECK(report.obstructed_then_mapped.is_zero());
}

TEST_CASE("etale criterion: identity, cone augmentation, strict inclusion")
{
    auto L = make_obstructed();
    CHECK(etale_criterion(identity_dgla_morphism(L)).verdict == EtaleReport::Verdict::Etale);

    // Acyclic cone u -> v in degrees 1, 2 with zero brackets.
    GradedVectorSpace cone_space;
    cone_space.basis_names[1] = {"u"};
    cone_space.basis_names[2] = {"v"};
    QMatrix cd(1, 1);
    cd.at(0, 0) = 1;
    auto cone = make_dgla(std::move(cone_space), {{1, cd}}, {});
    auto sum = direct_sum(L, cone);
    std::map<int, QMatrix> incl;
    QMatrix i1(2, 1);
    i1.at(0, 0) = 1;
    QMatrix i2(2, 1);
    i2.at(0, 0) = 1;
    incl[1] = i1;
    incl[2] = i2;
    auto inclusion = make_dgla_morphism(L, sum, std::move(incl));
    CHECK(etale_criterion(inclusion).verdict == EtaleReport::Verdict::Etale);

    // Diagonal line inside the abelian plane: H^1 map Q -> Q^2 not surjective.
    GradedVectorSpace plane_space;
    plane_space.basis_names[1] = {"e1", "e2"};
    auto plane = make_dgla(std::move(plane_space), {}, {});
    GradedVectorSpace line_space;
    line_space.basis_names[1] = {"d"};
    auto line = make_dgla(std::move(line_space), {}, {});
    QMatrix diag(2, 1);
    diag.at(0, 0) = 1;
    diag.at(1, 0) = 1;
    auto strict = make_dgla_morphism(line, plane, {{1, diag}});
    CHECK(etale_criterion(strict).verdict == EtaleReport::Verdict::NotSatisfied);
}

TEST_CASE("gauge action preserves Maurer-Cartan on the catalog models")
{
    auto L = make_gauge_demo();
    auto A = build_truncated_algebra({"t"}, 4, {});
    for (int i = -1; i <= 1; ++i) {
        QMatrix pc(1, 4);
        pc.at(0, 1) = i;
        pc.at(0, 2) = q("1/3");
        GaugeWitness a{DglaCochain(L, A, 0, pc)};
        // b2-directions are MC (d b2 = 0, [b2, b2] = 0).
        auto x = cochain1(L, A, {{1, {q("0"), q("2"), q("0")}},
                                 {2, {q("0"), q("0"), q("5")}}});
        REQUIRE(is_mc(x));
        CHECK(is_mc(gauge_act(a, x)));
    }
}

TEST_CASE("functoriality: morphisms map MC to MC and intertwine gauge")
{
    auto L = make_obstructed();
    auto sum = direct_sum(L, L);
    std::map<int, QMatrix> incl;
    QMatrix i1(2, 1);
    i1.at(0, 0) = 1;
    QMatrix i2(2, 1);
    i2.at(0, 0) = 1;
    auto f = make_dgla_morphism(L, sum, {{1, i1}, {2, i2}});

    auto A = build_truncated_algebra({"t"}, 3, {});
    auto x = cochain1(L, A, {{2, {q("4")}}});  // e (x) t^2 is MC: bracket lands in t^4 = 0
    REQUIRE(is_mc(x));
    CHECK(is_mc(map_cochain(f, x)));
}

TEST_CASE("MC solutions glue over fiber products")
{
    auto L = make_obstructed();
    auto B = build_truncated_algebra({"t"}, 3, {});
    auto A = build_truncated_algebra({"t"}, 2, {});
    auto f = truncation_morphism(B, A);
    auto g = identity_morphism(A);
    auto fp = fiber_product(f, g);

    // x_B = e (x) t^2 over B reduces to 0 over A; x_C = 0 matches it.
    auto xb = cochain1(L, B, {{2, {q("1")}}});
    REQUIRE(is_mc(xb));
    DglaCochain xc(L, A, 1);
    CHECK(xb.map_coefficients(f) == xc.map_coefficients(g));

    // Glue coefficientwise through the pair basis.
    const int nd = fp.algebra->dim();
    QMatrix basis_cols(B->dim() + A->dim(), nd);
    for (int i = 0; i < nd; ++i)
        basis_cols.set_col(i, fp.pair_basis[i]);
    QMatrix stacked = xb.coefficients().transpose().vstack(xc.coefficients().transpose());
    auto coords = basis_cols.solve_matrix(stacked);
    REQUIRE(coords.has_value());
    DglaCochain glued(L, fp.algebra, 1, coords->transpose());
    CHECK(is_mc(glued));
    CHECK(glued.map_coefficients(fp.to_first) == xb);
    CHECK(glued.map_coefficients(fp.to_second) == xc);
}
