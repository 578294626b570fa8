#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "deform/dgla.hpp"

using namespace deform;

namespace {

Rational q(const char* s) { return rational_from_string(s); }

// deg 0: a0; deg 1: b1, b2; deg 2: c; d a0 = b1; [a0, b1] = b2.
Dgla::Ptr make_gauge_demo()
{
    GradedVectorSpace space;
    space.basis_names[0] = {"a0"};
    space.basis_names[1] = {"b1", "b2"};
    space.basis_names[2] = {"c"};
    std::map<int, QMatrix> diff;
    QMatrix d0(2, 1);
    d0.at(0, 0) = 1;
    diff[0] = d0;
    std::vector<BracketEntry> entries{{0, 0, 1, 0, 1, q("1")}};
    return make_dgla(std::move(space), std::move(diff), entries);
}

// Abelian with two degree-1 generators, zero differential.
Dgla::Ptr make_two_line()
{
    GradedVectorSpace space;
    space.basis_names[1] = {"e1", "e2"};
    return make_dgla(std::move(space), {}, {});
}

}  // namespace

TEST_CASE("abelian DGLA with square-zero differential validates")
{
    GradedVectorSpace space;
    space.basis_names[0] = {"u"};
    space.basis_names[1] = {"v1", "v2"};
    space.basis_names[2] = {"w"};
    std::map<int, QMatrix> diff;
    QMatrix d0(2, 1);
    d0.at(0, 0) = 1;
    d0.at(1, 0) = 1;
    QMatrix d1(1, 2);
    d1.at(0, 0) = 1;
    d1.at(0, 1) = -1;
    diff[0] = d0;
    diff[1] = d1;
    auto dgla = make_dgla(std::move(space), std::move(diff), {});
    CHECK(validate(*dgla).ok());
}

TEST_CASE("gauge demo catalog element validates")
{
    auto dgla = make_gauge_demo();
    CHECK(validate(*dgla).ok());
    CHECK_FALSE(dgla->bracket_is_zero());
}

TEST_CASE("adding d b1 = c breaks the differential square")
{
    auto base = make_gauge_demo();
    Dgla mutant = *base;
    QMatrix d1(1, 2);
    d1.at(0, 0) = 1;  // d b1 = c
    mutant.differential[1] = d1;
    auto report = validate(mutant);
    REQUIRE_FALSE(report.ok());
    bool found = false;
    for (const auto& v : report.violations)
        if (v.axiom == AxiomViolation::Axiom::DifferentialSquare && v.degrees == std::vector<int>{0} &&
            v.indices == std::vector<int>{0})
            found = true;
    CHECK(found);
}

TEST_CASE("one-sided sign flip breaks skew-symmetry with the right witness")
{
    auto base = make_gauge_demo();
    Dgla mutant = *base;
    mutant.bracket[{1, 0}][{0, 0}] = {{1, q("1")}};  // [b1, a0] = +b2 instead of -b2
    auto report = validate(mutant);
    REQUIRE_FALSE(report.ok());
    bool found = false;
    for (const auto& v : report.violations)
        if (v.axiom == AxiomViolation::Axiom::SkewSymmetry)
            found = true;
    CHECK(found);
}

TEST_CASE("bracket symmetrization fills the opposite order")
{
    auto dgla = make_gauge_demo();
    QVector mirrored = dgla->bracket_of_basis(1, 0, 0, 0);
    CHECK(mirrored == QVector{q("0"), q("-1")});  // [b1, a0] = -b2
}

TEST_CASE("inconsistent redundant bracket data is rejected")
{
    GradedVectorSpace space;
    space.basis_names[0] = {"a0"};
    space.basis_names[1] = {"b1", "b2"};
    space.basis_names[2] = {"c"};
    std::map<int, QMatrix> diff;
    QMatrix d0(2, 1);
    d0.at(0, 0) = 1;
    diff[0] = d0;
    std::vector<BracketEntry> entries{{0, 0, 1, 0, 1, q("1")}, {1, 0, 0, 0, 1, q("1")}};
    CHECK_THROWS_AS(make_dgla(std::move(space), std::move(diff), entries), InputError);
}

TEST_CASE("even-degree self bracket must vanish")
{
    GradedVectorSpace space;
    space.basis_names[0] = {"a"};
    std::vector<BracketEntry> entries{{0, 0, 0, 0, 0, q("1")}};
    CHECK_THROWS_AS(make_dgla(std::move(space), {}, entries), InputError);
}

TEST_CASE("differential_eval applies the matrix to the L factor")
{
    auto dgla = make_gauge_demo();
    auto alg = build_truncated_algebra({"t"}, 3, {});
    QMatrix c(1, 3);
    c.at(0, 1) = 1;  // a0 (x) t
    DglaCochain u(dgla, alg, 0, c);
    DglaCochain du = differential_eval(u);
    CHECK(du.degree() == 1);
    CHECK(du.coefficient(0, 1) == q("1"));  // b1 (x) t
    CHECK(du.coefficient(1, 1) == q("0"));
}

TEST_CASE("bracket_eval multiplies monomials and structure constants")
{
    auto dgla = make_gauge_demo();
    auto alg = build_truncated_algebra({"t"}, 3, {});
    QMatrix ca(1, 3);
    ca.at(0, 1) = 1;  // a0 (x) t
    DglaCochain a(dgla, alg, 0, ca);
    QMatrix cx(2, 3);
    cx.at(0, 1) = 1;  // b1 (x) t
    DglaCochain x(dgla, alg, 1, cx);
    DglaCochain br = bracket_eval(a, x);
    CHECK(br.degree() == 1);
    CHECK(br.coefficient(1, 2) == q("1"));  // b2 (x) t^2

    QMatrix cy(2, 3);
    cy.at(1, 2) = 1;  // b2 (x) t^2
    DglaCochain y(dgla, alg, 1, cy);
    CHECK(bracket_eval(a, y).is_zero());  // t * t^2 = 0
}

TEST_CASE("cochains reject coefficients on the unit monomial")
{
    auto dgla = make_gauge_demo();
    auto alg = build_truncated_algebra({"t"}, 2, {});
    QMatrix c(1, 2);
    c.at(0, 0) = 1;
    CHECK_THROWS_AS(DglaCochain(dgla, alg, 0, c), InputError);
}

TEST_CASE("equalizer of identity with itself is everything")
{
    auto dgla = make_gauge_demo();
    auto id = identity_dgla_morphism(dgla);
    auto sub = equalizer_subalgebra(id, id);
    for (int d : dgla->degrees())
        CHECK(sub.sub->dim(d) == dgla->dim(d));
    CHECK(validate(*sub.sub).ok());
}

TEST_CASE("equalizer of swap and identity is the diagonal line")
{
    auto dgla = make_two_line();
    QMatrix swap(2, 2);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    auto f = make_dgla_morphism(dgla, dgla, {{1, swap}});
    auto g = identity_dgla_morphism(dgla);
    auto sub = equalizer_subalgebra(f, g);
    CHECK(sub.sub->dim(1) == 1);
    QMatrix incl = sub.inclusion.map_matrix(1);
    CHECK(incl.col(0) == QVector{q("1"), q("1")});
}

TEST_CASE("equalizer of -identity and identity is zero")
{
    auto dgla = make_two_line();
    QMatrix neg = QMatrix::identity(2).scaled(q("-1"));
    auto f = make_dgla_morphism(dgla, dgla, {{1, neg}});
    auto g = identity_dgla_morphism(dgla);
    auto sub = equalizer_subalgebra(f, g);
    CHECK(sub.sub->dim(1) == 0);
}

TEST_CASE("invariants of the trivial group are everything")
{
    auto dgla = make_gauge_demo();
    GroupAction action;
    action.element_names = {"1"};
    action.table = {{0}};
    action.matrices.resize(1);
    auto sub = invariant_subalgebra(dgla, action);
    for (int d : dgla->degrees())
        CHECK(sub.sub->dim(d) == dgla->dim(d));
}

TEST_CASE("C2 swap invariants are the diagonal, and the projector is idempotent")
{
    auto dgla = make_two_line();
    QMatrix swap(2, 2);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    GroupAction action;
    action.element_names = {"1", "s"};
    action.table = {{0, 1}, {1, 0}};
    action.matrices.resize(2);
    action.matrices[1][1] = swap;
    auto sub = invariant_subalgebra(dgla, action);
    REQUIRE(sub.sub->dim(1) == 1);
    CHECK(sub.inclusion.map_matrix(1).col(0) == QVector{q("1"), q("1")});

    QMatrix p = averaging_projector(dgla, action, 1);
    CHECK(p * p == p);
    CHECK(p.rank() == 1);
}

TEST_CASE("C2 acting by -1 has no invariants in degree 1")
{
    auto dgla = make_two_line();
    GroupAction action;
    action.element_names = {"1", "s"};
    action.table = {{0, 1}, {1, 0}};
    action.matrices.resize(2);
    action.matrices[1][1] = QMatrix::identity(2).scaled(q("-1"));
    auto sub = invariant_subalgebra(dgla, action);
    CHECK(sub.sub->dim(1) == 0);
}

TEST_CASE("invariants agree with the simultaneous equalizer over group elements")
{
    auto dgla = make_two_line();
    QMatrix swap(2, 2);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    GroupAction action;
    action.element_names = {"1", "s"};
    action.table = {{0, 1}, {1, 0}};
    action.matrices.resize(2);
    action.matrices[1][1] = swap;
    auto inv = invariant_subalgebra(dgla, action);
    auto f = make_dgla_morphism(dgla, dgla, {{1, swap}});
    auto eq = equalizer_subalgebra(f, identity_dgla_morphism(dgla));
    for (int d : dgla->degrees())
        CHECK(inv.sub->dim(d) == eq.sub->dim(d));
}

TEST_CASE("non-automorphism actions are rejected")
{
    auto dgla = make_gauge_demo();
    GroupAction action;
    action.element_names = {"1", "s"};
    action.table = {{0, 1}, {1, 0}};
    action.matrices.resize(2);
    QMatrix bad(2, 2);
    bad.at(0, 0) = 1;
    bad.at(1, 1) = -1;  // scaling b2 alone breaks the bracket with a0
    action.matrices[1][1] = bad;
    CHECK_THROWS_AS(invariant_subalgebra(dgla, action), InputError);
}

TEST_CASE("direct sums and transports stay valid")
{
    auto a = make_gauge_demo();
    auto b = make_two_line();
    auto sum = direct_sum(a, b);
    CHECK(validate(*sum).ok());
    CHECK(sum->dim(1) == 4);

    std::map<int, QMatrix> maps;
    for (int d : sum->degrees())
        maps[d] = QMatrix::identity(sum->dim(d));
    maps[1].at(0, 1) = q("3");  // shear
    auto moved = transport(sum, maps);
    CHECK(validate(*moved).ok());
}

TEST_CASE("equalizer output of random-ish morphism pairs validates")
{
    auto dgla = make_gauge_demo();
    // Grading automorphism x -> c^deg x is a DGLA morphism.
    std::map<int, QMatrix> maps;
    Rational c = q("2");
    maps[0] = QMatrix::identity(1).scaled(c);
    maps[1] = QMatrix::identity(2).scaled(c * c);
    maps[2] = QMatrix::identity(1).scaled(c * c * c);
    // Not a morphism: scaling must follow the grading for brackets to survive.
    CHECK_THROWS_AS(make_dgla_morphism(dgla, dgla, maps), InputError);

    std::map<int, QMatrix> grading;
    grading[0] = QMatrix::identity(1).scaled(c);
    grading[1] = QMatrix::identity(2).scaled(c);
    grading[2] = QMatrix::identity(1).scaled(c);
    // x -> c x commutes with d but scales [x,y] by c^2 against c; also not
    // a morphism unless the bracket vanishes.
    CHECK_THROWS_AS(make_dgla_morphism(dgla, dgla, grading), InputError);

    auto id = identity_dgla_morphism(dgla);
    auto sub = equalizer_subalgebra(id, id);
    CHECK(validate(*sub.sub).ok());
}
