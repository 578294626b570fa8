#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "deform/artin.hpp"

using namespace deform;

namespace {

Rational q(const char* s) { return rational_from_string(s); }

ArtinAlgebra::Ptr truncated_power_series(const std::string& gen, int order)
{
    return build_truncated_algebra({gen}, order, {});
}

}  // namespace

TEST_CASE("truncated algebra Q[t]/(t^3)")
{
    auto a = truncated_power_series("t", 3);
    CHECK(a->dim() == 3);
    CHECK(a->basis_names() == std::vector<std::string>{"1", "t", "t^2"});
    CHECK(a->nil_index() == 3);
}

TEST_CASE("truncated algebra Q[x,y] with m^2 = 0")
{
    auto a = build_truncated_algebra({"x", "y"}, 2, {});
    CHECK(a->basis_names() == std::vector<std::string>{"1", "x", "y"});
    for (int i = 1; i < 3; ++i)
        for (int j = 1; j < 3; ++j)
            CHECK(a->product(i, j).empty());
}

TEST_CASE("relation t^3 reproduces the truncation-3 table entrywise")
{
    auto with_relation = build_truncated_algebra({"t"}, 4, {Monomial({3})});
    auto truncated = truncated_power_series("t", 3);
    REQUIRE(with_relation->dim() == truncated->dim());
    CHECK(with_relation->basis_names() == truncated->basis_names());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(with_relation->product(i, j) == truncated->product(i, j));
    CHECK(with_relation->nil_index() == truncated->nil_index());
}

TEST_CASE("construction rejects bad input")
{
    CHECK_THROWS_AS(build_truncated_algebra({}, 2, {}), InputError);
    CHECK_NOTHROW(build_truncated_algebra({}, 1, {}));
    CHECK_THROWS_AS(build_truncated_algebra({"t", "t"}, 2, {}), InputError);
    CHECK_THROWS_AS(build_truncated_algebra({"t"}, 0, {}), InputError);
    CHECK_THROWS_AS(build_truncated_algebra({"t"}, 2, {Monomial({0})}), InputError);
}

TEST_CASE("element multiplication in Q[t]/(t^3)")
{
    auto a = truncated_power_series("t", 3);
    AlgebraElement one_plus_t(a, {q("1"), q("1"), q("0")});
    AlgebraElement sq = multiply(one_plus_t, one_plus_t);
    CHECK(sq.coefficients() == QVector{q("1"), q("2"), q("1")});

    AlgebraElement t = AlgebraElement::basis(a, 1);
    AlgebraElement t2 = AlgebraElement::basis(a, 2);
    CHECK(multiply(t, t2).is_zero());
}

TEST_CASE("element multiplication in Q[x,y]/m^3")
{
    auto a = build_truncated_algebra({"x", "y"}, 3, {});
    // basis: 1, x, y, x^2, x*y, y^2
    AlgebraElement x = AlgebraElement::basis(a, 1);
    AlgebraElement y = AlgebraElement::basis(a, 2);
    AlgebraElement s = multiply(x + y, x + y);
    int ix2 = 3, ixy = 4, iy2 = 5;
    CHECK(a->basis_names()[ix2] == "x^2");
    CHECK(a->basis_names()[ixy] == "x*y");
    CHECK(s.coefficient(ix2) == q("1"));
    CHECK(s.coefficient(ixy) == q("2"));
    CHECK(s.coefficient(iy2) == q("1"));
}

TEST_CASE("mismatched algebras are rejected")
{
    auto a = truncated_power_series("t", 3);
    auto b = truncated_power_series("t", 3);
    CHECK_THROWS_AS(multiply(AlgebraElement::basis(a, 1), AlgebraElement::basis(b, 1)), InputError);
}

TEST_CASE("fiber product of two dual number algebras over Q")
{
    auto B = truncated_power_series("eps", 2);
    auto C = truncated_power_series("del", 2);
    auto F = rational_field();
    auto f = truncation_morphism(B, F);
    auto g = truncation_morphism(C, F);
    auto fp = fiber_product(f, g);
    CHECK(fp.algebra->dim() == 3);
    CHECK(fp.algebra->basis_names() == std::vector<std::string>{"1", "eps", "del"});
    for (int i = 1; i < 3; ++i)
        for (int j = 1; j < 3; ++j)
            CHECK(fp.algebra->product(i, j).empty());
    CHECK(fp.algebra->nil_index() == 2);
}

TEST_CASE("fiber product along the identity recovers the other factor")
{
    auto B = truncated_power_series("t", 3);
    auto A = truncated_power_series("t", 2);
    auto f = truncation_morphism(B, A);
    auto g = identity_morphism(A);
    auto fp = fiber_product(f, g);
    CHECK(fp.algebra->dim() == B->dim());
    CHECK(fp.to_first.matrix().rank() == B->dim());  // iso onto B
}

TEST_CASE("fiber product equalizer example recovers Q[t]/(t^3)")
{
    auto B = truncated_power_series("t", 3);
    auto A = truncated_power_series("t", 2);
    auto C = A;
    auto f = truncation_morphism(B, A);
    auto g = identity_morphism(A);
    auto fp = fiber_product(f, g);
    CHECK(fp.algebra->dim() == 3);
    CHECK(fp.algebra->nil_index() == 3);
}

TEST_CASE("fiber product universal property on a sampled cone")
{
    auto B = truncated_power_series("t", 3);
    auto A = truncated_power_series("t", 2);
    auto f = truncation_morphism(B, A);
    auto g = identity_morphism(A);
    auto fp = fiber_product(f, g);

    // Test algebra T = Q[s]/(s^3) with u: T -> B, s -> t + t^2 and
    // v = f o u : T -> A; the induced map to the fiber product must be a
    // morphism commuting with both projections.
    auto T = truncated_power_series("s", 3);
    AlgebraElement im(B, {q("0"), q("1"), q("1")});
    auto u = make_morphism(T, B, {im});
    auto v = compose(f, u);

    const int nd = fp.algebra->dim();
    QMatrix basis_cols(B->dim() + A->dim(), nd);
    for (int i = 0; i < nd; ++i) {
        QVector w = fp.pair_basis[i];
        basis_cols.set_col(i, w);
    }
    QMatrix stacked = u.matrix().vstack(v.matrix());
    auto induced = basis_cols.solve_matrix(stacked);
    REQUIRE(induced.has_value());
    auto h = make_morphism_on_basis(T, fp.algebra, *induced);  // validates morphism
    CHECK(compose(fp.to_first, h).matrix() == u.matrix());
    CHECK(compose(fp.to_second, h).matrix() == v.matrix());
}

TEST_CASE("small extension of dual numbers over Q is a single step")
{
    auto A = truncated_power_series("eps", 2);
    auto F = rational_field();
    auto steps = factor_small_extensions(truncation_morphism(A, F));
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].ideal_dim() == 1);
    CHECK(steps[0].ideal_basis()[0].to_string() == "eps");
}

TEST_CASE("factoring Q[t]/(t^3) -> Q takes two small steps")
{
    auto A = truncated_power_series("t", 3);
    auto F = rational_field();
    auto steps = factor_small_extensions(truncation_morphism(A, F));
    REQUIRE(steps.size() == 2);
    CHECK(steps[0].total() == A);
    CHECK(steps[0].quotient()->dim() == 2);  // Q[t]/(t^2)
    CHECK(steps[1].quotient() == F);
    // Smallness at every stage: each ideal element times each positive
    // degree basis element vanishes.
    for (const auto& step : steps)
        for (const auto& kappa : step.ideal_basis())
            for (int i = 1; i < step.total()->dim(); ++i)
                CHECK(multiply(AlgebraElement::basis(step.total(), i), kappa).is_zero());
}

TEST_CASE("factoring Q[t]/(t^4) -> Q[t]/(t^2) goes through Q[t]/(t^3)")
{
    auto A = truncated_power_series("t", 4);
    auto Abar = truncated_power_series("t", 2);
    auto steps = factor_small_extensions(truncation_morphism(A, Abar));
    REQUIRE(steps.size() == 2);
    CHECK(steps[0].quotient()->dim() == 3);
    CHECK(steps[0].quotient()->basis_names() == std::vector<std::string>{"1", "t", "t^2"});
    CHECK(steps[1].quotient() == Abar);
    // The chain composes to the original surjection.
    auto composite = compose(steps[1].projection(), steps[0].projection());
    CHECK(composite.matrix() == truncation_morphism(A, Abar).matrix());
}

TEST_CASE("factoring rejects non-surjective input")
{
    auto A = truncated_power_series("t", 2);
    auto B = truncated_power_series("t", 3);
    // t -> t^2 is a morphism into Q[t]/(t^3) but not surjective.
    auto f = make_morphism(A, B, {AlgebraElement::basis(B, 2)});
    CHECK_THROWS_AS(factor_small_extensions(f), InputError);
}

TEST_CASE("splitting is a section and perturbs inside the ideal")
{
    auto A = truncated_power_series("t", 3);
    auto Abar = truncated_power_series("t", 2);
    auto ext = make_small_extension(truncation_morphism(A, Abar));
    CHECK(ext.projection().matrix() * ext.splitting() == QMatrix::identity(2));
    CHECK(ext.ideal_dim() == 1);

    QMatrix pert(3, 2);
    pert.at(2, 1) = q("5");  // t -> t + 5 t^2
    auto ext2 = ext.with_perturbed_splitting(pert);
    CHECK(ext2.projection().matrix() * ext2.splitting() == QMatrix::identity(2));

    QMatrix bad(3, 2);
    bad.at(1, 1) = q("1");  // t-direction is not in the ideal
    CHECK_THROWS_AS(ext.with_perturbed_splitting(bad), InputError);
}

TEST_CASE("nil index is bounded by the truncation order")
{
    for (int order = 1; order <= 5; ++order) {
        auto a = truncated_power_series("t", order);
        CHECK(a->nil_index() <= order);
    }
    auto b = build_truncated_algebra({"x", "y"}, 4, {Monomial({2, 0}), Monomial({0, 2})});
    CHECK(b->nil_index() <= 4);
    // x^2 = y^2 = 0 leaves x*y as the deepest monomial.
    CHECK(b->nil_index() == 3);
}

TEST_CASE("adapted basis orders match monomial degrees for monomial algebras")
{
    auto a = build_truncated_algebra({"x", "y"}, 3, {});
    const auto& orders = a->adapted_orders();
    REQUIRE(static_cast<int>(orders.size()) == a->dim());
    CHECK(orders[0] == 0);
    for (int i = 1; i < a->dim(); ++i)
        CHECK(orders[i] == a->basis_degrees()[i]);
}
