#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "deform/models.hpp"

using namespace deform;

namespace {

Rational q(const char* s) { return rational_from_string(s); }

}  // namespace

TEST_CASE("catalog loads with every expected property re-verified")
{
    auto entries = catalog();
    std::set<std::string> names;
    for (const auto& e : entries)
        names.insert(e.name);
    for (const char* required : {"abelian_line", "obstructed", "unobstructed_corrected",
                                 "gauge_demo", "swap_quotient"})
        CHECK(names.count(required) == 1);
}

TEST_CASE("catalog obstructed entry has one-dimensional H^2")
{
    auto entry = catalog_entry("obstructed");
    CHECK(cohomology(complex_of(entry.dgla), 2).dim() == 1);
}

TEST_CASE("swap_quotient invariants are one-dimensional in degree 1")
{
    auto entry = catalog_entry("swap_quotient");
    REQUIRE(entry.action.has_value());
    auto sub = invariant_subalgebra(entry.dgla, *entry.action);
    CHECK(sub.sub->dim(1) == 1);
}

TEST_CASE("abelian oracle: trivial H^1 collapses all solutions")
{
    auto entry = catalog_entry("abelian_fold");  // acyclic
    auto A = build_truncated_algebra({"t"}, 3, {});
    auto oracle = def_abelian_oracle(entry.dgla, A);
    CHECK(oracle.h1().dim() == 0);
    // Any two solutions are equivalent: the orbit table is empty.
    QMatrix c(entry.dgla->dim(1), 3);
    c.at(0, 1) = 1;
    c.at(1, 1) = 1;  // v1 + v2 direction is a cocycle
    DglaCochain x(entry.dgla, A, 1, c);
    REQUIRE(oracle.is_solution(x));
    DglaCochain y(entry.dgla, A, 1);
    CHECK(oracle.equivalent(x, y));
}

TEST_CASE("abelian oracle matches the gauge decision on the gauge_demo_abelian grid")
{
    auto entry = catalog_entry("gauge_demo_abelian");
    auto A = build_truncated_algebra({"eps"}, 2, {});
    auto oracle = def_abelian_oracle(entry.dgla, A);

    std::vector<DglaCochain> solutions;
    for (int c1 = -1; c1 <= 1; ++c1)
        for (int c2 = -1; c2 <= 1; ++c2) {
            QMatrix c(2, 2);
            c.at(0, 1) = c1;
            c.at(1, 1) = c2;
            DglaCochain x(entry.dgla, A, 1, c);
            if (oracle.is_solution(x))
                solutions.push_back(x);
        }
    REQUIRE(solutions.size() == 9);
    for (const auto& x : solutions)
        for (const auto& y : solutions) {
            bool oracle_eq = oracle.equivalent(x, y);
            auto verdict = gauge_equivalent(McSolution::verify(x), McSolution::verify(y));
            REQUIRE(verdict.kind != EquivalenceVerdict::Kind::Unknown);
            CHECK(oracle_eq == (verdict.kind == EquivalenceVerdict::Kind::Equivalent));
        }
}

TEST_CASE("oracle rejects nonabelian input and the field gives a single point")
{
    auto entry = catalog_entry("obstructed");
    auto A = build_truncated_algebra({"t"}, 2, {});
    CHECK_THROWS_AS(def_abelian_oracle(entry.dgla, A), InputError);

    auto line = catalog_entry("abelian_line");
    auto F = rational_field();
    auto oracle = def_abelian_oracle(line.dgla, F);
    DglaCochain zero(line.dgla, F, 1);
    CHECK(oracle.equivalent(zero, zero));  // the only solution over the field
}

TEST_CASE("trivial group model identifies both edges with V")
{
    EquivariantComplex data;
    data.group = FiniteGroup::cyclic(1);
    data.v_dim = 1;
    data.v_action = {QMatrix::identity(1)};
    data.r_dims = {1};
    data.r_action = {{QMatrix::identity(1)}};
    data.augmentation = QMatrix::identity(1);
    auto result = group_cech_model(data);
    CHECK(result.input_exact);
    CHECK(validate(result.model).ok());
    auto t = total_cohomology(result.model, 0);
    CHECK(t.left == 1);
    CHECK(t.bottom == 1);
    CHECK(t.total == 1);
    auto r = transfer_class(result.model, TransferDirection::BottomToLeft, 0, {q("1")});
    CHECK_FALSE(r.output.is_zero());
}

TEST_CASE("C2 with the two-step swap resolution has matching H^0 and nothing else")
{
    // R^0 = Q^2 with the swap action, R^1 = Q via the difference map,
    // V = trivial line embedded diagonally.
    EquivariantComplex data;
    data.group = FiniteGroup::cyclic(2);
    data.v_dim = 1;
    data.v_action = {QMatrix::identity(1), QMatrix::identity(1)};
    data.r_dims = {2, 1};
    QMatrix swap(2, 2);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    QMatrix sign1(1, 1);
    sign1.at(0, 0) = -1;
    data.r_action = {{QMatrix::identity(2), swap}, {QMatrix::identity(1), sign1}};
    QMatrix d0(1, 2);
    d0.at(0, 0) = 1;
    d0.at(0, 1) = -1;
    data.r_differential = {d0};
    QMatrix aug(2, 1);
    aug.at(0, 0) = 1;
    aug.at(1, 0) = 1;
    data.augmentation = aug;

    auto result = group_cech_model(data);
    CHECK(result.input_exact);
    CHECK(validate(result.model).ok());
    CHECK(result.hypotheses.rows_exact());
    CHECK(result.hypotheses.columns_exact());
    for (int n = 0; n <= 1; ++n) {
        auto t = total_cohomology(result.model, n);
        CHECK(t.left == (n == 0 ? 1 : 0));
        CHECK(t.bottom == (n == 0 ? 1 : 0));
        CHECK(t.total == (n == 0 ? 1 : 0));
    }
    auto r = transfer_class(result.model, TransferDirection::BottomToLeft, 0, {q("1")});
    auto back = transfer_class(result.model, TransferDirection::LeftToBottom, 0, r.output.plain());
    CHECK(back.output.plain() == QVector{q("1")});
}

TEST_CASE("sign representation kills all cohomology")
{
    EquivariantComplex data;
    data.group = FiniteGroup::cyclic(2);
    data.v_dim = 1;
    QMatrix minus(1, 1);
    minus.at(0, 0) = -1;
    data.v_action = {QMatrix::identity(1), minus};
    data.r_dims = {2, 1};
    QMatrix swap(2, 2);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    data.r_action = {{QMatrix::identity(2), swap}, {QMatrix::identity(1), QMatrix::identity(1)}};
    QMatrix d0(1, 2);
    d0.at(0, 0) = 1;
    d0.at(0, 1) = 1;
    data.r_differential = {d0};
    QMatrix aug(2, 1);
    aug.at(0, 0) = 1;
    aug.at(1, 0) = -1;
    data.augmentation = aug;

    auto result = group_cech_model(data);
    CHECK(result.input_exact);
    for (int n = 0; n <= 1; ++n) {
        auto t = total_cohomology(result.model, n);
        CHECK(t.left == 0);
        CHECK(t.bottom == 0);
    }
}

TEST_CASE("100 seeded random group models satisfy the hypotheses and round-trip")
{
    for (uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        auto data = random_equivariant_complex(rng);
        auto result = group_cech_model(data);
        REQUIRE(result.input_exact);
        REQUIRE(validate(result.model).ok());
        REQUIRE(result.hypotheses.rows_exact());
        REQUIRE(result.hypotheses.columns_exact());
        // Row tails are genuinely exact (finite exact coefficient complex).
        for (const auto& row : result.hypotheses.rows)
            REQUIRE(row.tail);
        const int top = std::min(result.model.body.P, result.model.body.Q);
        for (int n = 0; n <= top; ++n) {
            auto t = total_cohomology(result.model, n);
            REQUIRE(t.left == t.bottom);
            REQUIRE(t.left == t.total);
            auto hb = cohomology(result.model.bottom_edge, n);
            for (int i = 0; i < hb.dim(); ++i) {
                QVector cls(hb.dim(), Rational(0));
                cls[i] = 1;
                auto there = transfer_class(result.model, TransferDirection::BottomToLeft, n, cls);
                auto back =
                    transfer_class(result.model, TransferDirection::LeftToBottom, n, there.output.plain());
                REQUIRE(back.output.plain() == cls);
            }
        }
    }
}

TEST_CASE("simplicial model edges agree with the independent simplicial cohomology")
{
    for (int n : {2, 3}) {
        auto K = SimplicialComplex::boundary_of_simplex(n);
        auto ab = cech_simplicial_model(K);
        auto independent = simplicial_cochain_complex(K);
        for (int d = 0; d <= K.dim(); ++d) {
            int expected = cohomology(independent, d).dim();
            CHECK(cohomology(ab.bottom_edge, d).dim() == expected);
            CHECK(cohomology(ab.left_edge, d).dim() == expected);
        }
    }
}

TEST_CASE("single vertex gives the trivial single-entry model")
{
    auto K = SimplicialComplex::from_maximal({{"p"}});
    auto ab = cech_simplicial_model(K);
    CHECK(ab.body.P == 0);
    CHECK(ab.body.Q == 0);
    CHECK(ab.body.dim(0, 0) == 1);
    CHECK(validate(ab).ok());
}

TEST_CASE("group model truncation level does not change cohomology below it")
{
    Rng rng(7);
    auto data = random_equivariant_complex(rng);
    auto base = group_cech_model(data);
    auto extended = group_cech_model(data, base.model.body.P + 1);
    const int top = std::min(base.model.body.P, base.model.body.Q);
    for (int n = 0; n <= top; ++n) {
        auto a = total_cohomology(base.model, n);
        auto b = total_cohomology(extended.model, n);
        CHECK(a.left == b.left);
        CHECK(a.bottom == b.bottom);
        CHECK(a.total == b.total);
    }
}
