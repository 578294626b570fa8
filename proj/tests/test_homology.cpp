#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "deform/homology.hpp"

using namespace deform;

namespace {

Rational q(const char* s) { return rational_from_string(s); }

CochainComplex::Ptr two_step()
{
    // C^0 = Q^2, C^1 = Q^2, d0 = [[0,1],[0,0]], d1 = 0.
    QMatrix d0(2, 2);
    d0.at(0, 1) = 1;
    return CochainComplex::make({{0, {"u1", "u2"}}, {1, {"v1", "v2"}}}, {{0, d0}});
}

}  // namespace

TEST_CASE("a point complex has one-dimensional H^0")
{
    auto c = CochainComplex::make({{0, {"x"}}}, {});
    auto h0 = cohomology(c, 0);
    CHECK(h0.dim() == 1);
    CHECK(cohomology(c, 1).dim() == 0);
    CHECK(cohomology(c, -5).dim() == 0);
}

TEST_CASE("rank-one differential leaves H^0 and H^1 one-dimensional")
{
    auto c = two_step();
    CHECK(cohomology(c, 0).dim() == 1);
    CHECK(cohomology(c, 1).dim() == 1);
}

TEST_CASE("zero differential gives H^p = C^p")
{
    auto c = CochainComplex::make({{1, {"e"}}, {2, {"f"}}}, {});
    CHECK(cohomology(c, 1).dim() == 1);
    CHECK(cohomology(c, 2).dim() == 1);
}

TEST_CASE("rank-nullity agrees with an independent transpose elimination")
{
    auto c = two_step();
    for (int p : {0, 1}) {
        QMatrix d_out = c->differential(p);
        QMatrix d_in = c->differential(p - 1);
        int nullity = static_cast<int>(d_out.kernel_basis().size());
        int rank_in = d_in.transpose().rank();  // transpose route
        CHECK(cohomology(c, p).dim() == nullity - rank_in);
    }
}

TEST_CASE("projection kills exactly the coboundaries and fixes representatives")
{
    auto c = two_step();
    auto h1 = cohomology(c, 1);
    REQUIRE(h1.dim() == 1);
    // Coboundary from C^0.
    QVector db = c->differential(0).apply({q("3"), q("7")});
    CHECK(is_zero(class_of(h1, db).plain()));
    // Representatives project to unit vectors.
    for (size_t i = 0; i < h1.representatives().size(); ++i) {
        QVector coords = class_of(h1, h1.representatives()[i]).plain();
        for (size_t j = 0; j < coords.size(); ++j)
            CHECK(coords[j] == (i == j ? q("1") : q("0")));
    }
}

TEST_CASE("class_of is linear on cocycles")
{
    auto c = two_step();
    auto h1 = cohomology(c, 1);
    QVector a{q("1"), q("2")}, b{q("-3"), q("5")};
    QVector sum = a + b;
    QVector ca = class_of(h1, a).plain();
    QVector cb = class_of(h1, b).plain();
    CHECK(class_of(h1, sum).plain() == ca + cb);
}

TEST_CASE("class_of rejects non-cocycles")
{
    auto c = two_step();
    auto h0 = cohomology(c, 0);
    CHECK_THROWS_AS(class_of(h0, QVector{q("0"), q("1")}), InputError);
}

TEST_CASE("preimage of zero is zero")
{
    auto c = two_step();
    auto r = preimage_d(c, 0, QVector{q("0"), q("0")});
    REQUIRE(std::holds_alternative<QVector>(r));
    CHECK(is_zero(std::get<QVector>(r)));
}

TEST_CASE("preimage solves d z = target exactly when possible")
{
    auto c = two_step();
    QVector target{q("5"), q("0")};
    auto r = preimage_d(c, 0, target);
    REQUIRE(std::holds_alternative<QVector>(r));
    CHECK(c->differential(0).apply(std::get<QVector>(r)) == target);
}

TEST_CASE("unsolvable cocycle target returns its own class")
{
    auto c = CochainComplex::make({{0, {"x"}}, {1, {"y"}}}, {});
    auto r = preimage_d(c, 0, QVector{q("2")});
    REQUIRE(std::holds_alternative<NoSolution>(r));
    auto cls = std::get<NoSolution>(r).obstruction;
    CHECK(cls.plain() == QVector{q("2")});
}

TEST_CASE("preimage with randomized kernel still solves the system")
{
    auto c = two_step();
    QVector target{q("1"), q("0")};
    int counter = 0;
    std::function<Rational()> rnd = [&]() { return Rational(++counter); };
    auto r = preimage_d(c, 0, target, &rnd);
    REQUIRE(std::holds_alternative<QVector>(r));
    CHECK(c->differential(0).apply(std::get<QVector>(r)) == target);
}

TEST_CASE("preimage for the gauge demo solves the 1x1 system")
{
    // L_gauge's underlying complex: d a0 = b1.
    QMatrix d0(2, 1);
    d0.at(0, 0) = 1;
    auto c = CochainComplex::make({{0, {"a0"}}, {1, {"b1", "b2"}}, {2, {"c"}}}, {{0, d0}});
    auto r = preimage_d(c, 0, QVector{q("1"), q("0")});
    REQUIRE(std::holds_alternative<QVector>(r));
    CHECK(std::get<QVector>(r) == QVector{q("1")});
}
