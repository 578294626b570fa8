#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "deform/matrix.hpp"

using namespace deform;

namespace {

Rational q(const char* s) { return rational_from_string(s); }

}  // namespace

TEST_CASE("rref computes rank and pivots deterministically")
{
    QMatrix m({{q("1"), q("2"), q("3")}, {q("2"), q("4"), q("6")}, {q("0"), q("1"), q("1")}});
    auto r = m.rref();
    CHECK(r.rank == 2);
    CHECK(r.pivot_cols == std::vector<int>{0, 1});
    CHECK(r.reduced.at(0, 2) == q("1"));
    CHECK(r.reduced.at(1, 2) == q("1"));
}

TEST_CASE("kernel basis solves the homogeneous system")
{
    QMatrix m({{q("1"), q("1"), q("0")}, {q("0"), q("0"), q("1")}});
    auto k = m.kernel_basis();
    REQUIRE(k.size() == 1);
    CHECK(is_zero(m.apply(k[0])));
    CHECK(k[0] == QVector{q("-1"), q("1"), q("0")});
}

TEST_CASE("solve returns a particular solution or detects inconsistency")
{
    QMatrix m({{q("1"), q("2")}, {q("2"), q("4")}});
    CHECK(m.solve({q("1"), q("2")}).has_value());
    CHECK_FALSE(m.solve({q("1"), q("3")}).has_value());
    auto x = m.solve({q("3"), q("6")});
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == QVector{q("3"), q("6")});
}

TEST_CASE("inverse round-trips")
{
    QMatrix m({{q("2"), q("1")}, {q("1"), q("1")}});
    auto inv = m.inverse();
    REQUIRE(inv.has_value());
    CHECK(m * *inv == QMatrix::identity(2));
    CHECK(*inv * m == QMatrix::identity(2));
}

TEST_CASE("rank and nullity add up across random-ish matrices")
{
    QMatrix m({{q("1"), q("1"), q("2"), q("0")},
               {q("0"), q("1"), q("1"), q("1")},
               {q("1"), q("0"), q("1"), q("-1")}});
    CHECK(m.rank() + static_cast<int>(m.kernel_basis().size()) == m.cols());
    CHECK(m.rank() == m.transpose().rank());
}

TEST_CASE("subspace membership and intersection")
{
    Subspace a = span_of_vectors({{q("1"), q("0"), q("1")}, {q("0"), q("1"), q("0")}}, 3);
    Subspace b = span_of_vectors({{q("1"), q("1"), q("1")}}, 3);
    CHECK(a.contains({q("1"), q("1"), q("1")}));
    CHECK_FALSE(a.contains({q("1"), q("0"), q("0")}));
    Subspace c = intersect(a, b);
    CHECK(c.dim() == 1);
    CHECK(c.contains({q("1"), q("1"), q("1")}));
}
