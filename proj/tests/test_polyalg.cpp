#include "doctest.h"

#include "rhkit/multipoly.hpp"

using namespace rhkit;
using namespace rhkit::polyalg;

namespace {

const MultiPoly kDelta = parse_poly("(t1+t2)*(t1*t2+1) - 4*t1*t2", 2);

QVector pt(std::initializer_list<long> xs) {
    QVector v;
    for (long x : xs)
        v.push_back(Rational(x));
    return v;
}

}  // namespace

TEST_CASE("parser and printer") {
    MultiPoly p = parse_poly("x1^2 + x2^2 + (x1+x2)*x1*x2", 2);
    CHECK(p.str() == "x1^2 + x2^2 + x1^2*x2 + x1*x2^2");
    CHECK(parse_poly("0", 2).is_zero());
    CHECK(parse_poly("3/2*x1", 1).str() == "3/2*x1");
    CHECK(parse_poly("t1*t2^-1 - 1", 2).is_laurent());
    CHECK_THROWS(parse_poly("x1 +", 1));
    CHECK_THROWS(parse_poly("y3", 0));
    // round-trip
    CHECK(parse_poly(kDelta.str("t"), 2) == kDelta);
}

TEST_CASE("evaluate") {
    CHECK(parse_poly("x1*x2 - 1", 2).evaluate(pt({1, 1})) == Rational(0));
    CHECK(parse_poly("x1^2 + x2^2", 2).evaluate(pt({1, 2})) == Rational(5));
    CHECK(kDelta.evaluate(pt({1, 1})) == Rational(0));
    CHECK_THROWS(parse_poly("t1^-1", 1).evaluate(pt({0})));
}

TEST_CASE("shift_to_origin") {
    CHECK(parse_poly("t1 - 1", 1).shift_to_origin() == parse_poly("x1", 1));
    CHECK(parse_poly("(t1-1)*(t2-1)", 2).shift_to_origin() == parse_poly("x1*x2", 2));
    // term-by-term binomial oracle for Delta
    MultiPoly expect(2);
    for (const auto& [e, c] : kDelta.terms()) {
        MultiPoly term = MultiPoly::constant(2, c);
        for (std::size_t i = 0; i < 2; ++i) {
            MultiPoly x1 = MultiPoly::variable(2, i) + MultiPoly::constant(2, Rational(1));
            for (int k = 0; k < e[i]; ++k)
                term = term * x1;
        }
        expect += term;
    }
    MultiPoly got = kDelta.shift_to_origin();
    CHECK(got == expect);
    CHECK(got == parse_poly("x1^2 + x2^2 + (x1+x2)*x1*x2", 2));
}

TEST_CASE("initial_form") {
    CHECK(parse_poly("x1 + x1*x2", 2).initial_form() == parse_poly("x1", 2));
    CHECK(kDelta.shift_to_origin().initial_form() == parse_poly("x1^2+x2^2", 2));
    MultiPoly h = parse_poly("x1*x2 + x2^2", 2);
    CHECK(h.initial_form() == h);
    CHECK_THROWS(MultiPoly(2).initial_form());
}

TEST_CASE("initial form of product is product of initial forms") {
    RationalSampler s(5);
    for (int t = 0; t < 15; ++t) {
        MultiPoly p(2), q(2);
        for (int k = 0; k < 4; ++k) {
            p.add_term({static_cast<int>(s.next_u64() % 3), static_cast<int>(s.next_u64() % 3)}, s.next());
            q.add_term({static_cast<int>(s.next_u64() % 3), static_cast<int>(s.next_u64() % 3)}, s.next());
        }
        if (p.is_zero() || q.is_zero())
            continue;
        CHECK((p * q).initial_form() == p.initial_form() * q.initial_form());
    }
}

TEST_CASE("minors") {
    PolyMatrix m(2, 2, 0);
    m.at(0, 0) = MultiPoly::constant(0, Rational(1));
    m.at(0, 1) = MultiPoly::constant(0, Rational(2));
    m.at(1, 0) = MultiPoly::constant(0, Rational(3));
    m.at(1, 1) = MultiPoly::constant(0, Rational(4));
    auto ms = minors(m, 2);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0] == MultiPoly::constant(0, Rational(-2)));
    auto m1 = minors(m, 1);
    REQUIRE(m1.size() == 4);  // entry list in (row, col) lex order
    CHECK(m1[1] == MultiPoly::constant(0, Rational(2)));
    CHECK_THROWS(minors(m, 3));
}

TEST_CASE("pfaffian convention and identities") {
    // [[0,a],[-a,0]] -> a
    PolyMatrix m(2, 2, 1);
    m.at(0, 1) = MultiPoly::variable(1, 0);
    m.at(1, 0) = -MultiPoly::variable(1, 0);
    CHECK(pfaffian(m) == MultiPoly::variable(1, 0));
    CHECK(pfaffian(PolyMatrix(0, 0, 1)) == MultiPoly::constant(1, Rational(1)));

    // generic 4x4 skew symbolic: p12 p34 - p13 p24 + p14 p23 in 6 variables
    PolyMatrix g(4, 4, 6);
    std::size_t var = 0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            g.at(i, j) = MultiPoly::variable(6, var);
            g.at(j, i) = -MultiPoly::variable(6, var);
            ++var;
        }
    // variables in order: p12 p13 p14 p23 p24 p34
    MultiPoly expect = MultiPoly::variable(6, 0) * MultiPoly::variable(6, 5) -
                       MultiPoly::variable(6, 1) * MultiPoly::variable(6, 4) +
                       MultiPoly::variable(6, 2) * MultiPoly::variable(6, 3);
    MultiPoly pf = pfaffian(g);
    CHECK(pf == expect);
    CHECK(pf * pf == determinant(g));  // pf^2 = det via the determinant oracle

    // error paths
    PolyMatrix odd(3, 3, 1);
    CHECK_THROWS(pfaffian(odd));
    PolyMatrix notskew(2, 2, 1);
    notskew.at(0, 1) = MultiPoly::variable(1, 0);
    CHECK_THROWS(pfaffian(notskew));
}

TEST_CASE("pfaffian squared equals determinant on random skew matrices") {
    RationalSampler s(11);
    for (std::size_t n : {2u, 4u, 6u}) {
        PolyMatrix m(n, n, 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                MultiPoly e(2);
                e.add_term({1, 0}, s.next());
                e.add_term({0, 1}, s.next());
                m.at(i, j) = e;
                m.at(j, i) = -e;
            }
        MultiPoly pf = pfaffian(m);
        CHECK(pf * pf == determinant(m));
    }
}

TEST_CASE("exp_direction_vanishes") {
    MultiPoly f = parse_poly("t1*t2 - 1", 2);
    CHECK(f.exp_direction_vanishes(pt({1, -1})));
    CHECK(!f.exp_direction_vanishes(pt({1, 1})));
    CHECK(!kDelta.exp_direction_vanishes(pt({1, 0})));
    CHECK(kDelta.exp_direction_vanishes(pt({0, 0})));

    // zero direction iff f(1,...,1) = 0
    RationalSampler s(3);
    for (int t = 0; t < 10; ++t) {
        MultiPoly g(2);
        for (int k = 0; k < 3; ++k)
            g.add_term({static_cast<int>(s.next_u64() % 5) - 2,
                        static_cast<int>(s.next_u64() % 5) - 2},
                       s.next());
        QVector ones{Rational(1), Rational(1)};
        CHECK(g.exp_direction_vanishes(QVector{Rational(0), Rational(0)}) ==
              g.evaluate(ones).is_zero());
        // cone property: x and c*x agree
        QVector x = s.next_vector(2);
        Rational c = s.next_nonzero();
        QVector cx = qlinalg::scaled(x, c);
        CHECK(g.exp_direction_vanishes(x) == g.exp_direction_vanishes(cx));
    }
}

TEST_CASE("accepted directions satisfy the initial form (tau inside TC)") {
    MultiPoly f = parse_poly("t1*t2 - 1", 2);
    QVector dir = pt({1, -1});
    REQUIRE(f.exp_direction_vanishes(dir));
    MultiPoly tc = f.shift_to_origin().initial_form();
    CHECK(tc == parse_poly("x1 + x2", 2));
    CHECK(tc.evaluate(dir) == Rational(0));
}

TEST_CASE("laurent clearing") {
    MultiPoly f = parse_poly("t1^-1*t2 - t1", 2);
    auto lc = clear_laurent(f);
    CHECK(!lc.cleared.is_laurent());
    CHECK(lc.shift == Exponents{1, 0});
    CHECK(lc.cleared == parse_poly("t2 - t1^2", 2));
}
