#include <catch2/catch_amalgamated.hpp>

#include "simhol/matrix.hpp"
#include "simhol/poly.hpp"
#include "simhol/ratfunc.hpp"
#include "test_util.hpp"

using namespace simhol;
using simhol::testing::random_point;
using simhol::testing::random_poly;

namespace {
Poly P(const std::string& s, unsigned nvars = 4) { return parse_poly(s, nvars); }
}  // namespace

TEST_CASE("polynomial arithmetic basics") {
    CHECK((P("x1 + 1") + P("x1 - 1")) == P("2*x1"));
    CHECK((P("x1") * P("x1")) == P("x1^2"));
    CHECK((P("x1 + x2") * P("x1 + x2")) == P("x1^2 + 2*x1*x2 + x2^2"));
    CHECK((P("x1 + 1") - P("x1 + 1")).is_zero());
    CHECK_THROWS_AS(P("x1", 2) + P("x1", 3), std::invalid_argument);
}

TEST_CASE("differentiation") {
    CHECK(P("x1^2").derivative(1) == P("2*x1"));
    CHECK(P("x1^3").derivative(0).is_zero());
    CHECK(P("x1*x3*x4^2", 5).derivative(3) == P("x1*x4^2", 5));
    CHECK_THROWS_AS(P("x1").derivative(9), std::out_of_range);
}

TEST_CASE("flat laplacian") {
    std::vector<unsigned> r12{1, 2};
    CHECK(P("x1^2 - x2^2").laplacian(r12).is_zero());
    CHECK(P("x1^2").laplacian(r12) == P("2"));
    // derived oracle: apply differentiate twice
    Poly q = P("1/12*x1^4");
    Poly expect = q.derivative(1).derivative(1);
    std::vector<unsigned> r1{1};
    CHECK(q.laplacian(r1) == expect);
    CHECK(expect == P("x1^2"));
}

TEST_CASE("evaluation") {
    std::vector<Rational> pt{Rational(0), Rational(2), Rational(0), Rational(0)};
    CHECK(P("x1^2 + 1").eval(pt) == Rational(5));
    std::vector<Rational> zeros(4, Rational(0));
    CHECK(P("7/2 + x3*x1 - x0").eval(zeros) == rat(7, 2));
    CHECK_THROWS_AS(RatFunc(P("1"), P("x1")).eval(zeros), EvalError);
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937 rng(2024);
    for (int iter = 0; iter < 40; ++iter) {
        Poly a = random_poly(rng, 3, 3, 4), b = random_poly(rng, 3, 3, 4),
             c = random_poly(rng, 3, 3, 4);
        CHECK(((a + b) + c) == (a + (b + c)));
        CHECK((a * (b + c)) == (a * b + a * c));
        CHECK((a * b) == (b * a));
    }
}

TEST_CASE("mixed partials commute") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 25; ++iter) {
        Poly p = random_poly(rng, 4, 5, 6);
        for (unsigned i = 0; i < 4; ++i)
            for (unsigned j = i + 1; j < 4; ++j)
                CHECK(p.derivative(i).derivative(j) == p.derivative(j).derivative(i));
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937 rng(99);
    for (int iter = 0; iter < 25; ++iter) {
        Poly a = random_poly(rng, 3, 3, 4), b = random_poly(rng, 3, 3, 4);
        auto pt = random_point(rng, 3);
        CHECK((a * b).eval(pt) == a.eval(pt) * b.eval(pt));
        CHECK((a + b).eval(pt) == a.eval(pt) + b.eval(pt));
    }
}

TEST_CASE("text grammar round trip") {
    Poly p = parse_poly("2/3*x1^2*x8 - x0 + 5", 9);
    CHECK(parse_poly(p.str(), 9) == p);
    CHECK(parse_poly("  -x1 +  2 * x2^2", 3) == parse_poly("2*x2^2 - x1", 3));
    CHECK(parse_poly("0", 3).is_zero());
    CHECK(Poly(3).str() == "0");
    CHECK_THROWS_AS(parse_poly("x9", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("x1 + + x2", 3), std::invalid_argument);
    std::mt19937 rng(5);
    for (int iter = 0; iter < 20; ++iter) {
        Poly q = random_poly(rng, 5, 4, 7);
        CHECK(parse_poly(q.str(), 5) == q);
    }
}

TEST_CASE("rational function arithmetic") {
    unsigned nv = 4;
    RatFunc one = RatFunc::constant(nv, 1);
    RatFunc a(P("1"), P("1 + x1^2"));
    CHECK(a * RatFunc(P("1 + x1^2")) == one);
    RatFunc p(P("x1 + x2")), q(P("x0 - 1"));
    CHECK((p + q) == RatFunc(P("x1 + x2 + x0 - 1")));
    RatFunc r(P("x1"), P("x2"));
    CHECK((r - r).is_zero());
    CHECK_THROWS_AS(p / RatFunc(nv), std::domain_error);
}

TEST_CASE("rational function reduction and semantic equality") {
    unsigned nv = 3;
    RatFunc u(P("x1^2 - x2^2", nv), P("x1 - x2", nv));
    RatFunc v(P("x1 + x2", nv));
    CHECK(u == v);
    RatFunc w = u.reduced();
    CHECK(w.den().is_one());
    CHECK(w.num() == P("x1 + x2", nv));
    // derivative with quotient rule stays exact
    RatFunc f(P("x1", nv), P("1 + x1", nv));
    RatFunc df = f.derivative(1);
    CHECK(df == RatFunc(P("1", nv), P("x1^2 + 2*x1 + 1", nv)));
}

TEST_CASE("ratfunc text form") {
    RatFunc r = parse_ratfunc("4 / x1^2 + 1", 3);
    CHECK(r == RatFunc(P("4", 3), P("x1^2 + 1", 3)));
    CHECK(parse_ratfunc(r.str(), 3) == r);
    CHECK(parse_ratfunc("1/2", 3) == RatFunc::constant(3, rat(1, 2)));
    CHECK(parse_ratfunc("2/3*x1 / x2", 3) == RatFunc(P("2/3*x1", 3), P("x2", 3)));
}

TEST_CASE("multivariate gcd and exact division") {
    unsigned nv = 4;
    Poly a = P("x1 + 1", nv) * P("x2 + 2", nv);
    Poly b = P("x1 + 1", nv) * P("x3", nv);
    CHECK(poly_gcd(a, b) == P("x1 + 1", nv));
    CHECK(*divide_exact(a, P("x2 + 2", nv)) == P("x1 + 1", nv));
    CHECK(!divide_exact(a, P("x3", nv)).has_value());
    std::mt19937 rng(31);
    for (int iter = 0; iter < 15; ++iter) {
        Poly g = random_poly(rng, 3, 2, 3);
        Poly u = random_poly(rng, 3, 2, 3), v = random_poly(rng, 3, 2, 3);
        if (g.is_zero() || u.is_zero() || v.is_zero()) continue;
        Poly d = poly_gcd(g * u, g * v);
        CHECK(divide_exact(d, poly_gcd(d, g.primitive_part())).has_value());
        CHECK(divide_exact(g * u, d).has_value());
        CHECK(divide_exact(g * v, d).has_value());
    }
}

TEST_CASE("exact rational linear algebra") {
    MatQ m(3, 4);
    // rows: x + y + z + w = 0 ; x - y = 0 ; and their sum (redundant)
    Rational one(1);
    m.at(0, 0) = one; m.at(0, 1) = one; m.at(0, 2) = one; m.at(0, 3) = one;
    m.at(1, 0) = one; m.at(1, 1) = -one;
    m.at(2, 0) = rat(2); m.at(2, 2) = one; m.at(2, 3) = one;
    CHECK(rank(m) == 2);
    auto ns = nullspace_q(m);
    REQUIRE(ns.size() == 2);
    for (const auto& v : ns)
        for (unsigned r = 0; r < m.rows; ++r) {
            Rational s(0);
            for (unsigned c = 0; c < m.cols; ++c) s += m.at(r, c) * v[c];
            CHECK(sgn(s) == 0);
        }
    MatQ a(2, 2);
    a.at(0, 0) = rat(2); a.at(0, 1) = rat(1);
    a.at(1, 0) = rat(5); a.at(1, 1) = rat(3);
    MatQ ai = inverse_q(a);
    CHECK((a * ai) == matq_identity(2));

    SpanBuilder span(3);
    CHECK(span.add({one, one, Rational(0)}));
    CHECK(!span.add({rat(2), rat(2), Rational(0)}));
    CHECK(span.add({Rational(0), one, one}));
    CHECK(span.dim() == 2);
    CHECK(span.contains({one, Rational(0), -one}));
    CHECK(!span.contains({one, Rational(0), Rational(0)}));
}

TEST_CASE("bareiss determinant on polynomial matrices") {
    Mat<Poly> h(2, 2, Poly(3));
    h.at(0, 0) = P("x1", 3);
    h.at(0, 1) = P("x2", 3);
    h.at(1, 0) = P("x2", 3);
    h.at(1, 1) = P("x1", 3);
    CHECK(poly_det_bareiss(h) == P("x1^2 - x2^2", 3));
    std::mt19937 rng(11);
    for (int iter = 0; iter < 6; ++iter) {
        Mat<Poly> m(3, 3, Poly(2));
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned j = 0; j < 3; ++j) m.at(i, j) = random_poly(rng, 2, 2, 2);
        // oracle: rule of Sarrus
        Poly det = m.at(0, 0) * m.at(1, 1) * m.at(2, 2) + m.at(0, 1) * m.at(1, 2) * m.at(2, 0) +
                   m.at(0, 2) * m.at(1, 0) * m.at(2, 1) - m.at(0, 2) * m.at(1, 1) * m.at(2, 0) -
                   m.at(0, 1) * m.at(1, 0) * m.at(2, 2) - m.at(0, 0) * m.at(1, 2) * m.at(2, 1);
        CHECK(poly_det_bareiss(m) == det);
    }
}
