#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "simhol/liealg.hpp"

using namespace simhol;

TEST_CASE("builtin dimensions and closure") {
    struct Row {
        const char* name;
        unsigned n, dim;
    };
    const Row rows[] = {
        {"so:2", 2, 1},     {"so:3", 3, 3},   {"so:5", 5, 10}, {"u:2", 4, 4},
        {"su:2", 4, 3},     {"sp:1", 4, 3},   {"sp:2", 8, 10}, {"spsp1:1", 4, 6},
        {"g2", 7, 14},      {"spin7", 8, 21}, {"so3irr5", 5, 3}, {"trivial:5", 5, 0},
    };
    for (const auto& r : rows) {
        Subalgebra h = builtin(r.name);
        INFO(r.name);
        CHECK(h.n == r.n);
        CHECK(h.dim() == r.dim);
        CHECK_NOTHROW(h.validate());
    }
    CHECK_THROWS_AS(builtin("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(builtin("so:x"), std::invalid_argument);
}

TEST_CASE("bracket") {
    SkewMatrix a(3, 3), b(3, 3);
    a.at(0, 1) = Rational(1);
    a.at(1, 0) = Rational(-1);
    b.at(1, 2) = Rational(1);
    b.at(2, 1) = Rational(-1);
    SkewMatrix expect(3, 3);
    expect.at(0, 2) = Rational(1);
    expect.at(2, 0) = Rational(-1);
    CHECK(bracket(a, b) == expect);
    CHECK(bracket(a, a) == SkewMatrix(3, 3));
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> coef(-3, 3);
    for (int iter = 0; iter < 10; ++iter) {
        SkewMatrix u(4, 4), v(4, 4);
        for (unsigned i = 0; i < 4; ++i)
            for (unsigned j = i + 1; j < 4; ++j) {
                u.at(i, j) = Rational(coef(rng)); u.at(j, i) = -u.at(i, j);
                v.at(i, j) = Rational(coef(rng)); v.at(j, i) = -v.at(i, j);
            }
        CHECK(bracket(u, v) == (SkewMatrix(4, 4) - bracket(v, u)));
        CHECK(is_skew(bracket(u, v)));
    }
}

TEST_CASE("decompose trivial and irreducible") {
    Decomposition d = decompose(builtin("trivial:4"));
    CHECK(d.block_sizes.empty());
    CHECK(d.trailing == 4);

    Decomposition g = decompose(builtin("g2"));
    REQUIRE(g.block_sizes.size() == 1);
    CHECK(g.block_sizes[0] == 7);
    CHECK(g.trailing == 0);
    CHECK(g.ideals[0].dim() == 14);

    Decomposition r = decompose(builtin("so3irr5"));
    REQUIRE(r.block_sizes.size() == 1);
    CHECK(r.block_sizes[0] == 5);
}

TEST_CASE("decompose block embedding so(3)+so(2) in so(5)") {
    Subalgebra h = direct_sum({builtin("so:3"), builtin("so:2")});
    CHECK(h.n == 5);
    CHECK_NOTHROW(h.validate());
    Decomposition d = decompose(h);
    REQUIRE(d.block_sizes.size() == 2);
    CHECK(d.block_sizes[0] == 3);
    CHECK(d.block_sizes[1] == 2);
    CHECK(d.trailing == 0);
    CHECK(d.ideals[0].dim() == 3);
    CHECK(d.ideals[1].dim() == 1);
}

TEST_CASE("decompose recovers direct sums under coordinate permutation") {
    Subalgebra h = direct_sum({builtin("su:2"), builtin("so:3")}, 1);
    // shuffle coordinates by conjugating with a permutation
    unsigned n = h.n;
    std::vector<unsigned> sigma = {3, 0, 6, 1, 7, 4, 2, 5};
    REQUIRE(sigma.size() == n);
    Subalgebra shuffled{n, {}};
    for (const auto& b : h.basis) {
        SkewMatrix m(n, n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) m.at(sigma[i], sigma[j]) = b.at(i, j);
        shuffled.basis.push_back(std::move(m));
    }
    CHECK_NOTHROW(shuffled.validate());
    Decomposition d = decompose(shuffled);
    std::vector<unsigned> sizes = d.block_sizes;
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<unsigned>{3, 4});
    CHECK(d.trailing == 1);
    std::vector<unsigned> dims;
    for (const auto& ideal : d.ideals) dims.push_back(ideal.dim());
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<unsigned>{3, 3});
}

TEST_CASE("direct sum edge cases") {
    Subalgebra s = direct_sum({builtin("so:2")}, 1);
    CHECK(s.n == 3);
    CHECK(s.dim() == 1);
    // annihilates e3
    for (const auto& b : s.basis)
        for (unsigned i = 0; i < 3; ++i) CHECK(sgn(b.at(i, 2)) == 0);

    Subalgebra big = direct_sum({builtin("g2"), builtin("su:2")});
    CHECK(big.n == 11);
    CHECK(big.dim() == 17);
    CHECK_NOTHROW(big.validate());

    Subalgebra none = direct_sum({}, 4);
    CHECK(none.n == 4);
    CHECK(none.dim() == 0);
}

TEST_CASE("sim element to bivector") {
    unsigned n = 3;
    SimElement e1{Rational(1), SkewMatrix(n, n), VecQ(n, Rational(0))};
    BivectorCoords b1 = sim_to_bivector(e1);
    CHECK(b1.pq == Rational(-1));
    for (const auto& c : b1.ee) CHECK(sgn(c) == 0);
    for (const auto& c : b1.pe) CHECK(sgn(c) == 0);
    for (const auto& c : b1.qe) CHECK(sgn(c) == 0);

    SkewMatrix A = wedge(n, 0, 1);
    SimElement e2{Rational(0), A, VecQ(n, Rational(0))};
    BivectorCoords b2 = sim_to_bivector(e2);
    CHECK(sgn(b2.pq) == 0);
    CHECK(b2.ee == skew_coords(A));

    VecQ X{Rational(2), Rational(0), Rational(-1)};
    SimElement e3{Rational(0), SkewMatrix(n, n), X};
    BivectorCoords b3 = sim_to_bivector(e3);
    CHECK(b3.pe[0] == Rational(-2));
    CHECK(b3.pe[2] == Rational(1));
    for (const auto& c : b3.qe) CHECK(sgn(c) == 0);

    // matrix() realizes the same element: endo_to_bivector inverts it
    SimElement mixed{rat(-3, 2), A, X};
    BivectorCoords via = endo_to_bivector(mixed.matrix());
    CHECK(via.flat() == sim_to_bivector(mixed).flat());
}

TEST_CASE("soalg file round trip") {
    Subalgebra h = builtin("su:2");
    std::ostringstream out;
    write_soalg(out, h);
    std::istringstream in(out.str());
    Subalgebra back = read_soalg(in);
    CHECK(back.n == h.n);
    REQUIRE(back.dim() == h.dim());
    for (unsigned t = 0; t < h.dim(); ++t) CHECK(back.basis[t] == h.basis[t]);
    std::istringstream bad("soalgv1\nn = 2\nbasis = 1\nM[0] = [[0,1],[1,0]]\n");
    CHECK_THROWS(read_soalg(bad));
}

TEST_CASE("derived algebra and center") {
    Subalgebra u2 = builtin("u:2");
    Subalgebra der = derived_algebra(u2);
    CHECK(der.dim() == 3);  // [u(2),u(2)] = su(2)
    CHECK(center_coords(u2).size() == 1);
    CHECK(center_coords(builtin("so:3")).empty());
    CHECK(center_coords(builtin("g2")).empty());
}

TEST_CASE("holonomy descriptor validation") {
    Subalgebra u2 = builtin("u:2");
    // build phi as a functional vanishing on the derived part
    Subalgebra der = derived_algebra(u2);
    unsigned d = u2.dim();
    MatQ sys(der.dim(), d);
    for (unsigned r = 0; r < der.dim(); ++r) {
        auto c = u2.coords_of(der.basis[r]);
        REQUIRE(c.has_value());
        for (unsigned t = 0; t < d; ++t) sys.at(r, t) = (*c)[t];
    }
    auto funcs = nullspace_q(sys);
    REQUIRE(!funcs.empty());
    HolonomyDescriptor d3{3, u2, funcs[0], 0, {}};
    CHECK_NOTHROW(d3.validate());

    HolonomyDescriptor bad3{3, builtin("so:3"), VecQ{Rational(1), Rational(0), Rational(0)}, 0, {}};
    CHECK_THROWS(bad3.validate());

    HolonomyDescriptor d1{1, builtin("g2"), {}, 0, {}};
    CHECK_NOTHROW(d1.validate());
}
