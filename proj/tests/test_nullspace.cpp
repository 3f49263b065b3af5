#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "leib3/matrix.hpp"

using namespace leib3;

namespace {

const Var lambda = Var::param("lambda");

bool kills(const PolyMatrix& m, const std::vector<Poly>& v, const RewriteSystem* rw = nullptr) {
    std::vector<Poly> r = m.apply(v);
    for (Poly& p : r) {
        if (rw) p = rw->normal_form(p);
        if (!p.is_zero()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("identity matrix has empty nullspace") {
    CHECK(nullspace(PolyMatrix::identity(3)).basis.empty());
}

TEST_CASE("single relation") {
    PolyMatrix m(1, 2);
    m(0, 0) = Poly(1);
    m(0, 1) = Poly(1);
    auto ns = nullspace(m);
    REQUIRE(ns.basis.size() == 1);
    CHECK(ns.basis[0] == std::vector<Poly>{Poly(1), Poly(-1)});
}

TEST_CASE("parameter cross-multiplication") {
    PolyMatrix m(1, 2);
    m(0, 0) = Poly::var(lambda) - Poly(1);
    m(0, 1) = Poly(-1);
    auto ns = nullspace(m);
    REQUIRE(ns.basis.size() == 1);
    CHECK(ns.basis[0] == std::vector<Poly>{Poly(1), Poly::var(lambda) - Poly(1)});
    // The pivot lambda - 1 is not declared nonzero, so it is reported.
    REQUIRE(ns.assumed_nonzero.size() == 1);
    CHECK(ns.assumed_nonzero[0] == Poly::var(lambda) - Poly(1));
}

TEST_CASE("declared nonvanishing pivots are not reported") {
    PolyMatrix m(2, 3);
    m(0, 0) = Poly::var(lambda);
    m(0, 2) = Poly::var(lambda) * Poly::var(lambda);
    m(1, 1) = Poly(1);
    LinSolveOptions opt;
    opt.nonvanishing = {Poly::var(lambda)};
    auto ns = nullspace(m, opt);
    REQUIRE(ns.basis.size() == 1);
    CHECK(ns.assumed_nonzero.empty());
    CHECK(kills(m, ns.basis[0]));
    // Content lambda is stripped and the sign normalized.
    CHECK(ns.basis[0] == std::vector<Poly>{Poly::var(lambda), Poly(), Poly(-1)});
}

TEST_CASE("nullspace vectors satisfy M v = 0 exactly") {
    std::mt19937 rng(20240918);
    std::uniform_int_distribution<int> entry(-4, 4), dim(1, 5), deg(0, 1);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = dim(rng), c = dim(rng);
        PolyMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                Poly p(entry(rng));
                if (deg(rng)) p += Poly(entry(rng)) * Poly::var(lambda);
                m(i, j) = p;
            }
        auto ns = nullspace(m);
        for (const auto& v : ns.basis) {
            CHECK(kills(m, v));
            bool nonzero = std::any_of(v.begin(), v.end(), [](const Poly& p) { return !p.is_zero(); });
            CHECK(nonzero);
        }
        // Rank-nullity over the fraction field.
        CHECK(rank_of(m) + ns.basis.size() == c);
    }
}

TEST_CASE("nullspace dimension is invariant under row permutation") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        PolyMatrix m(4, 5);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 5; ++j) m(i, j) = Poly(entry(rng));
        std::vector<std::size_t> perm{0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        PolyMatrix p(4, 5);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 5; ++j) p(i, j) = m(perm[i], j);
        CHECK(nullspace(m).basis.size() == nullspace(p).basis.size());
    }
}

TEST_CASE("elimination with the Laurent rewrite") {
    // Rows proportional modulo lambda*mu = 1 must collapse to rank 1.
    const Poly lam = Poly::var(lambda);
    const Poly mu = Poly::var(Var::param("mu"));
    const RewriteSystem rw = lambda_mu_relation();
    PolyMatrix m(2, 2);
    m(0, 0) = lam;
    m(0, 1) = Poly(1);
    m(1, 0) = Poly(1);
    m(1, 1) = mu;
    LinSolveOptions opt;
    opt.nonvanishing = {lam, mu};
    opt.rewrite = &rw;
    CHECK(rank_of(m, opt) == 1);
    auto ns = nullspace(m, opt);
    REQUIRE(ns.basis.size() == 1);
    CHECK(kills(m, ns.basis[0], &rw));
}

TEST_CASE("span utilities") {
    std::vector<std::vector<Poly>> rows{{Poly(1), Poly(2), Poly(0)},
                                        {Poly(2), Poly(4), Poly(0)},
                                        {Poly(0), Poly(0), Poly(1)}};
    auto sb = span_rows(rows);
    CHECK(sb.dim == 2);
    CHECK(in_row_span(rows, {Poly(3), Poly(6), Poly(5)}));
    CHECK_FALSE(in_row_span(rows, {Poly(0), Poly(1), Poly(0)}));
}

TEST_CASE("poly span over coordinate support") {
    const Poly x1 = Poly::var(Var::coord(1, 1)), z1 = Poly::var(Var::coord(1, 3));
    auto ps = poly_span({x1 + z1, Poly(2) * x1 + Poly(2) * z1, x1 - z1});
    CHECK(ps.dim == 2);
    CHECK(poly_in_span({x1 + z1, x1 - z1}, z1));
    CHECK_FALSE(poly_in_span({x1 + z1}, x1));
}

TEST_CASE("rational matrix inverse") {
    PolyMatrix s(3, 3);
    const int vals[3][3] = {{2, 1, 0}, {0, 1, 3}, {1, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s(i, j) = Poly(vals[i][j]);
    PolyMatrix inv = inverse_rational(s);
    CHECK(s * inv == PolyMatrix::identity(3));
    PolyMatrix sing(2, 2);
    sing(0, 0) = Poly(1);
    sing(0, 1) = Poly(2);
    sing(1, 0) = Poly(2);
    sing(1, 1) = Poly(4);
    CHECK_THROWS_AS(inverse_rational(sing), std::invalid_argument);
}
