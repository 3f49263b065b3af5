#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <vector>

#include "leib3/poly.hpp"
#include "leib3/rewrite.hpp"

using namespace leib3;

namespace {

Poly X(int r, int i) { return Poly::var(Var::coord(r, i)); }

// Small random polynomials: degree <= 4, up to 5 variables, sparse.
struct PolyGen {
    std::mt19937 rng{20240917};
    std::vector<Var> vars{Var::param("lambda"), Var::coord(1, 1), Var::coord(1, 2),
                          Var::coord(1, 3), Var::coord(2, 1)};

    Rational coeff() {
        std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
        return rat(num(rng), den(rng));
    }

    Poly operator()() {
        std::uniform_int_distribution<int> nterms(0, 5), nvars(0, 3), pick(0, int(vars.size()) - 1),
            exp(1, 2);
        Poly p;
        const int terms = nterms(rng);
        for (int t = 0; t < terms; ++t) {
            Monomial m;
            const int k = nvars(rng);
            for (int j = 0; j < k; ++j) m = m.times(Monomial::var(vars[pick(rng)], exp(rng)));
            if (m.total_degree() > 4) continue;
            p += Poly::term(coeff(), m);
        }
        return p;
    }
};

}  // namespace

TEST_CASE("rational parsing and printing") {
    CHECK(to_string(parse_rational("3/6")) == "1/2");
    CHECK(to_string(parse_rational("-4/2")) == "-2");
    CHECK(to_string(parse_rational("7")) == "7");
    CHECK(parse_rational("0/5") == 0);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK(rational_gcd(rat(4, 3), rat(2, 9)) == rat(2, 9));
    CHECK(rational_gcd(rat(0), rat(-5, 2)) == rat(5, 2));
}

TEST_CASE("difference of squares") {
    Poly p = (X(1, 1) + X(1, 3)) * (X(1, 1) - X(1, 3));
    CHECK(p == X(1, 1) * X(1, 1) - X(1, 3) * X(1, 3));
}

TEST_CASE("zero absorbs and additive inverses cancel") {
    PolyGen gen;
    for (int k = 0; k < 20; ++k) {
        Poly p = gen();
        CHECK((Poly() * p).is_zero());
        Poly q = X(1, 1) * X(2, 3) - X(1, 3) * X(2, 1);
        CHECK((q + (-q)).is_zero());
    }
    Poly a = X(1, 1) * X(2, 3) - X(1, 3) * X(2, 1);
    Poly b = X(1, 3) * X(2, 1) - X(1, 1) * X(2, 3);
    CHECK((a + b).is_zero());
}

TEST_CASE("ring axioms on random polynomials") {
    PolyGen gen;
    for (int k = 0; k < 120; ++k) {
        Poly a = gen(), b = gen(), c = gen();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("substitution is a ring homomorphism") {
    PolyGen gen;
    std::map<Var, Poly> sigma{{Var::coord(1, 1), X(1, 1) + X(1, 3)},
                              {Var::coord(1, 2), Poly::var(Var::param("lambda")) * X(2, 1)},
                              {Var::coord(1, 3), Poly(3)}};
    for (int k = 0; k < 60; ++k) {
        Poly a = gen(), b = gen();
        CHECK((a * b).substitute(sigma) == a.substitute(sigma) * b.substitute(sigma));
        CHECK((a + b).substitute(sigma) == a.substitute(sigma) + b.substitute(sigma));
    }
}

TEST_CASE("invariance computation for the bilinear form of L3") {
    // x1 z2 - z1 x2 under x_r -> x_r + alpha3 z_r, z_r fixed.
    const Poly a3 = Poly::var(Var::param("alpha3"));
    std::map<Var, Poly> sigma;
    for (int r = 1; r <= 2; ++r) sigma.emplace(Var::coord(r, 1), X(r, 1) + a3 * X(r, 3));
    Poly f = X(1, 1) * X(2, 3) - X(1, 3) * X(2, 1);
    CHECK(f.substitute(sigma) == f);
}

TEST_CASE("identity substitution and matrix-row substitution") {
    Poly z1 = X(1, 3);
    CHECK(z1.substitute({{Var::coord(1, 3), z1}}) == z1);
    // Second row of the L7 automorphism family: y_1 -> alpha4 x_1 + (alpha1+alpha4) y_1.
    const Poly a1 = Poly::var(Var::param("alpha1"));
    const Poly a4 = Poly::var(Var::param("alpha4"));
    Poly img = Poly::var(Var::coord(1, 2)).substitute(
        {{Var::coord(1, 2), a4 * X(1, 1) + (a1 + a4) * X(1, 2)}});
    CHECK(img == a4 * X(1, 1) + (a1 + a4) * X(1, 2));
}

TEST_CASE("xi root relations normal forms") {
    const RewriteSystem rw = xi_root_relations();
    const Poly lam = Poly::var(Var::param("lambda"));
    const Poly xi1 = Poly::var(Var::param("xi1"));
    const Poly xi2 = Poly::var(Var::param("xi2"));
    CHECK(rw.normal_form(xi1 * xi2) == -lam);
    CHECK(rw.normal_form(xi1 + xi2) == Poly(-1));
    CHECK(rw.normal_form(xi1.pow(3)) == (lam + Poly(1)) * xi1 - lam);
    CHECK(rw.normal_form(xi1 * xi1 + xi1 - lam).is_zero());
}

TEST_CASE("lambda mu Laurent relation") {
    const RewriteSystem rw = lambda_mu_relation();
    const Poly lam = Poly::var(Var::param("lambda"));
    const Poly mu = Poly::var(Var::param("mu"));
    CHECK(rw.normal_form(lam * mu) == Poly(1));
    CHECK(rw.normal_form(lam * lam * mu) == lam);
    CHECK(rw.normal_form(lam * mu * mu - mu).is_zero());
}

TEST_CASE("normal form is idempotent") {
    const RewriteSystem rw = xi_root_relations();
    PolyGen gen;
    const Poly xi1 = Poly::var(Var::param("xi1"));
    const Poly xi2 = Poly::var(Var::param("xi2"));
    for (int k = 0; k < 60; ++k) {
        Poly p = gen() + gen() * xi1.pow(k % 4) + gen() * xi2.pow(k % 3);
        Poly n = rw.normal_form(p);
        CHECK(rw.normal_form(n) == n);
    }
}

TEST_CASE("grlex ordering and printing") {
    Poly p = Poly(2) * X(1, 1).pow(2) - X(1, 1) * X(1, 2) + Poly(5);
    CHECK(p.str() == "2*x_1_1^2 - x_1_1*x_1_2 + 5");
    CHECK(p.str(true, 3) == "2·x_1^2 - x_1·y_1 + 5");
    // Parameters come before coordinates in the variable order.
    Poly q = Poly::var(Var::param("lambda")) * X(1, 1);
    CHECK(q.str() == "lambda*x_1_1");
}

TEST_CASE("homogeneous multidegree") {
    Poly f = X(1, 1) * X(2, 3) - X(1, 3) * X(2, 1);
    auto d = homogeneous_multidegree(f, 2);
    REQUIRE(d.has_value());
    CHECK(*d == std::vector<int>{1, 1});
    CHECK_FALSE(homogeneous_multidegree(f + X(1, 1), 2).has_value());
}
