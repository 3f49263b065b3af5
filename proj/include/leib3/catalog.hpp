#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "leib3/algebra.hpp"
#include "leib3/autgroup.hpp"
#include "leib3/invariants.hpp"
#include "leib3/rewrite.hpp"

namespace leib3 {

// Bundled data for one family of the classification: multiplication table,
// automorphism branches, diagonal automorphisms, claimed invariant
// generators, expected trace row, and expected dimensions.
struct FamilyRecord {
    std::string name;     // catalog key: L1..L11 plus L4_0, L7_0
    std::string display;  // e.g. "L2^{lambda!=0}"
    StructureTable table{1, {Poly()}};
    AutFamily aut;
    std::optional<DiagonalFamily> diag;  // absent for L9
    int expected_aut_dim = 0;
    std::optional<int> expected_ncl;  // empty <=> not nilpotent
    std::optional<int> expected_ann_r;
    // Coefficients of z_r (linear rows) and z_r z_s (quadratic rows) in the
    // expected trace table; keys: L, R, LL, RL, LR, RR and, where the paper
    // lists them, PairL, PairR.
    std::map<std::string, Poly> expected_traces;
    bool has_lambda = false;
    std::vector<Rational> excluded_lambda;
    std::function<std::vector<Poly>(int)> generators;  // claimed generators for m copies

    bool nilpotent() const { return expected_ncl.has_value(); }
};

namespace catalog_detail {

inline Poly P(const char* name) { return Poly::var(Var::param(name)); }
inline Var alpha(int k) { return Var::param("alpha" + std::to_string(k)); }
inline Poly A(int k) { return Poly::var(alpha(k)); }
inline Poly x(int r) { return Poly::var(Var::coord(r, 1)); }
inline Poly y(int r) { return Poly::var(Var::coord(r, 2)); }
inline Poly z(int r) { return Poly::var(Var::coord(r, 3)); }

inline StructureTable table3(const std::vector<std::vector<std::vector<Poly>>>& rows,
                             std::vector<Poly> constraints = {}) {
    StructureTable t = StructureTable::zero(3);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int l = 1; l <= 3; ++l) t.set(i, j, l, rows[i - 1][j - 1][l - 1]);
    for (Poly& c : constraints) t.add_constraint(std::move(c));
    return t;
}

inline PolyMatrix mat3(const std::vector<std::vector<Poly>>& rows) {
    PolyMatrix m(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = rows[i][j];
    return m;
}

inline Branch branch(std::string name, PolyMatrix m, std::vector<Var> params,
                     std::vector<Poly> nonvanishing, RewriteSystem rw = {}) {
    Branch b;
    b.name = std::move(name);
    b.matrix = std::move(m);
    b.params = std::move(params);
    b.nonvanishing = std::move(nonvanishing);
    b.rewrite = std::move(rw);
    return b;
}

inline std::vector<Poly> gens_const(int) { return {Poly(1)}; }

inline std::vector<Poly> gens_z(int m) {
    std::vector<Poly> g{Poly(1)};
    for (int r = 1; r <= m; ++r) g.push_back(z(r));
    return g;
}

inline std::vector<Poly> gens_L3(int m) {
    std::vector<Poly> g = gens_z(m);
    for (int r = 1; r <= m; ++r)
        for (int s = r + 1; s <= m; ++s) g.push_back(x(r) * z(s) - z(r) * x(s));
    return g;
}

inline std::vector<Poly> gens_L6(int m) {
    std::vector<Poly> g{Poly(1)};
    for (int r = 1; r <= m; ++r)
        for (int s = r; s <= m; ++s) g.push_back(z(r) * z(s));
    return g;
}

inline std::vector<Poly> gens_L9(int m) {
    std::vector<Poly> g = gens_z(m);
    for (int r = 1; r <= m; ++r)
        for (int s = r + 1; s <= m; ++s)
            g.push_back((x(r) - y(r)) * z(s) - z(r) * (x(s) - y(s)));
    return g;
}

inline std::map<std::string, Poly> traces(Poly l, Poly r, Poly ll, Poly rl, Poly lr, Poly rr,
                                          std::optional<Poly> pair_l = std::nullopt,
                                          std::optional<Poly> pair_r = std::nullopt) {
    std::map<std::string, Poly> t{{"L", std::move(l)},   {"R", std::move(r)},
                                  {"LL", std::move(ll)}, {"RL", std::move(rl)},
                                  {"LR", std::move(lr)}, {"RR", std::move(rr)}};
    if (pair_l) t.emplace("PairL", std::move(*pair_l));
    if (pair_r) t.emplace("PairR", std::move(*pair_r));
    return t;
}

inline std::vector<FamilyRecord> build() {
    const Poly O, I(1);
    const Poly lam = P("lambda");
    const Poly mu = P("mu");
    const Var alphav = Var::param("alpha");
    const Var betav = Var::param("beta");
    std::vector<FamilyRecord> out;

    {  // L1: e1e3 = -2e1, e2e2 = e1, e2e3 = -e2, e3e2 = e2
        FamilyRecord f;
        f.name = "L1";
        f.display = "L1";
        f.table = table3({{{O, O, O}, {O, O, O}, {Poly(-2), O, O}},
                          {{O, O, O}, {I, O, O}, {O, Poly(-1), O}},
                          {{O, O, O}, {O, I, O}, {O, O, O}}});
        f.aut.branches = {branch("g",
                                 mat3({{A(5) * A(5), A(5) * A(6), rat(1, 2) * (A(6) * A(6))},
                                       {O, A(5), A(6)},
                                       {O, O, I}}),
                                 {alpha(5), alpha(6)}, {A(5)})};
        f.diag = DiagonalFamily::weights(3, {{alphav, {2, 1, 0}}});
        f.expected_aut_dim = 2;
        f.expected_traces = traces(I, Poly(-3), I, Poly(-1), Poly(-1), Poly(5));
        f.generators = gens_z;
        out.push_back(std::move(f));
    }

    {  // L2^{lambda!=0}: e1e3 = lambda e1, e2e3 = -e2, e3e2 = e2
        FamilyRecord f;
        f.name = "L2";
        f.display = "L2^{λ≠0}";
        f.table = table3({{{O, O, O}, {O, O, O}, {lam, O, O}},
                          {{O, O, O}, {O, O, O}, {O, Poly(-1), O}},
                          {{O, O, O}, {O, I, O}, {O, O, O}}},
                         {lam});
        f.aut.branches = {branch("g", mat3({{A(1), O, O}, {O, A(5), A(6)}, {O, O, I}}),
                                 {alpha(1), alpha(5), alpha(6)}, {A(1), A(5)})};
        f.diag = DiagonalFamily::weights(3, {{alphav, {1, 0, 0}}, {betav, {0, 1, 0}}});
        f.expected_aut_dim = 3;
        f.expected_traces = traces(I, lam - I, I, Poly(-1), Poly(-1), I + lam * lam);
        f.has_lambda = true;
        f.excluded_lambda = {Rational(0)};
        f.generators = gens_z;
        out.push_back(std::move(f));
    }

    {  // L3: e2e3 = -e2, e3e2 = e2, e3e3 = e1
        FamilyRecord f;
        f.name = "L3";
        f.display = "L3";
        f.table = table3({{{O, O, O}, {O, O, O}, {O, O, O}},
                          {{O, O, O}, {O, O, O}, {O, Poly(-1), O}},
                          {{O, O, O}, {O, I, O}, {I, O, O}}});
        f.aut.branches = {branch("g", mat3({{I, O, A(3)}, {O, A(5), A(6)}, {O, O, I}}),
                                 {alpha(3), alpha(5), alpha(6)}, {A(5)})};
        f.diag = DiagonalFamily::weights(3, {{alphav, {0, 1, 0}}});
        f.expected_aut_dim = 3;
        f.expected_traces = traces(I, Poly(-1), I, Poly(-1), Poly(-1), I, O, O);
        f.generators = gens_L3;
        out.push_back(std::move(f));
    }

    {  // L4^{lambda!=0}: e2e2 = e1, e2e3 = e1, e3e3 = lambda e1
        FamilyRecord f;
        f.name = "L4";
        f.display = "L4^{λ≠0}";
        f.table = table3({{{O, O, O}, {O, O, O}, {O, O, O}},
                          {{O, O, O}, {I, O, O}, {I, O, O}},
                          {{O, O, O}, {O, O, O}, {lam, O, O}}},
                         {lam});
        // 1/lambda entries encoded with mu and the Laurent relation.
        PolyMatrix g1 = mat3({{(A(6) * A(6) + A(6) * A(9) + lam * (A(9) * A(9))) * mu, A(2), A(3)},
                              {O, A(6) * mu + A(9), A(6)},
                              {O, -(A(6) * mu), A(9)}});
        RewriteSystem rw = lambda_mu_relation();
        Poly det_g1 = determinant(g1, &rw).primitive_scaled();
        f.aut.branches = {
            branch("g1", g1, {alpha(2), alpha(3), alpha(6), alpha(9)}, {A(6), det_g1},
                   lambda_mu_relation()),
            branch("g2", mat3({{A(5) * A(5), A(2), A(3)}, {O, A(5), O}, {O, O, A(5)}}),
                   {alpha(2), alpha(3), alpha(5)}, {A(5)})};
        f.diag = DiagonalFamily::weights(3, {{alphav, {2, 1, 1}}});
        f.expected_aut_dim = 4;
        f.expected_ncl = 3;
        f.expected_traces = traces(O, O, O, O, O, O);
        f.has_lambda = true;
        f.generators = gens_const;
        out.push_back(std::move(f));
    }

    {  // L4^0: e2e2 = e1, e2e3 = e1
        FamilyRecord f;
        f.name = "L4_0";
        f.display = "L4^0";
        f.table = table3({{{O, O, O}, {O, O, O}, {O, O, O}},
                          {{O, O, O}, {I, O, O}, {I, O, O}},
                          {{O, O, O}, {O, O, O}, {O, O, O}}});
        f.aut.branches = {branch(
            "g", mat3({{A(5) * (A(5) + A(8)), A(2), A(3)}, {O, A(5), O}, {O, A(8), A(5) + A(8)}}),
            {alpha(2), alpha(3), alpha(5), alpha(8)}, {A(5) + A(8), A(5)})};
        f.diag = DiagonalFamily::weights(3, {{alphav, {2, 1, 1}}});
        f.expected_aut_dim = 4;
        f.expected_ncl = 3;
        f.expected_traces = traces(O, O, O, O, O, O);
        f.generators = gens_const;
        out.push_back(std::move(f));
    }

    {  // L5: e2e2 = e1, e3e3 = e1
        FamilyRecord f;
        f.name = "L5";
        f.display = "L5";
        f.table = table3({{{O, O, O}, {O, O, O}, {O, O, O}},
                          {{O, O, O}, {I, O, O}, {O, O, O}},
                          {{O, O, O}, {O, O, O}, {I, O, O}}});
        const Poly s2 = A(5) * A(5) + A(6) * A(6);
        f.aut.branches = {
            branch("g1", mat3({{s2, A(2), A(3)}, {O, A(5), A(6)}, {O, -A(6), A(5)}}),
                   {alpha(2), alpha(3), alpha(5), alpha(6)}, {A(5), s2}),
            branch("g2", mat3({{s2, A(2), A(3)}, {O, A(5), A(6)}, {O, A(6), -A(5)}}),
                   {alpha(2), alpha(3), alpha(5), alpha(6)}, {A(5), s2}),
            branch("g3+", mat3({{A(6) * A(6), A(2), A(3)}, {O, O, A(6)}, {O, A(6), O}}),
                   {alpha(2), alpha(3), alpha(6)}, {A(6)}),
            branch("g3-", mat3({{A(6) * A(6), A(2), A(3)}, {O, O, A(6)}, {O, -A(6), O}}),
                   {alpha(2), alpha(3), alpha(6)}, {A(6)})};
        f.diag = DiagonalFamily::weights(3, {{alphav, {2, 1, 1}}}, {{1, 1, 1}, {1, 1, -1}});
        f.expected_aut_dim = 4;
        f.expected_ncl = 3;
        f.expected_ann_r = 1;
        f.expected_traces = traces(O, O, O, O, O, O);
        f.generators = gens_const;
        out.push_back(std::move(f));
    }

    {  // L6: e1e3 = e2, e2e3 = e1
        FamilyRecord f;
        f.name = "L6";
        f.display = "L6";
        f.table = table3({{{O, O, O}, {O, O, O}, {O, I, O}},
                          {{O, O, O}, {O, O, O}, {I, O, O}},
                          {{O, O, O}, {O, O, O}, {O, O, O}}});
        const Poly cond = A(1) * A(1) - A(4) * A(4);
        f.aut.branches = {
            branch("g1", mat3({{A(1), A(4), O}, {A(4), A(1), O}, {O, O, I}}),
                   {alpha(1), alpha(4)}, {cond}),
            branch("g2", mat3({{A(1), -A(4), O}, {A(4), -A(1), O}, {O, O, Poly(-1)}}),
                   {alpha(1), alpha(4)}, {cond})};
        f.diag = DiagonalFamily::weights(3, {{alphav, {1, 1, 0}}});
        f.expected_aut_dim = 2;
        f.expected_traces = traces(O, O, O, O, O, Poly(2));
        f.generators = gens_L6;
        out.push_back(std::move(f));
    }

    {  // L7^{lambda!=0}: e1e3 = e2, e2e3 = lambda e1 + e2
        FamilyRecord f;
        f.name = "L7";
        f.display = "L7^{λ≠0}";
        f.table = table3({{{O, O, O}, {O, O, O}, {O, I, O}},
                          {{O, O, O}, {O, O, O}, {lam, I, O}},
                          {{O, O, O}, {O, O, O}, {O, O, O}}},
                         {lam});
        f.aut.branches = {branch(
            "g", mat3({{A(1), lam * A(4), O}, {A(4), A(1) + A(4), O}, {O, O, I}}),
            {alpha(1), alpha(4)}, {A(1) * A(1) + A(1) * A(4) - lam * (A(4) * A(4))})};
        f.diag = DiagonalFamily::weights(3, {{alphav, {1, 1, 0}}});
        f.expected_aut_dim = 2;
        f.expected_traces = traces(O, I, O, O, O, I + Poly(2) * lam);
        f.has_lambda = true;
        f.generators = gens_z;
        out.push_back(std::move(f));
    }

    {  // L7^0: e1e3 = e2, e2e3 = e2
        FamilyRecord f;
        f.name = "L7_0";
        f.display = "L7^0";
        f.table = table3({{{O, O, O}, {O, O, O}, {O, I, O}},
                          {{O, O, O}, {O, O, O}, {O, I, O}},
                          {{O, O, O}, {O, O, O}, {O, O, O}}});
        f.aut.branches = {branch(
            "g", mat3({{A(1), O, A(3)}, {A(4), A(1) + A(4), -A(3)}, {O, O, I}}),
            {alpha(1), alpha(3), alpha(4)}, {A(1), A(1) + A(4)})};
        f.diag = DiagonalFamily::weights(3, {{alphav, {1, 1, 0}}});
        f.expected_aut_dim = 3;
        f.expected_traces = traces(O, I, O, O, O, I);
        f.generators = gens_z;
        out.push_back(std::move(f));
    }

    {  // L8: e1e3 = e2, e3e3 = e1
        FamilyRecord f;
        f.name = "L8";
        f.display = "L8";
        f.table = table3({{{O, O, O}, {O, O, O}, {O, I, O}},
                          {{O, O, O}, {O, O, O}, {O, O, O}},
                          {{O, O, O}, {O, O, O}, {I, O, O}}});
        f.aut.branches = {branch(
            "g",
            mat3({{A(9) * A(9), O, A(3)}, {A(3) * A(9), A(9) * A(9) * A(9), A(6)}, {O, O, A(9)}}),
            {alpha(3), alpha(6), alpha(9)}, {A(9)})};
        f.diag = DiagonalFamily::weights(3, {{alphav, {2, 3, 1}}});
        f.expected_aut_dim = 3;
        f.expected_ncl = 4;
        f.expected_traces = traces(O, O, O, O, O, O);
        f.generators = gens_const;
        out.push_back(std::move(f));
    }

    {  // L9: e1e3 = e1 + e2, e3e3 = e1
        FamilyRecord f;
        f.name = "L9";
        f.display = "L9";
        f.table = table3({{{O, O, O}, {O, O, O}, {I, I, O}},
                          {{O, O, O}, {O, O, O}, {O, O, O}},
                          {{O, O, O}, {O, O, O}, {I, O, O}}});
        f.aut.branches = {branch("g",
                                 mat3({{I + A(3), O, A(3)}, {A(3), I, A(6)}, {O, O, I}}),
                                 {alpha(3), alpha(6)}, {A(3) + I})};
        f.diag = std::nullopt;  // no diagonal family is listed for L9
        f.expected_aut_dim = 2;
        f.expected_traces = traces(O, I, O, O, O, I, O, O);
        f.generators = gens_L9;
        out.push_back(std::move(f));
    }

    {  // L10: e1e3 = e1, e2e3 = e2
        FamilyRecord f;
        f.name = "L10";
        f.display = "L10";
        f.table = table3({{{O, O, O}, {O, O, O}, {I, O, O}},
                          {{O, O, O}, {O, O, O}, {O, I, O}},
                          {{O, O, O}, {O, O, O}, {O, O, O}}});
        f.aut.branches = {branch("g", mat3({{A(1), A(2), O}, {A(4), A(5), O}, {O, O, I}}),
                                 {alpha(1), alpha(2), alpha(4), alpha(5)},
                                 {A(1) * A(5) - A(2) * A(4)})};
        f.diag = DiagonalFamily::weights(3, {{alphav, {1, 0, 0}}, {betav, {0, 1, 0}}});
        f.expected_aut_dim = 4;
        f.expected_traces = traces(O, Poly(2), O, O, O, Poly(2));
        f.generators = gens_z;
        out.push_back(std::move(f));
    }

    {  // L11: e3e3 = e1
        FamilyRecord f;
        f.name = "L11";
        f.display = "L11";
        f.table = table3({{{O, O, O}, {O, O, O}, {O, O, O}},
                          {{O, O, O}, {O, O, O}, {O, O, O}},
                          {{O, O, O}, {O, O, O}, {I, O, O}}});
        f.aut.branches = {branch("g",
                                 mat3({{A(9) * A(9), A(2), A(3)}, {O, A(5), A(6)}, {O, O, A(9)}}),
                                 {alpha(2), alpha(3), alpha(5), alpha(6), alpha(9)},
                                 {A(5), A(9)})};
        f.diag = DiagonalFamily::weights(3, {{alphav, {2, 0, 1}}, {betav, {0, 1, 0}}});
        f.expected_aut_dim = 5;
        f.expected_ncl = 3;
        f.expected_ann_r = 2;
        f.expected_traces = traces(O, O, O, O, O, O);
        f.generators = gens_const;
        out.push_back(std::move(f));
    }

    // Construction-time sanity: every branch (including the diagonal
    // families rendered as branches) is generically invertible.
    for (const FamilyRecord& f : out) {
        for (const Branch& b : f.aut.branches)
            if (!branch_generically_invertible(b, f.table.constraints()))
                throw std::logic_error("degenerate automorphism branch: " + f.name + "/" + b.name);
        if (f.diag)
            for (const Branch& b : f.diag->as_branches())
                if (!branch_generically_invertible(b))
                    throw std::logic_error("degenerate diagonal branch: " + f.name);
    }
    return out;
}

}  // namespace catalog_detail

inline const std::vector<FamilyRecord>& all_families() {
    static const std::vector<FamilyRecord> families = catalog_detail::build();
    return families;
}

inline const FamilyRecord& get_family(const std::string& name) {
    for (const FamilyRecord& f : all_families())
        if (f.name == name) return f;
    throw std::invalid_argument("unknown family: " + name);
}

// Specializes a lambda family at a rational value. Inadmissible values (L2 at
// lambda = 0) are rejected; L4/L7 at lambda = 0 route to the dedicated
// records, whose automorphism groups differ from the generic ones.
inline FamilyRecord get_family(const std::string& name, const std::optional<Rational>& lambda) {
    const FamilyRecord& base = get_family(name);
    if (!lambda) return base;
    if (!base.has_lambda)
        throw std::domain_error("family " + name + " has no lambda parameter");
    for (const Rational& bad : base.excluded_lambda)
        if (*lambda == bad)
            throw std::domain_error("lambda = " + to_string(bad) + " is inadmissible for " + name +
                                    " (the specialization is a Lie algebra)");
    if (*lambda == 0) {
        if (name == "L4") return get_family("L4_0");
        if (name == "L7") return get_family("L7_0");
    }

    std::map<Var, Poly> sigma{{Var::param("lambda"), Poly(*lambda)},
                              {Var::param("mu"), Poly(Rational(1) / *lambda)}};
    FamilyRecord f;
    f.name = base.name;
    f.display = base.name + "^{λ=" + to_string(*lambda) + "}";
    f.table = base.table.substituted(sigma);
    for (const Branch& b : base.aut.branches) {
        Branch s;
        s.name = b.name;
        s.matrix = PolyMatrix(b.matrix.rows(), b.matrix.cols());
        for (std::size_t i = 0; i < b.matrix.rows(); ++i)
            for (std::size_t j = 0; j < b.matrix.cols(); ++j)
                s.matrix(i, j) = b.matrix(i, j).substitute(sigma);
        s.params = b.params;
        for (const Poly& c : b.nonvanishing) {
            Poly q = c.substitute(sigma);
            if (!q.is_constant()) s.nonvanishing.push_back(std::move(q));
        }
        f.aut.branches.push_back(std::move(s));
    }
    f.diag = base.diag;
    f.expected_aut_dim = base.expected_aut_dim;
    f.expected_ncl = base.expected_ncl;
    f.expected_ann_r = base.expected_ann_r;
    for (const auto& [k, p] : base.expected_traces)
        f.expected_traces.emplace(k, p.substitute(sigma));
    f.has_lambda = false;
    f.generators = base.generators;
    return f;
}

// Fixed sample set for lambda suites, minus each family's exclusions.
inline std::vector<Rational> lambda_samples(const FamilyRecord& f, std::size_t count = 3) {
    static const std::vector<Rational> pool{Rational(1), Rational(2), Rational(3), Rational(-2),
                                            rat(5, 7)};
    std::vector<Rational> out;
    for (const Rational& v : pool) {
        bool ok = true;
        for (const Rational& bad : f.excluded_lambda) ok = ok && v != bad;
        if (ok) out.push_back(v);
        if (out.size() == count) break;
    }
    return out;
}

inline std::vector<std::string> family_names() {
    std::vector<std::string> names;
    for (const FamilyRecord& f : all_families()) names.push_back(f.name);
    return names;
}

}  // namespace leib3
