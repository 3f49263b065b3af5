#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "leib3/algebra.hpp"
#include "leib3/matrix.hpp"
#include "leib3/rewrite.hpp"

namespace leib3 {

// One polynomial parameterization of a piece of Aut(L): a matrix with entries
// in the branch parameters, valid on the locus where every nonvanishing
// polynomial is nonzero. Identities that hold as polynomials in the free
// parameters certify statements on this Zariski-dense set.
struct Branch {
    std::string name;
    PolyMatrix matrix;
    std::vector<Var> params;
    std::vector<Poly> nonvanishing;
    RewriteSystem rewrite;  // e.g. lambda*mu -> 1 for 1/lambda entries

    Poly nf(const Poly& p) const { return rewrite.empty() ? p : rewrite.normal_form(p); }

    LinSolveOptions solve_options(const StructureTable& t) const {
        LinSolveOptions opt;
        opt.nonvanishing = nonvanishing;
        for (const Poly& c : t.constraints()) opt.nonvanishing.push_back(c);
        if (!rewrite.empty()) opt.rewrite = &rewrite;
        return opt;
    }

    // Image of e_j (1-based) under the branch matrix; columns are images.
    Element image_of_basis(int j) const {
        Element e(matrix.rows());
        for (std::size_t i = 0; i < matrix.rows(); ++i) e.coords[i] = matrix(i, j - 1);
        return e;
    }

    Element apply(const Element& x) const {
        Element e(matrix.rows());
        e.coords = matrix.apply(x.coords);
        for (Poly& c : e.coords) c = nf(c);
        return e;
    }
};

struct AutFamily {
    std::vector<Branch> branches;
    // Free-parameter count of the top-dimensional branch: the dimension of
    // the automorphism variety.
    int dimension() const {
        int d = 0;
        for (const Branch& b : branches) d = std::max(d, int(b.params.size()));
        return d;
    }
};

struct AutVerification {
    bool ok = true;
    std::string branch;
    int i = 0, j = 0;  // 1-based witness indices
    Element residual;  // g(e_i e_j) - g(e_i) g(e_j)
    explicit operator bool() const { return ok; }
};

// Checks g(e_i e_j) = g(e_i) g(e_j) identically in the branch parameters for
// every branch, after quotient-ring normal forms.
inline AutVerification verify_aut_family(const StructureTable& t, const AutFamily& f) {
    const int n = t.dim();
    for (const Branch& b : f.branches) {
        if (b.matrix.rows() != std::size_t(n) || b.matrix.cols() != std::size_t(n))
            throw std::invalid_argument("branch matrix dimension mismatch");
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                Element lhs = b.apply(t.product(i, j));
                Element rhs = mul(t, b.image_of_basis(i), b.image_of_basis(j));
                Element r = lhs - rhs;
                for (Poly& c : r.coords) c = b.nf(c);
                if (!r.is_zero()) return {false, b.name, i, j, std::move(r)};
            }
    }
    return {};
}

// Induced substitution on the coordinate ring of m copies:
// x_{r,i} -> sum_j g_{ij} x_{r,j} (the rows of the branch matrix, as in the
// action of g^{-1} on coordinates). A polynomial is invariant under the group
// piece exactly when it is fixed by this substitution identically in the
// branch parameters.
inline std::map<Var, Poly> action_substitution(const Branch& g, int copies) {
    const std::size_t n = g.matrix.rows();
    std::map<Var, Poly> sigma;
    for (int r = 1; r <= copies; ++r)
        for (std::size_t i = 0; i < n; ++i) {
            Poly image;
            for (std::size_t j = 0; j < n; ++j) {
                if (g.matrix(i, j).is_zero()) continue;
                image += g.matrix(i, j) * Poly::var(Var::coord(r, int(j) + 1));
            }
            sigma.emplace(Var::coord(r, int(i) + 1), std::move(image));
        }
    return sigma;
}

// Family of diagonal automorphisms diag over monomials in the listed
// parameters, e.g. diag(alpha^2, alpha, 1) or diag(alpha^2, alpha, +-alpha).
struct DiagonalFamily {
    int n = 0;
    std::vector<Var> params;                   // nonzero scalars
    std::map<Var, std::vector<int>> exps;      // per parameter, exponent at each index
    std::vector<std::vector<int>> sign_branches{{}};  // per branch, +-1 at each index

    static DiagonalFamily weights(int n, std::vector<std::pair<Var, std::vector<int>>> w,
                                  std::vector<std::vector<int>> signs = {}) {
        DiagonalFamily d;
        d.n = n;
        for (auto& [v, e] : w) {
            if (int(e.size()) != n) throw std::invalid_argument("weight vector length mismatch");
            d.params.push_back(v);
            d.exps.emplace(v, std::move(e));
        }
        if (signs.empty()) signs.push_back(std::vector<int>(n, 1));
        for (const auto& s : signs)
            if (int(s.size()) != n) throw std::invalid_argument("sign vector length mismatch");
        d.sign_branches = std::move(signs);
        return d;
    }

    // Concrete matrix branches, for running the shared verification and
    // invariance machinery.
    std::vector<Branch> as_branches() const {
        std::vector<Branch> out;
        for (std::size_t s = 0; s < sign_branches.size(); ++s) {
            Branch b;
            b.name = "diag" + (sign_branches.size() > 1 ? "#" + std::to_string(s + 1) : "");
            b.matrix = PolyMatrix(n, n);
            for (int i = 0; i < n; ++i) {
                Monomial m;
                for (const Var& v : params) {
                    const int e = exps.at(v)[i];
                    if (e > 0) m = m.times(Monomial::var(v, e));
                }
                b.matrix(i, i) = Poly::term(Rational(sign_branches[s][i]), m);
            }
            b.params = params;
            for (const Var& v : params) b.nonvanishing.push_back(Poly::var(v));
            out.push_back(std::move(b));
        }
        return out;
    }
};

// Remark-style pruning: a one-parameter diagonal subgroup
// diag(alpha^{a_1},...,alpha^{a_n}) with a_i >= 0 forces every invariant to
// avoid the coordinates with a_i > 0. Returns the union over the family's
// one-parameter specializations.
inline std::set<Var> diagonal_variable_elimination(const DiagonalFamily& d, int copies) {
    std::set<Var> gone;
    for (const Var& p : d.params) {
        const auto& e = d.exps.at(p);
        for (int i = 0; i < d.n; ++i) {
            if (e[i] < 0) throw std::invalid_argument("negative diagonal weight");
            if (e[i] > 0)
                for (int r = 1; r <= copies; ++r) gone.insert(Var::coord(r, i + 1));
        }
    }
    return gone;
}

// True when the monomial is fixed by every member of the diagonal family:
// zero total weight in each parameter and positive sign in each sign branch.
inline bool diagonal_monomial_filter(const DiagonalFamily& d, const Monomial& m) {
    std::vector<int> degree_at_index(d.n, 0);
    for (const auto& [v, e] : m.entries()) {
        if (!v.is_coord()) continue;
        if (v.index < 1 || v.index > d.n) throw std::out_of_range("coordinate index out of range");
        degree_at_index[v.index - 1] += e;
    }
    for (const Var& p : d.params) {
        long w = 0;
        const auto& exps = d.exps.at(p);
        for (int i = 0; i < d.n; ++i) w += long(exps[i]) * degree_at_index[i];
        if (w != 0) return false;
    }
    for (const auto& signs : d.sign_branches) {
        int sign = 1;
        for (int i = 0; i < d.n; ++i)
            if (signs[i] < 0 && degree_at_index[i] % 2 == 1) sign = -sign;
        if (sign != 1) return false;
    }
    return true;
}

// Sampled-specialization sanity check used at family construction time: each
// branch matrix must have nonzero determinant at some parameter point
// satisfying the nonvanishing conditions.
inline bool branch_generically_invertible(const Branch& b,
                                          const std::vector<Poly>& extra_nonzero = {}) {
    static const std::vector<std::vector<long>> samples = {
        {2, 3, 5, 7, 11, 13, 17, 19, 23}, {3, 5, 7, 11, 2, 13, 19, 23, 17},
        {5, 2, 3, 13, 7, 17, 11, 19, 29}, {-2, 3, -5, 7, 11, -13, 17, 19, 23}};
    std::set<Var> vars;
    for (std::size_t i = 0; i < b.matrix.rows(); ++i)
        for (std::size_t j = 0; j < b.matrix.cols(); ++j)
            for (const Var& v : b.matrix(i, j).variables()) vars.insert(v);
    const Var lambda = Var::param("lambda");
    const Var mu = Var::param("mu");
    for (const auto& sample : samples) {
        std::map<Var, Rational> point;
        std::size_t k = 0;
        for (const Var& v : vars) {
            if (v == lambda || v == mu) continue;
            point[v] = Rational(sample[k % sample.size()]);
            ++k;
        }
        if (vars.count(lambda) || vars.count(mu)) {
            point[lambda] = Rational(2);
            point[mu] = Rational(1, 2);  // respects lambda*mu = 1
        }
        bool admissible = true;
        for (const Poly& c : b.nonvanishing)
            if (c.evaluate(point).is_zero()) admissible = false;
        for (const Poly& c : extra_nonzero)
            if (!c.variables().empty() && c.evaluate(point).is_zero()) admissible = false;
        if (!admissible) continue;
        Poly det = determinant(b.matrix, b.rewrite.empty() ? nullptr : &b.rewrite);
        if (!det.evaluate(point).is_zero()) return true;
    }
    return false;
}

}  // namespace leib3
