#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "leib3/matrix.hpp"
#include "leib3/poly.hpp"

namespace leib3 {

// Element of an n-dimensional algebra, written in the fixed basis e_1..e_n.
// Coordinates are polynomials so that generic elements and parameterized
// images can share one type.
struct Element {
    std::vector<Poly> coords;

    Element() = default;
    explicit Element(std::size_t n) : coords(n) {}

    static Element basis(std::size_t n, int i) {  // 1-based
        Element e(n);
        e.coords.at(i - 1) = Poly(1);
        return e;
    }

    // The generic element X_r with coordinates x_{r,1}..x_{r,n}.
    static Element generic(int r, std::size_t n) {
        Element e(n);
        for (std::size_t i = 0; i < n; ++i) e.coords[i] = Poly::var(Var::coord(r, int(i) + 1));
        return e;
    }

    bool is_zero() const {
        for (const Poly& c : coords)
            if (!c.is_zero()) return false;
        return true;
    }

    friend Element operator+(const Element& a, const Element& b) {
        if (a.coords.size() != b.coords.size()) throw std::invalid_argument("element dim mismatch");
        Element r(a.coords.size());
        for (std::size_t i = 0; i < a.coords.size(); ++i) r.coords[i] = a.coords[i] + b.coords[i];
        return r;
    }
    friend Element operator-(const Element& a, const Element& b) {
        if (a.coords.size() != b.coords.size()) throw std::invalid_argument("element dim mismatch");
        Element r(a.coords.size());
        for (std::size_t i = 0; i < a.coords.size(); ++i) r.coords[i] = a.coords[i] - b.coords[i];
        return r;
    }
    friend Element operator*(const Poly& c, const Element& a) {
        Element r(a.coords.size());
        for (std::size_t i = 0; i < a.coords.size(); ++i) r.coords[i] = c * a.coords[i];
        return r;
    }
    friend bool operator==(const Element& a, const Element& b) { return a.coords == b.coords; }

    std::string str(bool pretty = true) const {
        std::ostringstream out;
        bool first = true;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i].is_zero()) continue;
            if (!first) out << " + ";
            first = false;
            if (coords[i] == Poly(1))
                out << "e_" << (i + 1);
            else
                out << "(" << coords[i].str(pretty, int(coords.size())) << ")·e_" << (i + 1);
        }
        if (first) out << "0";
        return out.str();
    }
};

struct Subspace {
    std::vector<Element> basis;
    std::size_t dim = 0;
    std::vector<Poly> assumed_nonzero;
};

// n-dimensional algebra presented by structure constants:
// e_i e_j = sum_l M(i,j,l) e_l, entries polynomial in parameters only.
class StructureTable {
  public:
    StructureTable(int dim, std::vector<Poly> entries, std::vector<Poly> constraints = {})
        : n_(dim), m_(std::move(entries)), constraints_(std::move(constraints)) {
        if (n_ < 1) throw std::invalid_argument("structure table dimension must be >= 1");
        if (m_.size() != std::size_t(n_) * n_ * n_)
            throw std::invalid_argument("structure table entry count mismatch");
        for (const Poly& p : m_)
            for (const Var& v : p.variables())
                if (v.is_coord())
                    throw std::invalid_argument("structure constants contain coordinate variables");
    }

    static StructureTable zero(int dim) {
        return StructureTable(dim, std::vector<Poly>(std::size_t(dim) * dim * dim));
    }

    int dim() const { return n_; }

    // All indices 1-based, matching the e_i e_j = sum M_{ijl} e_l convention.
    const Poly& M(int i, int j, int l) const { return m_.at(flat(i, j, l)); }
    void set(int i, int j, int l, Poly v) { m_.at(flat(i, j, l)) = std::move(v); }

    void set_product(int i, int j, const Element& value) {
        if (value.coords.size() != std::size_t(n_)) throw std::invalid_argument("dim mismatch");
        for (int l = 1; l <= n_; ++l) set(i, j, l, value.coords[l - 1]);
    }

    Element product(int i, int j) const {
        Element e(n_);
        for (int l = 1; l <= n_; ++l) e.coords[l - 1] = M(i, j, l);
        return e;
    }

    const std::vector<Poly>& constraints() const { return constraints_; }
    void add_constraint(Poly p) { constraints_.push_back(std::move(p)); }

    bool parameter_free() const {
        for (const Poly& p : m_)
            if (!p.variables().empty()) return false;
        return true;
    }

    StructureTable substituted(const std::map<Var, Poly>& sigma) const {
        std::vector<Poly> e;
        e.reserve(m_.size());
        for (const Poly& p : m_) e.push_back(p.substitute(sigma));
        std::vector<Poly> c;
        for (const Poly& p : constraints_) {
            Poly q = p.substitute(sigma);
            if (!q.is_constant()) c.push_back(std::move(q));
        }
        return StructureTable(n_, std::move(e), std::move(c));
    }

    LinSolveOptions solve_options() const {
        LinSolveOptions opt;
        opt.nonvanishing = constraints_;
        return opt;
    }

  private:
    std::size_t flat(int i, int j, int l) const {
        if (i < 1 || i > n_ || j < 1 || j > n_ || l < 1 || l > n_)
            throw std::out_of_range("structure table index out of range");
        return (std::size_t(i - 1) * n_ + (j - 1)) * n_ + (l - 1);
    }

    int n_;
    std::vector<Poly> m_;
    std::vector<Poly> constraints_;
};

// Bilinear product a*b = sum_{i,j} a_i b_j e_i e_j.
inline Element mul(const StructureTable& t, const Element& a, const Element& b) {
    const int n = t.dim();
    if (a.coords.size() != std::size_t(n) || b.coords.size() != std::size_t(n))
        throw std::invalid_argument("element dimension mismatch");
    Element r(n);
    for (int i = 1; i <= n; ++i) {
        if (a.coords[i - 1].is_zero()) continue;
        for (int j = 1; j <= n; ++j) {
            if (b.coords[j - 1].is_zero()) continue;
            const Poly ab = a.coords[i - 1] * b.coords[j - 1];
            for (int l = 1; l <= n; ++l) {
                if (t.M(i, j, l).is_zero()) continue;
                r.coords[l - 1] += ab * t.M(i, j, l);
            }
        }
    }
    return r;
}

// Matrices of left and right multiplication by e_i:
// M_L^(i)(l,j) = M_{ijl} and M_R^(i)(l,j) = M_{jil}.
inline std::pair<PolyMatrix, PolyMatrix> mult_matrices(const StructureTable& t, int i) {
    const int n = t.dim();
    if (i < 1 || i > n) throw std::out_of_range("basis index out of range");
    PolyMatrix ml(n, n), mr(n, n);
    for (int l = 1; l <= n; ++l)
        for (int j = 1; j <= n; ++j) {
            ml(l - 1, j - 1) = t.M(i, j, l);
            mr(l - 1, j - 1) = t.M(j, i, l);
        }
    return {std::move(ml), std::move(mr)};
}

// Degree-2 analogues for the argument e_i e_i':
// entries (l,j) = sum_t M_{i i' t} M_{t j l} and sum_t M_{i i' t} M_{j t l}.
inline std::pair<PolyMatrix, PolyMatrix> double_mult_matrices(const StructureTable& t, int i,
                                                              int ip) {
    const int n = t.dim();
    if (i < 1 || i > n || ip < 1 || ip > n) throw std::out_of_range("basis index out of range");
    PolyMatrix ml(n, n), mr(n, n);
    for (int l = 1; l <= n; ++l)
        for (int j = 1; j <= n; ++j) {
            Poly sl, sr;
            for (int tt = 1; tt <= n; ++tt) {
                if (t.M(i, ip, tt).is_zero()) continue;
                sl += t.M(i, ip, tt) * t.M(tt, j, l);
                sr += t.M(i, ip, tt) * t.M(j, tt, l);
            }
            ml(l - 1, j - 1) = std::move(sl);
            mr(l - 1, j - 1) = std::move(sr);
        }
    return {std::move(ml), std::move(mr)};
}

struct LeibnizCheck {
    bool ok = true;
    int i = 0, j = 0, k = 0;     // 1-based witness when ok is false
    Element residual;            // (e_i e_j)e_k - (e_i e_k)e_j - e_i(e_j e_k)
    explicit operator bool() const { return ok; }
};

// (xy)z = (xz)y + x(yz) checked on all basis triples, identically in the
// table parameters.
inline LeibnizCheck check_leibniz(const StructureTable& t) {
    const int n = t.dim();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                const Element ei = Element::basis(n, i);
                const Element ej = Element::basis(n, j);
                const Element ek = Element::basis(n, k);
                Element r = mul(t, mul(t, ei, ej), ek) - mul(t, mul(t, ei, ek), ej) -
                            mul(t, ei, mul(t, ej, ek));
                if (!r.is_zero()) return {false, i, j, k, std::move(r)};
            }
    return {};
}

namespace detail {

inline Subspace span_elements(const std::vector<Element>& gens, int n,
                              const LinSolveOptions& opt) {
    std::vector<std::vector<Poly>> rows;
    for (const Element& e : gens)
        if (!e.is_zero()) rows.push_back(e.coords);
    if (rows.empty()) return {};
    SpanBasis sb = span_rows(rows, opt);
    Subspace s;
    s.dim = sb.dim;
    s.assumed_nonzero = sb.assumed_nonzero;
    for (auto& row : sb.basis) {
        Element e(n);
        e.coords = std::move(row);
        s.basis.push_back(std::move(e));
    }
    return s;
}

}  // namespace detail

// Leib ideal: span of all squares, i.e. of the products M_ii together with
// the polarizations M_ij + M_ji. Zero exactly for Lie algebras.
inline Subspace leib_ideal(const StructureTable& t) {
    const int n = t.dim();
    std::vector<Element> gens;
    for (int i = 1; i <= n; ++i) gens.push_back(t.product(i, i));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) gens.push_back(t.product(i, j) + t.product(j, i));
    return detail::span_elements(gens, n, t.solve_options());
}

// Ann^R = {a | ba = 0 for all b}: right nullspace of the n^2 x n system
// sum_j M_{ijl} a_j = 0.
inline Subspace right_annihilator(const StructureTable& t) {
    const int n = t.dim();
    PolyMatrix a(std::size_t(n) * n, n);
    for (int i = 1; i <= n; ++i)
        for (int l = 1; l <= n; ++l)
            for (int j = 1; j <= n; ++j) a((i - 1) * n + (l - 1), j - 1) = t.M(i, j, l);
    NullspaceResult ns = nullspace(a, t.solve_options());
    Subspace s;
    s.dim = ns.basis.size();
    s.assumed_nonzero = ns.assumed_nonzero;
    for (auto& v : ns.basis) {
        Element e(n);
        e.coords = std::move(v);
        s.basis.push_back(std::move(e));
    }
    return s;
}

struct NilpotencyResult {
    bool nilpotent = false;
    int ncl = -1;                   // least k with every k-fold product zero
    bool undecided_at_cap = false;  // chain neither vanished nor stabilized
    std::vector<std::size_t> chain_dims;
};

// Product-span chain V_1 = span{e_i}, V_{k+1} = span{V_a V_b : a+b = k+1}.
// Every product of k elements lies in V_k and the chain is descending, so the
// algebra is nilpotent of class k exactly when V_k is the first zero entry.
// A nonzero repeat V_{k+1} = V_k certifies non-nilpotency.
inline NilpotencyResult nilpotency_class(const StructureTable& t, int cap = -1) {
    const int n = t.dim();
    if (cap < 1) cap = n + 2;
    const LinSolveOptions opt = t.solve_options();

    std::vector<Subspace> v(1);  // v[0] unused
    Subspace whole;
    std::vector<Element> all;
    for (int i = 1; i <= n; ++i) all.push_back(Element::basis(n, i));
    v.push_back(detail::span_elements(all, n, opt));

    NilpotencyResult res;
    res.chain_dims.push_back(v[1].dim);
    for (int k = 2; k <= cap; ++k) {
        std::vector<Element> prods;
        for (int a = 1; a < k; ++a) {
            const int b = k - a;
            for (const Element& x : v[a].basis)
                for (const Element& y : v[b].basis) prods.push_back(mul(t, x, y));
        }
        v.push_back(detail::span_elements(prods, n, opt));
        res.chain_dims.push_back(v[k].dim);
        if (v[k].dim == 0) {
            res.nilpotent = true;
            res.ncl = k;
            return res;
        }
        if (v[k].dim == v[k - 1].dim) {  // descending chain: equal dims = equal spaces
            res.nilpotent = false;
            return res;
        }
    }
    res.nilpotent = false;
    res.undecided_at_cap = true;
    return res;
}

struct DerivationSpace {
    std::size_t dim = 0;
    std::vector<Poly> assumed_nonzero;
};

// Dimension of {D : D(e_i e_j) = D(e_i)e_j + e_i D(e_j)}: the nullspace of an
// n^3 x n^2 linear system over the parameter fraction field.
inline DerivationSpace derivation_dim(const StructureTable& t) {
    const int n = t.dim();
    PolyMatrix a(std::size_t(n) * n * n, std::size_t(n) * n);
    auto col = [n](int p, int q) { return std::size_t(p - 1) * n + (q - 1); };  // D entry (p,q)
    std::size_t row = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int l = 1; l <= n; ++l, ++row) {
                for (int tt = 1; tt <= n; ++tt) {
                    a(row, col(l, tt)) += t.M(i, j, tt);
                    a(row, col(tt, i)) -= t.M(tt, j, l);
                    a(row, col(tt, j)) -= t.M(i, tt, l);
                }
            }
    NullspaceResult ns = nullspace(a, t.solve_options());
    return {ns.basis.size(), ns.assumed_nonzero};
}

// Structure constants in the basis given by the columns of s (rational,
// invertible): f_i f_j rewritten in the f-coordinates via s^{-1}.
inline StructureTable change_basis(const StructureTable& t, const PolyMatrix& s) {
    const int n = t.dim();
    if (s.rows() != std::size_t(n) || s.cols() != std::size_t(n))
        throw std::invalid_argument("basis matrix shape mismatch");
    const PolyMatrix sinv = inverse_rational(s);
    StructureTable out = StructureTable::zero(n);
    std::vector<Element> f(n, Element(n));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) f[j].coords[i] = s(i, j);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const Element p = mul(t, f[i - 1], f[j - 1]);
            const std::vector<Poly> coords = sinv.apply(p.coords);
            for (int l = 1; l <= n; ++l) out.set(i, j, l, coords[l - 1]);
        }
    return out;
}

}  // namespace leib3
