#pragma once

#include <cstddef>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "leib3/poly.hpp"
#include "leib3/rewrite.hpp"

namespace leib3 {

class PolyMatrix {
  public:
    PolyMatrix() : r_(0), c_(0) {}
    PolyMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

    static PolyMatrix identity(std::size_t n) {
        PolyMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly(1);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    Poly& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Poly& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    PolyMatrix transpose() const {
        PolyMatrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Poly trace() const {
        if (r_ != c_) throw std::invalid_argument("trace of a non-square matrix");
        Poly s;
        for (std::size_t i = 0; i < r_; ++i) s += (*this)(i, i);
        return s;
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("matrix product shape mismatch");
        PolyMatrix p(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.c_; ++j) {
                    if (b(k, j).is_zero()) continue;
                    p(i, j) += a(i, k) * b(k, j);
                }
            }
        return p;
    }

    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix sum shape mismatch");
        PolyMatrix s(a.r_, a.c_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) s.a_[i] = a.a_[i] + b.a_[i];
        return s;
    }
    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix diff shape mismatch");
        PolyMatrix s(a.r_, a.c_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) s.a_[i] = a.a_[i] - b.a_[i];
        return s;
    }

    std::vector<Poly> apply(const std::vector<Poly>& x) const {
        if (x.size() != c_) throw std::invalid_argument("matrix apply shape mismatch");
        std::vector<Poly> y(r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                if (!(*this)(i, j).is_zero() && !x[j].is_zero()) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

  private:
    std::size_t r_, c_;
    std::vector<Poly> a_;
};

inline Poly determinant(const PolyMatrix& m, const RewriteSystem* rw = nullptr) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return Poly(1);
    if (n == 1) return m(0, 0);
    Poly det;
    for (std::size_t k = 0; k < n; ++k) {
        if (m(0, k).is_zero()) continue;
        PolyMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t jj = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                minor(i - 1, jj++) = m(i, j);
            }
        }
        Poly t = m(0, k) * determinant(minor, rw);
        det += (k % 2 == 0) ? t : -t;
    }
    return rw ? rw->normal_form(det) : det;
}

// --- Exact elimination over the fraction field of the parameter ring ------

struct LinSolveOptions {
    // Polynomials declared nonzero on the parameter locus (side conditions of
    // an automorphism branch or a family constraint such as lambda != 0).
    std::vector<Poly> nonvanishing;
    // Optional quotient-ring relations applied after every arithmetic step.
    const RewriteSystem* rewrite = nullptr;
};

enum class PivotClass { Constant = 0, Certified = 1, Assumed = 2 };

// A pivot is safe when it is a nonzero constant or reduces to one after
// dividing out declared-nonvanishing factors. Anything else is usable for
// generic parameters but gets recorded as an assumption.
inline PivotClass classify_pivot(const Poly& p, const LinSolveOptions& opt) {
    if (p.is_constant()) return PivotClass::Constant;
    Poly q = p;
    bool progressed = true;
    while (progressed && !q.is_constant()) {
        progressed = false;
        for (const Poly& d : opt.nonvanishing) {
            if (d.is_constant()) continue;
            if (auto quot = q.exact_div(d)) {
                q = *quot;
                progressed = true;
                break;
            }
        }
    }
    return q.is_constant() ? PivotClass::Certified : PivotClass::Assumed;
}

struct EchelonResult {
    PolyMatrix m;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    std::vector<Poly> assumed_nonzero;
    std::size_t rank = 0;
};

// Fraction-free Gaussian elimination. Without quotient relations this is
// one-step Bareiss: the cross-multiplied update is exactly divisible by the
// previous pivot, which keeps entries minor-sized. With relations the exact
// division is not available in general, so the cross-multiplied form is kept
// and only rational content is stripped per row.
inline EchelonResult echelon(PolyMatrix m, const LinSolveOptions& opt = {}) {
    EchelonResult res;
    const bool rw = opt.rewrite != nullptr;
    auto nf = [&](Poly p) { return rw ? opt.rewrite->normal_form(std::move(p)) : std::move(p); };
    if (rw)
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = nf(m(i, j));

    Poly prev(1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        // Lowest-degree pivot, preferring constants and certified-nonzero
        // entries over entries whose vanishing is undecided.
        bool found = false;
        std::size_t best = 0;
        std::tuple<int, int, std::size_t> best_key;
        for (std::size_t i = row; i < m.rows(); ++i) {
            const Poly& e = m(i, col);
            if (e.is_zero()) continue;
            auto key = std::make_tuple(static_cast<int>(classify_pivot(e, opt)),
                                       e.total_degree(), i);
            if (!found || key < best_key) {
                found = true;
                best = i;
                best_key = key;
            }
        }
        if (!found) continue;
        if (std::get<0>(best_key) == static_cast<int>(PivotClass::Assumed))
            res.assumed_nonzero.push_back(m(best, col).primitive_scaled());
        if (best != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(best, j), m(row, j));

        // One-step Bareiss needs the full submatrix update (including rows
        // with zero multiplier, which just scale by pivot/prev) to keep every
        // entry an exact minor of the input.
        const Poly pivot = m(row, col);
        for (std::size_t i = row + 1; i < m.rows(); ++i) {
            const Poly factor = m(i, col);
            Rational rowcontent(0);
            for (std::size_t j = col + 1; j < m.cols(); ++j) {
                Poly num = nf(pivot * m(i, j) - factor * m(row, j));
                if (!rw) {
                    auto q = num.exact_div(prev);
                    if (!q) throw std::logic_error("Bareiss division failed");
                    m(i, j) = std::move(*q);
                } else {
                    m(i, j) = std::move(num);
                }
            }
            m(i, col) = Poly();
            if (rw) {
                // Keep coefficients small: strip the rational content of the row.
                Rational g(0);
                for (std::size_t j = col + 1; j < m.cols(); ++j)
                    if (!m(i, j).is_zero()) g = rational_gcd(g, m(i, j).content());
                if (g != 0 && g != 1)
                    for (std::size_t j = col + 1; j < m.cols(); ++j)
                        if (!m(i, j).is_zero()) m(i, j) = m(i, j) * (Rational(1) / g);
            }
        }
        prev = pivot;
        res.pivots.emplace_back(row, col);
        ++row;
    }
    res.rank = res.pivots.size();
    res.m = std::move(m);
    return res;
}

inline std::size_t rank_of(const PolyMatrix& m, const LinSolveOptions& opt = {}) {
    return echelon(m, opt).rank;
}

struct NullspaceResult {
    std::vector<std::vector<Poly>> basis;
    std::vector<Poly> assumed_nonzero;
};

namespace detail {

// Clears rational content, strips declared-nonvanishing common polynomial
// factors, and normalizes the sign of the first nonzero entry.
inline void primitive_vector(std::vector<Poly>& v, const LinSolveOptions& opt) {
    Rational g(0);
    for (const Poly& p : v)
        if (!p.is_zero()) g = rational_gcd(g, p.content());
    if (g != 0 && g != 1) {
        Rational inv = Rational(1) / g;
        for (Poly& p : v) p = p * inv;
    }
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (const Poly& d : opt.nonvanishing) {
            if (d.is_constant()) continue;
            std::vector<Poly> q(v.size());
            bool all = true;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (v[i].is_zero()) continue;
                auto quot = v[i].exact_div(d);
                if (!quot) {
                    all = false;
                    break;
                }
                q[i] = std::move(*quot);
            }
            if (all) {
                v = std::move(q);
                progressed = true;
                break;
            }
        }
    }
    for (const Poly& p : v) {
        if (p.is_zero()) continue;
        if (p.leading().second < 0)
            for (Poly& e : v) e = -e;
        break;
    }
}

}  // namespace detail

// Exact basis of the right nullspace of m over the fraction field of the
// parameter ring. Basis vectors have polynomial entries cleared of content.
inline NullspaceResult nullspace(const PolyMatrix& m, const LinSolveOptions& opt = {}) {
    EchelonResult e = echelon(m, opt);
    const bool rw = opt.rewrite != nullptr;
    auto nf = [&](Poly p) { return rw ? opt.rewrite->normal_form(std::move(p)) : std::move(p); };

    std::vector<bool> is_pivot_col(m.cols(), false);
    for (auto& [r, c] : e.pivots) is_pivot_col[c] = true;

    NullspaceResult res;
    res.assumed_nonzero = e.assumed_nonzero;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot_col[f]) continue;
        std::vector<Poly> v(m.cols());
        v[f] = Poly(1);
        for (std::size_t k = e.pivots.size(); k-- > 0;) {
            const auto [prow, pcol] = e.pivots[k];
            Poly s;
            for (std::size_t c = pcol + 1; c < m.cols(); ++c)
                if (!e.m(prow, c).is_zero() && !v[c].is_zero()) s += e.m(prow, c) * v[c];
            s = nf(std::move(s));
            if (s.is_zero()) {
                v[pcol] = Poly();
                continue;
            }
            const Poly& piv = e.m(prow, pcol);
            for (Poly& entry : v)
                if (!entry.is_zero()) entry = nf(entry * piv);
            v[pcol] = -s;
        }
        detail::primitive_vector(v, opt);
        res.basis.push_back(std::move(v));
    }
    return res;
}

// --- Span utilities over vectors of polynomials ---------------------------

struct SpanBasis {
    std::vector<std::vector<Poly>> basis;
    std::size_t dim = 0;
    std::vector<Poly> assumed_nonzero;
};

inline SpanBasis span_rows(const std::vector<std::vector<Poly>>& rows,
                           const LinSolveOptions& opt = {}) {
    SpanBasis out;
    if (rows.empty()) return out;
    const std::size_t cols = rows.front().size();
    PolyMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("ragged span input");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    EchelonResult e = echelon(std::move(m), opt);
    out.dim = e.rank;
    out.assumed_nonzero = e.assumed_nonzero;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) {
        std::vector<Poly> row(cols);
        for (std::size_t j = 0; j < cols; ++j) row[j] = e.m(e.pivots[k].first, j);
        detail::primitive_vector(row, opt);
        out.basis.push_back(std::move(row));
    }
    return out;
}

inline bool in_row_span(const std::vector<std::vector<Poly>>& rows, const std::vector<Poly>& v,
                        const LinSolveOptions& opt = {}) {
    std::vector<std::vector<Poly>> all = rows;
    all.push_back(v);
    return span_rows(rows, opt).dim == span_rows(all, opt).dim;
}

// Span of a set of polynomials, row-reduced over their joint coordinate
// monomial support; coefficients may involve family parameters.
struct PolySpan {
    std::vector<Poly> basis;
    std::size_t dim = 0;
    std::vector<Poly> assumed_nonzero;
};

inline PolySpan poly_span(const std::vector<Poly>& polys, const LinSolveOptions& opt = {}) {
    std::vector<Monomial> support;
    std::map<Monomial, std::size_t, MonomialGrlexLess> index;
    std::vector<std::map<Monomial, Poly, MonomialGrlexLess>> split;
    for (const Poly& p : polys) {
        split.push_back(collect_by_coordinates(p));
        for (const auto& [cm, coeff] : split.back())
            if (!index.count(cm)) {
                index.emplace(cm, support.size());
                support.push_back(cm);
            }
    }
    PolySpan out;
    if (support.empty()) return out;
    std::vector<std::vector<Poly>> rows;
    for (const auto& sp : split) {
        std::vector<Poly> row(support.size());
        bool nonzero = false;
        for (const auto& [cm, coeff] : sp) {
            row[index.at(cm)] = coeff;
            nonzero = nonzero || !coeff.is_zero();
        }
        if (nonzero) rows.push_back(std::move(row));
    }
    SpanBasis sb = span_rows(rows, opt);
    out.dim = sb.dim;
    out.assumed_nonzero = sb.assumed_nonzero;
    for (const auto& row : sb.basis) {
        Poly p;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero()) p += row[j] * Poly::term(Rational(1), support[j]);
        out.basis.push_back(std::move(p));
    }
    return out;
}

inline bool poly_in_span(const std::vector<Poly>& polys, const Poly& p,
                         const LinSolveOptions& opt = {}) {
    if (p.is_zero()) return true;
    std::vector<Poly> all = polys;
    all.push_back(p);
    return poly_span(polys, opt).dim == poly_span(all, opt).dim;
}

// Inverse of a matrix with rational (constant polynomial) entries.
inline PolyMatrix inverse_rational(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = m.rows();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!m(i, j).is_constant())
                throw std::invalid_argument("inverse_rational needs constant entries");
            a[i][j] = m(i, j).constant_value();
        }
        a[i][n + i] = Rational(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && a[p][col] == 0) ++p;
        if (p == n) throw std::invalid_argument("singular matrix");
        std::swap(a[p], a[col]);
        const Rational piv = a[col][col];
        for (std::size_t j = 0; j < 2 * n; ++j) a[col][j] /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[col][j];
        }
    }
    PolyMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = Poly(a[i][n + j]);
    return inv;
}

}  // namespace leib3
