#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "leib3/algebra.hpp"
#include "leib3/matrix.hpp"
#include "leib3/poly.hpp"

namespace leib3 {

// One composition factor P_{h}: left or right multiplication by a generic
// element chi_r (Single) or by a degree-2 product chi_r chi_r' (Pair).
struct TraceFactor {
    enum Side { L, R };
    Side side = L;
    int r = 1;   // copy index, 1-based
    int r2 = 0;  // second copy for Pair arguments, 0 for Single

    bool is_pair() const { return r2 > 0; }
    int degree() const { return is_pair() ? 2 : 1; }

    friend bool operator==(const TraceFactor& a, const TraceFactor& b) {
        return a.side == b.side && a.r == b.r && a.r2 == b.r2;
    }
};

// Formal word h = P^1_{h_1} o ... o P^k_{h_k} (chi_0), factors stored
// outermost first: tr((chi_0 chi_s) chi_r) = R_{chi_r} o R_{chi_s} is
// [(R, r), (R, s)]. The empty word is the identity operator chi_0.
struct TraceWord {
    std::vector<TraceFactor> factors;

    int total_degree() const {
        int d = 0;
        for (const auto& f : factors) d += f.degree();
        return d;
    }

    std::vector<int> multidegree(int copies) const {
        std::vector<int> d(copies, 0);
        for (const auto& f : factors) {
            if (f.r < 1 || f.r > copies || (f.is_pair() && (f.r2 < 1 || f.r2 > copies)))
                throw std::out_of_range("trace word copy index out of range");
            d[f.r - 1] += 1;
            if (f.is_pair()) d[f.r2 - 1] += 1;
        }
        return d;
    }

    friend bool operator==(const TraceWord& a, const TraceWord& b) {
        return a.factors == b.factors;
    }

    // Compact syntax: "R1", "L2.R1", "L(1*2).R3". Outermost factor first.
    std::string text() const {
        std::ostringstream out;
        bool first = true;
        for (const auto& f : factors) {
            if (!first) out << ".";
            first = false;
            out << (f.side == TraceFactor::L ? 'L' : 'R');
            if (f.is_pair())
                out << "(" << f.r << "*" << f.r2 << ")";
            else
                out << f.r;
        }
        return out.str();
    }

    // Classical notation, e.g. tr((X_s X_0) X_r) rendered with chi letters.
    std::string math() const {
        std::string e = "χ_0";
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
            std::string arg = "χ_" + std::to_string(it->r);
            if (it->is_pair()) arg = "(" + arg + "χ_" + std::to_string(it->r2) + ")";
            e = it->side == TraceFactor::L ? "(" + arg + e + ")" : "(" + e + arg + ")";
        }
        return "tr" + (factors.empty() ? "(" + e + ")" : e);
    }
};

inline TraceWord parse_trace_word(const std::string& text) {
    TraceWord w;
    std::size_t p = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("bad trace word '" + text + "': " + why);
    };
    auto read_int = [&]() {
        std::size_t q = p;
        while (q < text.size() && std::isdigit(static_cast<unsigned char>(text[q]))) ++q;
        if (q == p) fail("expected copy index");
        int v = std::stoi(text.substr(p, q - p));
        if (v < 1) fail("copy indices are 1-based");
        p = q;
        return v;
    };
    while (p < text.size()) {
        TraceFactor f;
        if (text[p] == 'L')
            f.side = TraceFactor::L;
        else if (text[p] == 'R')
            f.side = TraceFactor::R;
        else
            fail("expected side L or R");
        ++p;
        if (p < text.size() && text[p] == '(') {
            ++p;
            f.r = read_int();
            if (p >= text.size() || text[p] != '*') fail("expected '*' in pair argument");
            ++p;
            f.r2 = read_int();
            if (p >= text.size() || text[p] != ')') fail("expected ')'");
            ++p;
        } else {
            f.r = read_int();
        }
        w.factors.push_back(f);
        if (p < text.size()) {
            if (text[p] != '.') fail("expected '.' between factors");
            ++p;
            if (p == text.size()) fail("trailing '.'");
        }
    }
    return w;
}

struct TraceValue {
    Poly value;
    TraceWord word;
    int copies = 0;
};

// Direct engine: build the n x n matrix of b -> h(b, X_1, ..., X_m) by
// applying the word to each basis element, then take the matrix trace.
inline TraceValue trace_direct(const StructureTable& t, const TraceWord& w, int copies = 0) {
    const int n = t.dim();
    if (copies <= 0)
        for (const auto& f : w.factors) copies = std::max({copies, f.r, f.r2});
    if (copies <= 0) copies = 1;
    Poly tr;
    for (int b = 1; b <= n; ++b) {
        Element v = Element::basis(n, b);
        for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
            Element arg = Element::generic(it->r, n);
            if (it->is_pair()) arg = mul(t, arg, Element::generic(it->r2, n));
            v = it->side == TraceFactor::L ? mul(t, arg, v) : mul(t, v, arg);
        }
        tr += v.coords[b - 1];
    }
    if (w.factors.empty()) tr = Poly(long(n));
    return {std::move(tr), w, copies};
}

// Closed-form engine: tr(h) = sum over index tuples of
// tr(M^{(i_1)} ... M^{(i_k)}) x_{r_1,i_1} ... x_{r_k,i_k}, with the
// double-argument matrices M^{(i,i')} for Pair factors.
inline TraceValue trace_closed_form(const StructureTable& t, const TraceWord& w, int copies = 0) {
    const int n = t.dim();
    if (copies <= 0)
        for (const auto& f : w.factors) copies = std::max({copies, f.r, f.r2});
    if (copies <= 0) copies = 1;
    const std::size_t k = w.factors.size();
    if (k == 0) return {Poly(long(n)), w, copies};

    // Cache the per-index multiplication matrices.
    std::vector<PolyMatrix> single_l(n), single_r(n);
    for (int i = 1; i <= n; ++i) {
        auto [ml, mr] = mult_matrices(t, i);
        single_l[i - 1] = std::move(ml);
        single_r[i - 1] = std::move(mr);
    }
    std::map<std::pair<int, int>, std::pair<PolyMatrix, PolyMatrix>> dbl;
    for (const auto& f : w.factors)
        if (f.is_pair())
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    if (!dbl.count({i, j})) dbl.emplace(std::make_pair(i, j),
                                                        double_mult_matrices(t, i, j));

    std::vector<int> radix(k);
    for (std::size_t q = 0; q < k; ++q) radix[q] = w.factors[q].is_pair() ? n * n : n;

    Poly total;
    std::vector<int> idx(k, 0);
    for (;;) {
        PolyMatrix prod;
        Monomial mono;
        bool started = false;
        for (std::size_t q = 0; q < k; ++q) {
            const TraceFactor& f = w.factors[q];
            const PolyMatrix* mq = nullptr;
            if (f.is_pair()) {
                const int i = idx[q] / n + 1, j = idx[q] % n + 1;
                const auto& pr = dbl.at({i, j});
                mq = f.side == TraceFactor::L ? &pr.first : &pr.second;
                mono = mono.times(Monomial::var(Var::coord(f.r, i)));
                mono = mono.times(Monomial::var(Var::coord(f.r2, j)));
            } else {
                const int i = idx[q] + 1;
                mq = f.side == TraceFactor::L ? &single_l[i - 1] : &single_r[i - 1];
                mono = mono.times(Monomial::var(Var::coord(f.r, i)));
            }
            prod = started ? prod * *mq : *mq;
            started = true;
        }
        Poly c = prod.trace();
        if (!c.is_zero()) total += c * Poly::term(Rational(1), mono);
        // Odometer over the index tuples.
        std::size_t q = 0;
        for (; q < k; ++q) {
            if (++idx[q] < radix[q]) break;
            idx[q] = 0;
        }
        if (q == k) break;
    }
    return {std::move(total), w, copies};
}

// n = 3 specialization of the k = 1 closed form: the linear functionals
// tr(chi_r chi_0) = sum_i (sum_j M_{ijj}) x_{r,i} and
// tr(chi_0 chi_r) = sum_i (sum_j M_{jij}) x_{r,i}.
inline TraceValue trace_linear_n3(const StructureTable& t, TraceFactor::Side side, int r) {
    if (t.dim() != 3) throw std::invalid_argument("trace_linear_n3 needs a 3-dimensional table");
    Poly v;
    for (int i = 1; i <= 3; ++i) {
        Poly c;
        for (int j = 1; j <= 3; ++j) c += side == TraceFactor::L ? t.M(i, j, j) : t.M(j, i, j);
        if (!c.is_zero()) v += c * Poly::var(Var::coord(r, i));
    }
    TraceWord w;
    w.factors.push_back({side, r, 0});
    return {std::move(v), std::move(w), r};
}

// All words of total degree <= max_degree over m copies, sides L/R, arguments
// of degree 1 or 2; ordered by length, then by factor enumeration.
inline std::vector<TraceWord> enumerate_trace_words(int max_degree, int copies) {
    if (max_degree < 1) throw std::invalid_argument("degree bound must be >= 1");
    std::vector<TraceFactor> alphabet;
    for (int side = 0; side < 2; ++side) {
        for (int r = 1; r <= copies; ++r)
            alphabet.push_back({side == 0 ? TraceFactor::L : TraceFactor::R, r, 0});
        for (int r = 1; r <= copies; ++r)
            for (int r2 = 1; r2 <= copies; ++r2)
                alphabet.push_back({side == 0 ? TraceFactor::L : TraceFactor::R, r, r2});
    }
    std::vector<TraceWord> out;
    std::vector<TraceWord> frontier{TraceWord{}};
    while (!frontier.empty()) {
        std::vector<TraceWord> next;
        for (const TraceWord& w : frontier)
            for (const TraceFactor& f : alphabet) {
                if (w.total_degree() + f.degree() > max_degree) continue;
                TraceWord e = w;
                e.factors.push_back(f);
                out.push_back(e);
                next.push_back(std::move(e));
            }
        frontier = std::move(next);
    }
    return out;
}

// Basis, per multidegree up to the bound, of the span of all products of
// trace values (the subalgebra Tr(A)_m in bounded degree). Multidegree zero
// is spanned by 1.
inline std::map<std::vector<int>, std::vector<Poly>> trace_subalgebra_span(
    const StructureTable& t, int max_degree, int copies) {
    struct Val {
        Poly p;
        std::vector<int> d;
    };
    std::vector<Val> vals;
    for (const TraceWord& w : enumerate_trace_words(max_degree, copies)) {
        TraceValue tv = trace_closed_form(t, w, copies);
        if (tv.value.is_zero()) continue;
        vals.push_back({std::move(tv.value), w.multidegree(copies)});
    }

    std::map<std::vector<int>, std::vector<Poly>> products;
    products[std::vector<int>(copies, 0)].push_back(Poly(1));
    // Multisets of trace values with total degree within the bound.
    std::function<void(std::size_t, const Poly&, const std::vector<int>&)> rec =
        [&](std::size_t from, const Poly& acc, const std::vector<int>& deg) {
            for (std::size_t i = from; i < vals.size(); ++i) {
                std::vector<int> nd = deg;
                int total = 0;
                for (std::size_t c = 0; c < nd.size(); ++c) {
                    nd[c] += vals[i].d[c];
                    total += nd[c];
                }
                if (total > max_degree) continue;
                Poly np = acc * vals[i].p;
                if (!np.is_zero()) products[nd].push_back(np);
                rec(i, np, nd);
            }
        };
    rec(0, Poly(1), std::vector<int>(copies, 0));

    std::map<std::vector<int>, std::vector<Poly>> out;
    const LinSolveOptions opt = t.solve_options();
    for (auto& [d, polys] : products) out[d] = poly_span(polys, opt).basis;
    return out;
}

}  // namespace leib3
