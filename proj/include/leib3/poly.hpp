#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "leib3/rational.hpp"
#include "leib3/variable.hpp"

namespace leib3 {

// Power product of variables. Exponents are kept sorted by the global Var
// order with all entries strictly positive; the empty product is 1.
class Monomial {
  public:
    using Entry = std::pair<Var, int>;

    Monomial() = default;

    static Monomial one() { return Monomial(); }

    static Monomial var(const Var& v, int exp = 1) {
        Monomial m;
        if (exp < 0) throw std::invalid_argument("negative exponent");
        if (exp > 0) m.e_.emplace_back(v, exp);
        return m;
    }

    const std::vector<Entry>& entries() const { return e_; }
    bool is_one() const { return e_.empty(); }

    int total_degree() const {
        int d = 0;
        for (const auto& [v, e] : e_) d += e;
        return d;
    }

    int degree_in(const Var& v) const {
        for (const auto& [w, e] : e_)
            if (w == v) return e;
        return 0;
    }

    Monomial times(const Monomial& o) const {
        Monomial r;
        r.e_.reserve(e_.size() + o.e_.size());
        auto a = e_.begin();
        auto b = o.e_.begin();
        while (a != e_.end() && b != o.e_.end()) {
            if (a->first == b->first) {
                r.e_.emplace_back(a->first, a->second + b->second);
                ++a, ++b;
            } else if (a->first < b->first) {
                r.e_.push_back(*a++);
            } else {
                r.e_.push_back(*b++);
            }
        }
        r.e_.insert(r.e_.end(), a, e_.end());
        r.e_.insert(r.e_.end(), b, o.e_.end());
        return r;
    }

    bool divisible_by(const Monomial& d) const {
        for (const auto& [v, e] : d.e_)
            if (degree_in(v) < e) return false;
        return true;
    }

    std::optional<Monomial> divided_by(const Monomial& d) const {
        Monomial r;
        auto a = e_.begin();
        auto b = d.e_.begin();
        while (a != e_.end()) {
            if (b != d.e_.end() && a->first == b->first) {
                if (a->second < b->second) return std::nullopt;
                if (a->second > b->second) r.e_.emplace_back(a->first, a->second - b->second);
                ++a, ++b;
            } else if (b != d.e_.end() && b->first < a->first) {
                return std::nullopt;  // divisor uses a variable we lack
            } else {
                r.e_.push_back(*a++);
            }
        }
        if (b != d.e_.end()) return std::nullopt;
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  private:
    std::vector<Entry> e_;
};

// Graded lexicographic order: total degree first, ties broken by the earliest
// variable in the global order carrying the larger exponent.
struct MonomialGrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        auto i = a.entries().begin();
        auto j = b.entries().begin();
        while (i != a.entries().end() && j != b.entries().end()) {
            if (i->first == j->first) {
                if (i->second != j->second) return i->second < j->second;
                ++i, ++j;
            } else if (i->first < j->first) {
                return false;  // a holds an earlier variable, so a is larger
            } else {
                return true;
            }
        }
        // Equal total degree: both ranges must exhaust together.
        return false;
    }
};

// Sparse multivariate polynomial with exact rational coefficients.
// Canonical form: no zero coefficients, terms keyed by grlex order, so
// operator== is structural equality.
class Poly {
  public:
    using TermMap = std::map<Monomial, Rational, MonomialGrlexLess>;

    Poly() = default;
    Poly(const Rational& c) {
        if (c != 0) t_.emplace(Monomial::one(), c);
    }
    Poly(long c) : Poly(Rational(c)) {}
    Poly(int c) : Poly(Rational(c)) {}

    static Poly var(const Var& v, int exp = 1) {
        Poly p;
        if (exp == 0) return Poly(1);
        p.t_.emplace(Monomial::var(v, exp), Rational(1));
        return p;
    }

    static Poly term(const Rational& c, const Monomial& m) {
        Poly p;
        if (c != 0) p.t_.emplace(m, c);
        return p;
    }

    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }

    Rational constant_value() const {
        if (t_.empty()) return Rational(0);
        if (!is_constant()) throw std::logic_error("constant_value of a non-constant polynomial");
        return t_.begin()->second;
    }

    Rational coeff(const Monomial& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? Rational(0) : it->second;
    }

    int total_degree() const {
        return t_.empty() ? 0 : t_.rbegin()->first.total_degree();
    }

    // Leading (grlex-largest) term; polynomial must be nonzero.
    const std::pair<const Monomial, Rational>& leading() const {
        if (t_.empty()) throw std::logic_error("leading term of zero");
        return *t_.rbegin();
    }

    std::set<Var> variables() const {
        std::set<Var> s;
        for (const auto& [m, c] : t_)
            for (const auto& [v, e] : m.entries()) s.insert(v);
        return s;
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) {
        Poly r;
        for (const auto& [m, c] : a.t_) r.t_.emplace(m, -c);
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) r.add_term(ma.times(mb), ca * cb);
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator*(const Rational& c, const Poly& p) {
        Poly r;
        if (c == 0) return r;
        for (const auto& [m, k] : p.t_) r.t_.emplace(m, c * k);
        return r;
    }
    friend Poly operator*(const Poly& p, const Rational& c) { return c * p; }

    Poly pow(int e) const {
        if (e < 0) throw std::invalid_argument("negative power");
        Poly r(1);
        for (int k = 0; k < e; ++k) r *= *this;
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Simultaneous substitution; variables absent from the map stay fixed.
    Poly substitute(const std::map<Var, Poly>& sigma) const {
        Poly r;
        for (const auto& [m, c] : t_) {
            Poly t(c);
            for (const auto& [v, e] : m.entries()) {
                auto it = sigma.find(v);
                if (it == sigma.end()) {
                    t *= Poly::var(v, e);
                } else {
                    t *= it->second.pow(e);
                }
            }
            r += t;
        }
        return r;
    }

    Poly evaluate(const std::map<Var, Rational>& point) const {
        std::map<Var, Poly> sigma;
        for (const auto& [v, c] : point) sigma.emplace(v, Poly(c));
        return substitute(sigma);
    }

    // Quotient when the divisor divides exactly (monomial long division);
    // nullopt otherwise. Sound for certification probes: divisibility of true
    // multiples is always recognised since grlex is a monomial order.
    std::optional<Poly> exact_div(const Poly& d) const {
        if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
        Poly q;
        Poly r = *this;
        while (!r.is_zero()) {
            const auto& [mr, cr] = r.leading();
            const auto& [md, cd] = d.leading();
            auto m = mr.divided_by(md);
            if (!m) return std::nullopt;
            Poly t = Poly::term(cr / cd, *m);
            q += t;
            r -= t * d;
        }
        return q;
    }

    // Rational content: gcd of numerators over lcm of denominators, signed by
    // the leading coefficient. Zero polynomial has content 0.
    Rational content() const {
        if (t_.empty()) return Rational(0);
        mpz_class num(0), den(1);
        for (const auto& [m, c] : t_) {
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        }
        Rational g(num, den);
        g.canonicalize();
        if (leading().second < 0) g = -g;
        return g;
    }

    // Scales to integer coprime coefficients with positive leading coefficient.
    Poly primitive_scaled() const {
        if (t_.empty()) return Poly();
        Rational g = content();
        Poly r;
        for (const auto& [m, c] : t_) r.t_.emplace(m, c / g);
        return r;
    }

    std::string str(bool pretty = false, int dim = 0) const {
        if (t_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        // Leading terms first.
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            const auto& [m, c] = *it;
            Rational a = c;
            if (first) {
                if (a < 0) {
                    out << "-";
                    a = -a;
                }
            } else {
                out << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            const char* dot = pretty ? "·" : "*";
            bool coeff_shown = false;
            if (m.is_one() || a != 1) {
                out << a.get_str();
                coeff_shown = true;
            }
            bool head = !coeff_shown;
            for (const auto& [v, e] : m.entries()) {
                if (!head) out << dot;
                head = false;
                out << (pretty ? v.pretty(dim) : v.key());
                if (e > 1) out << "^" << e;
            }
        }
        return out.str();
    }

  private:
    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = t_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        }
    }

    TermMap t_;
};

// --- Coordinate grading helpers ------------------------------------------

// Per-copy degree vector of a monomial over m generic elements; parameters do
// not contribute.
inline std::vector<int> coordinate_multidegree(const Monomial& m, int copies) {
    std::vector<int> d(copies, 0);
    for (const auto& [v, e] : m.entries()) {
        if (!v.is_coord()) continue;
        if (v.copy < 1 || v.copy > copies)
            throw std::out_of_range("coordinate copy index out of range");
        d[v.copy - 1] += e;
    }
    return d;
}

// Multidegree when every term agrees, nullopt otherwise. The zero polynomial
// is homogeneous of every multidegree.
inline std::optional<std::vector<int>> homogeneous_multidegree(const Poly& p, int copies) {
    std::optional<std::vector<int>> d;
    for (const auto& [m, c] : p.terms()) {
        auto md = coordinate_multidegree(m, copies);
        if (!d) {
            d = md;
        } else if (*d != md) {
            return std::nullopt;
        }
    }
    if (!d) d = std::vector<int>(copies, 0);
    return d;
}

// Splits p as sum over coordinate monomials with parameter-only coefficients.
inline std::map<Monomial, Poly, MonomialGrlexLess> collect_by_coordinates(const Poly& p) {
    std::map<Monomial, Poly, MonomialGrlexLess> out;
    for (const auto& [m, c] : p.terms()) {
        Monomial coord, par;
        for (const auto& [v, e] : m.entries()) {
            if (v.is_coord())
                coord = coord.times(Monomial::var(v, e));
            else
                par = par.times(Monomial::var(v, e));
        }
        out[coord] += Poly::term(c, par);
    }
    return out;
}

}  // namespace leib3
