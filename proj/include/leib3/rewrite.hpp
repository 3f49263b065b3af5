#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "leib3/poly.hpp"

namespace leib3 {

// Terminating rewrite rules for working modulo a polynomial relation ideal.
// Two rule shapes:
//   - substitutions v -> p, applied once each in order (p must not mention v,
//     so the variable is eliminated);
//   - monomial reductions m -> p with every monomial of p grlex-smaller than
//     m, applied to divisible terms until no rule matches.
// Both shapes strictly decrease a well-founded measure, so normal_form
// terminates.
class RewriteSystem {
  public:
    void add_substitution(const Var& v, Poly replacement) {
        if (replacement.variables().count(v))
            throw std::invalid_argument("substitution rule does not eliminate its variable");
        subs_.emplace_back(v, std::move(replacement));
    }

    void add_reduction(const Monomial& lhs, Poly rhs) {
        if (lhs.is_one()) throw std::invalid_argument("reduction of the unit monomial");
        MonomialGrlexLess less;
        for (const auto& [m, c] : rhs.terms())
            if (!less(m, lhs))
                throw std::invalid_argument("reduction right-hand side is not grlex-smaller");
        reds_.emplace_back(lhs, std::move(rhs));
    }

    bool empty() const { return subs_.empty() && reds_.empty(); }

    Poly normal_form(Poly p) const {
        for (const auto& [v, rep] : subs_) {
            if (p.variables().count(v)) p = p.substitute({{v, rep}});
        }
        if (reds_.empty()) return p;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [m, c] : p.terms()) {
                for (const auto& [lhs, rhs] : reds_) {
                    auto cof = m.divided_by(lhs);
                    if (!cof) continue;
                    const Monomial mm = m;  // copies: the erase below invalidates m, c
                    const Rational cc = c;
                    p -= Poly::term(cc, mm);
                    p += Poly::term(cc, *cof) * rhs;
                    changed = true;
                    break;
                }
                if (changed) break;  // term map mutated; restart the scan
            }
        }
        return p;
    }

    const std::vector<std::pair<Var, Poly>>& substitutions() const { return subs_; }
    const std::vector<std::pair<Monomial, Poly>>& reductions() const { return reds_; }

  private:
    std::vector<std::pair<Var, Poly>> subs_;
    std::vector<std::pair<Monomial, Poly>> reds_;
};

inline Poly normal_form(const Poly& p, const RewriteSystem& rw) { return rw.normal_form(p); }

// Q[lambda, xi1, xi2] modulo xi2 = -1 - xi1 and xi1^2 = lambda - xi1, the
// relations satisfied by the two roots of x^2 + x - lambda.
inline RewriteSystem xi_root_relations() {
    const Var lambda = Var::param("lambda");
    const Var xi1 = Var::param("xi1");
    const Var xi2 = Var::param("xi2");
    RewriteSystem rw;
    rw.add_substitution(xi2, Poly(-1) - Poly::var(xi1));
    rw.add_reduction(Monomial::var(xi1, 2), Poly::var(lambda) - Poly::var(xi1));
    return rw;
}

// Laurent relation lambda * mu = 1, making mu an exact stand-in for 1/lambda.
inline RewriteSystem lambda_mu_relation() {
    RewriteSystem rw;
    Monomial lm = Monomial::var(Var::param("lambda")).times(Monomial::var(Var::param("mu")));
    rw.add_reduction(lm, Poly(1));
    return rw;
}

}  // namespace leib3
