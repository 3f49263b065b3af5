#pragma once

#include <stdexcept>
#include <string>
#include <tuple>

namespace leib3 {

enum class VarKind { Parameter, Coordinate };

// A polynomial indeterminate: either a named parameter (lambda, mu, alpha1, ...)
// or the coordinate function x_{r,i} of the i-th basis coordinate of the r-th
// generic element. Copy and basis indices are 1-based throughout.
struct Var {
    VarKind kind = VarKind::Parameter;
    std::string name;  // parameters only
    int copy = 0;      // coordinates only, r >= 1
    int index = 0;     // coordinates only, i >= 1

    static Var param(std::string n) {
        if (n.empty()) throw std::invalid_argument("empty parameter name");
        Var v;
        v.kind = VarKind::Parameter;
        v.name = std::move(n);
        return v;
    }

    static Var coord(int r, int i) {
        if (r < 1 || i < 1) throw std::invalid_argument("coordinate indices are 1-based");
        Var v;
        v.kind = VarKind::Coordinate;
        v.copy = r;
        v.index = i;
        return v;
    }

    bool is_param() const { return kind == VarKind::Parameter; }
    bool is_coord() const { return kind == VarKind::Coordinate; }

    // Serialized name: parameters keep their name, coordinates are x_<r>_<i>.
    std::string key() const {
        if (is_param()) return name;
        return "x_" + std::to_string(copy) + "_" + std::to_string(index);
    }

    // Shorthand used in reports when the algebra is 3-dimensional:
    // x_r, y_r, z_r for coordinate indices 1, 2, 3.
    std::string pretty(int dim) const {
        if (is_param()) return name;
        if (dim == 3 && index >= 1 && index <= 3) {
            static const char* letter[] = {"x", "y", "z"};
            return std::string(letter[index - 1]) + "_" + std::to_string(copy);
        }
        return key();
    }

    friend bool operator==(const Var& a, const Var& b) {
        if (a.kind != b.kind) return false;
        if (a.is_param()) return a.name == b.name;
        return a.copy == b.copy && a.index == b.index;
    }
    friend bool operator!=(const Var& a, const Var& b) { return !(a == b); }

    // Global order: parameters before coordinates; parameters by (length, name)
    // so alpha2 < alpha10; coordinates by (copy, index).
    friend bool operator<(const Var& a, const Var& b) {
        if (a.kind != b.kind) return a.is_param();
        if (a.is_param())
            return std::make_tuple(a.name.size(), a.name) < std::make_tuple(b.name.size(), b.name);
        return std::tie(a.copy, a.index) < std::tie(b.copy, b.index);
    }
};

}  // namespace leib3
