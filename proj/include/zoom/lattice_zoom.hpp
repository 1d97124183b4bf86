#pragma once

#include "zoom/numeric.hpp"
#include "zoom/quadratic.hpp"

#include <array>

namespace zoom {

// (lambda, mu) = (u-coordinate, v-coordinate)
struct Vec2 {
    i64 u = 0;
    i64 v = 0;
    bool operator==(const Vec2&) const = default;
    i64 sup() const { return std::max(u < 0 ? -u : u, v < 0 ? -v : v); }
};

struct Lattice2 {
    Vec2 e1;
    Vec2 e2;

    Lattice2() : e1{1, 0}, e2{0, 1} {}
    Lattice2(Vec2 a, Vec2 b);
    static Lattice2 standard() { return {}; }

    u64 det() const;
    bool contains(i64 u, i64 v) const;
};

Lattice2 reduced_basis(const Lattice2& L);
Lattice2 intersect_dZ2(const Lattice2& L, u64 d);

// Theta = rational * 6/pi^2
struct ThetaLambda {
    Rat rational;
    long double value;
};
ThetaLambda theta_lambda(const Lattice2& L);
// sum_{d <= N} mu(d)/det(L_d)
long double theta_truncated(const Lattice2& L, u64 N);

// (p + q sqrt(N)) / s, s > 0
struct SurdValue {
    Int p, q, s;
    u64 N = 2;
    long double value() const;
};

struct ThetaAlpha {
    Lattice2 basis; // sign-normalised
    SurdValue theta;
};
ThetaAlpha theta_alpha(const Lattice2& reduced, const QuadraticTarget& t);
// (16 b sqrt(det))^-1 < lambda2 - alpha mu2 < 8 alpha sqrt(det), exact
bool slope_bracket(const ThetaAlpha& ta, const QuadraticTarget& t);

u64 count_lattice_zoom(const QuadraticTarget& t, const Rat& eps, const Rat& K, const Lattice2& L, u64 B, Ratio r, unsigned threads = 1);
long double lattice_zoom_main_term(const QuadraticTarget& t, const Rat& eps, const Rat& K, const Lattice2& L, u64 B, Ratio r);

struct ConditionReport {
    bool cond0 = false;
    bool cond4 = false;
    bool cond5 = false;
    long double cond4_lhs = 0, cond4_rhs = 0;
    long double cond5_lhs = 0, cond5_rhs = 0;
};
ConditionReport check_theorem_conditions(const QuadraticTarget& t, const Rat& eps, const Rat& K, const Lattice2& L, u64 B, Ratio r);

Rat liouville_xi_theta(const QuadraticTarget& t, const Lattice2& reduced);

} // namespace zoom
