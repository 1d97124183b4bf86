#pragma once

#include "zoom/numeric.hpp"

#include <map>
#include <utility>
#include <vector>

namespace zoom {

// x + y sqrt(D), or (x + y sqrt(D))/2 when half is set (then x = y mod 2, D = 1 mod 4).
// Always kept reduced: half is only set when x, y are odd.
struct QuadraticInteger {
    Int x;
    Int y;
    u64 D = 2;
    bool half = false;

    QuadraticInteger() = default;
    QuadraticInteger(Int x_, Int y_, u64 D_, bool half_ = false);

    Int norm() const;
    QuadraticInteger conj() const;
    long double value() const;
    bool in_order() const { return !half; } // lies in Z + Z sqrt(D)
    bool operator==(const QuadraticInteger&) const = default;
    std::string str() const;
};

QuadraticInteger operator*(const QuadraticInteger& a, const QuadraticInteger& b);
QuadraticInteger pow(const QuadraticInteger& a, unsigned e);

using Solution = std::pair<Int, Int>;

QuadraticInteger fundamental_unit(u64 D);
QuadraticInteger unit_star(u64 D);

u64 ideal_count(u64 D, i64 m);
// 1 split, -1 inert, 0 ramified
int splitting(u64 D, u64 p);

std::vector<Solution> solve_pell(u64 D, i64 m, u64 y_bound);
// every positive solution of x^2 - D y^2 = m with 0 < |m| <= m_max, y <= y_bound, keyed by m
std::map<i64, std::vector<Solution>> solve_pell_window(u64 D, u64 m_max, u64 y_bound);

struct PellFamily {
    QuadraticInteger base;
    QuadraticInteger generator;
    i64 m = 0;
    Int gcd_xy;
    std::vector<Solution> members; // the supplied solutions lying in this orbit
};

std::vector<PellFamily> decompose_families(u64 D, i64 m, const std::vector<Solution>& solutions);
// smallest strictly positive element of the orbit of x + y sqrt(D) under +-unit_star(D)
Solution minimal_positive(u64 D, const Solution& z, const QuadraticInteger& unit);

QuadraticInteger generalized_generator(u64 a, u64 b);
Solution advance_solution(u64 a, u64 b, const Int& c, const Solution& sol, const QuadraticInteger& gen);
// inverse step: multiply by the conjugate of the generator
Solution retreat_solution(u64 a, u64 b, const Int& c, const Solution& sol, const QuadraticInteger& gen);

} // namespace zoom
