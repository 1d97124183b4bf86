#pragma once

#include "zoom/numeric.hpp"

#include <utility>
#include <vector>

namespace zoom {

// alpha = sqrt(b/a) with gcd(a,b) = 1, a < b and b/a not a square.
struct QuadraticTarget {
    u64 a = 1;
    u64 b = 2;

    QuadraticTarget() = default;
    QuadraticTarget(u64 a_, u64 b_);

    u64 ab() const { return a * b; }
    // a = A'·a'^2, b = B'·b'^2 with A', B' squarefree
    u64 a_core() const;
    u64 b_core() const;
    u64 a_square() const;
    u64 b_square() const;
    // A'B', the squarefree discriminant core
    u64 core() const { return a_core() * b_core(); }
    long double alpha() const;
    std::string str() const;
};

struct ContinuedFraction {
    Int a0;
    std::vector<Int> period;

    // k-th partial quotient, k = 0 gives a0
    const Int& term(size_t k) const { return k == 0 ? a0 : period[(k - 1) % period.size()]; }
    Int max_quotient() const;
};

ContinuedFraction cf_sqrt(u64 d);
// expansion of sqrt(b/a); always purely periodic after a0
ContinuedFraction cf_target(const QuadraticTarget& t);

std::vector<std::pair<Int, Int>> convergents(const ContinuedFraction& cf, size_t n);

Rat liouville_xi(const QuadraticTarget& t);
u64 partial_quotient_bound(const QuadraticTarget& t);

struct Enclosure {
    Rat lo;
    Rat hi;
    long double approx() const { return (to_ld(lo) + to_ld(hi)) / 2; }
};

// star discrepancy of {k alpha}, k = 1..N
Enclosure empirical_discrepancy(const QuadraticTarget& t, u64 N);
long double discrepancy_upper_bound(u64 N, u64 M);

} // namespace zoom
