#include "zoom/quadratic.hpp"
#include "zoom/arithmetic.hpp"
#include "zoom/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace zoom {

QuadraticTarget::QuadraticTarget(u64 a_, u64 b_) : a(a_), b(b_)
{
    if (a == 0 || b == 0)
        throw InvalidArgument("target needs positive a, b");
    if (std::gcd(a, b) != 1)
        throw InvalidArgument("target needs gcd(a,b) = 1");
    if (a >= b)
        throw InvalidArgument("target needs a < b");
    if (is_square(a) && is_square(b))
        throw PerfectSquare("b/a is a rational square");
}

u64 QuadraticTarget::a_core() const { return squarefree_decompose(a).first; }
u64 QuadraticTarget::b_core() const { return squarefree_decompose(b).first; }
u64 QuadraticTarget::a_square() const { return squarefree_decompose(a).second; }
u64 QuadraticTarget::b_square() const { return squarefree_decompose(b).second; }

long double QuadraticTarget::alpha() const
{
    return std::sqrt(static_cast<long double>(b) / static_cast<long double>(a));
}

std::string QuadraticTarget::str() const
{
    return a == 1 ? "sqrt(" + std::to_string(b) + ")" : "sqrt(" + std::to_string(b) + "/" + std::to_string(a) + ")";
}

Int ContinuedFraction::max_quotient() const
{
    Int m = 0;
    for (const Int& q : period)
        if (q > m)
            m = q;
    return m;
}

// Expansion of (P + sqrt(D))/Q with Q | D - P^2.
static ContinuedFraction expand(Int P, Int Q, const Int& D)
{
    Int root = isqrt(D);
    auto next = [&](Int& p, Int& q) {
        Int ak = floor_div(p + root, q);
        p = ak * q - p;
        q = (D - p * p) / q;
        return ak;
    };
    ContinuedFraction cf;
    cf.a0 = next(P, Q);
    std::map<std::pair<Int, Int>, size_t> seen;
    for (;;) {
        auto key = std::make_pair(P, Q);
        if (seen.count(key))
            break;
        seen.emplace(key, cf.period.size());
        cf.period.push_back(next(P, Q));
    }
    return cf;
}

ContinuedFraction cf_sqrt(u64 d)
{
    if (is_square(d))
        throw PerfectSquare(std::to_string(d) + " is a perfect square");
    return expand(0, 1, to_int(d));
}

ContinuedFraction cf_target(const QuadraticTarget& t)
{
    // sqrt(b/a) = (0 + sqrt(ab)) / a
    return expand(0, to_int(t.a), to_int(t.ab()));
}

std::vector<std::pair<Int, Int>> convergents(const ContinuedFraction& cf, size_t n)
{
    std::vector<std::pair<Int, Int>> out;
    Int p0 = 1, q0 = 0, p1 = cf.a0, q1 = 1;
    if (n)
        out.emplace_back(p1, q1);
    for (size_t k = 1; k < n; ++k) {
        const Int& ak = cf.term(k);
        Int p2 = ak * p1 + p0, q2 = ak * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        out.emplace_back(p1, q1);
    }
    return out;
}

Rat liouville_xi(const QuadraticTarget& t)
{
    // ceil(4 sqrt(ab)) = isqrt(16ab) + 1 since ab is not a square
    Int c = isqrt(Int(16) * to_int(t.ab())) + 1;
    return Rat(Int(1), c);
}

u64 partial_quotient_bound(const QuadraticTarget& t)
{
    Rat xi = liouville_xi(t);
    return to_u64(ceil_div(xi.get_den(), xi.get_num()));
}

namespace {

// floor(k sqrt(b/a)) exactly
Int floor_multiple(const QuadraticTarget& t, u64 k)
{
    Int kk = to_int(k);
    return isqrt(floor_div(kk * kk * to_int(t.b), to_int(t.a)));
}

// rational bracket of {k alpha} of width 2^-bits / a
std::pair<Rat, Rat> frac_bracket(const QuadraticTarget& t, u64 k, unsigned bits)
{
    Int kk = to_int(k);
    Int scaled = isqrt(kk * kk * to_int(t.ab()) << (2 * bits));
    Int den = to_int(t.a) << bits;
    Int fl = floor_multiple(t, k);
    Rat lo(scaled - fl * den, den), hi(scaled + 1 - fl * den, den);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

} // namespace

Enclosure empirical_discrepancy(const QuadraticTarget& t, u64 N)
{
    if (N == 0)
        throw InvalidArgument("discrepancy needs N >= 1");
    const long double alpha = t.alpha();
    std::vector<std::pair<long double, u64>> pts;
    pts.reserve(N);
    for (u64 k = 1; k <= N; ++k) {
        long double x = alpha * static_cast<long double>(k) - to_ld(floor_multiple(t, k));
        pts.emplace_back(x, k);
    }
    std::sort(pts.begin(), pts.end());
    // distinct points are at least xi/N apart, far above long double error
    for (size_t i = 1; i < pts.size(); ++i)
        if (pts[i].first - pts[i - 1].first < 1e-14L) {
            auto [lo1, hi1] = frac_bracket(t, pts[i - 1].second, 96);
            auto [lo2, hi2] = frac_bracket(t, pts[i].second, 96);
            if (hi1 > lo2 && hi2 > lo1)
                throw Error("could not separate fractional parts");
            if (lo1 > lo2)
                std::swap(pts[i - 1], pts[i]);
        }

    const long double n = static_cast<long double>(N);
    std::vector<long double> cand(N);
    long double best = 0;
    for (u64 k = 1; k <= N; ++k) {
        long double x = pts[k - 1].first;
        cand[k - 1] = std::max(static_cast<long double>(k) / n - x, x - static_cast<long double>(k - 1) / n);
        best = std::max(best, cand[k - 1]);
    }
    Enclosure out{Rat(0), Rat(0)};
    bool first = true;
    for (u64 k = 1; k <= N; ++k) {
        if (cand[k - 1] < best - 1e-12L)
            continue;
        auto [lo, hi] = frac_bracket(t, pts[k - 1].second, 96);
        Rat kn(to_int(k), to_int(N)), k1n(to_int(k - 1), to_int(N));
        Rat l = std::max(Rat(kn - hi), Rat(lo - k1n));
        Rat h = std::max(Rat(kn - lo), Rat(hi - k1n));
        if (first || l > out.lo)
            out.lo = l;
        if (first || h > out.hi)
            out.hi = h;
        first = false;
    }
    return out;
}

long double discrepancy_upper_bound(u64 N, u64 M)
{
    if (N == 0 || M == 0)
        throw InvalidArgument("discrepancy bound needs N, M >= 1");
    const long double golden = (1.0L + std::sqrt(5.0L)) / 2.0L;
    const long double m = static_cast<long double>(M);
    long double c = 1.0L / std::log(golden) + m / std::log(m + 1.0L);
    return (3.0L + c * std::log(static_cast<long double>(N))) / static_cast<long double>(N);
}

} // namespace zoom
