#include "zoom/lattice_zoom.hpp"
#include "zoom/arithmetic.hpp"
#include "zoom/errors.hpp"
#include "zoom/parallel.hpp"
#include "surd_bound.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace zoom {

namespace {

i128 cross(const Vec2& a, const Vec2& b)
{
    return static_cast<i128>(a.u) * b.v - static_cast<i128>(a.v) * b.u;
}

i128 dot(const Vec2& a, const Vec2& b)
{
    return static_cast<i128>(a.u) * b.u + static_cast<i128>(a.v) * b.v;
}

i64 abs64(i64 x) { return x < 0 ? -x : x; }

// rounded a/b, b > 0
i128 round_div(i128 a, i128 b)
{
    i128 q = a / b, r = a % b;
    if (r < 0) {
        q -= 1;
        r += b;
    }
    if (2 * r >= b)
        q += 1;
    return q;
}

// Hermite form: L = Z(p, 0) + Z(q, r), p, r > 0, 0 <= q < p
struct Hermite {
    i64 p, q, r;
};

Hermite hermite(const Lattice2& L)
{
    i64 y1 = L.e1.v, y2 = L.e2.v;
    // extended gcd on the v-coordinates
    i64 old_r = y1, r = y2, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i64 qq = old_r / r;
        i64 tmp = old_r - qq * r;
        old_r = r;
        r = tmp;
        tmp = old_s - qq * s;
        old_s = s;
        s = tmp;
        tmp = old_t - qq * t;
        old_t = t;
        t = tmp;
    }
    i64 g = old_r;
    if (g < 0) {
        g = -g;
        old_s = -old_s;
        old_t = -old_t;
    }
    i128 wx = static_cast<i128>(old_s) * L.e1.u + static_cast<i128>(old_t) * L.e2.u;
    i128 det = cross(L.e1, L.e2);
    i128 p = (det < 0 ? -det : det) / g;
    i128 q = wx % p;
    if (q < 0)
        q += p;
    return {static_cast<i64>(p), static_cast<i64>(q), g};
}

} // namespace

Lattice2::Lattice2(Vec2 a, Vec2 b) : e1(a), e2(b)
{
    if (cross(e1, e2) == 0)
        throw InvalidArgument("lattice basis is degenerate");
    if (std::gcd(std::gcd(abs64(e1.u), abs64(e1.v)), std::gcd(abs64(e2.u), abs64(e2.v))) != 1)
        throw InvalidArgument("lattice has no primitive point");
}

u64 Lattice2::det() const
{
    i128 d = cross(e1, e2);
    return static_cast<u64>(d < 0 ? -d : d);
}

bool Lattice2::contains(i64 u, i64 v) const
{
    // Cramer: (u, v) = m e1 + n e2
    i128 D = cross(e1, e2);
    i128 m = static_cast<i128>(u) * e2.v - static_cast<i128>(v) * e2.u;
    i128 n = static_cast<i128>(e1.u) * v - static_cast<i128>(e1.v) * u;
    return m % D == 0 && n % D == 0;
}

Lattice2 reduced_basis(const Lattice2& L)
{
    // Lagrange-Gauss with the euclidean norm
    Vec2 a = L.e1, b = L.e2;
    if (dot(a, a) > dot(b, b))
        std::swap(a, b);
    for (;;) {
        i128 mu = round_div(dot(a, b), dot(a, a));
        b = {static_cast<i64>(b.u - mu * a.u), static_cast<i64>(b.v - mu * a.v)};
        if (dot(b, b) >= dot(a, a))
            break;
        std::swap(a, b);
    }
    return {a, b};
}

Lattice2 intersect_dZ2(const Lattice2& L, u64 d)
{
    if (d == 0)
        throw InvalidArgument("d must be >= 1");
    const Hermite h = hermite(L);
    const i128 D = static_cast<i128>(d);
    auto g128 = [](i128 x, i128 y) {
        if (x < 0)
            x = -x;
        if (y < 0)
            y = -y;
        while (y) {
            i128 t = x % y;
            x = y;
            y = t;
        }
        return x;
    };
    // points (x, r j): need d | r j, gcd(p, d) | q j, then x = q j mod p and x = 0 mod d
    const i128 g = g128(h.p, D);
    const i128 j1 = D / g128(D, h.r);
    const i128 j2 = g / g128(g, h.q);
    const i128 j0 = j1 / g128(j1, j2) * j2;
    const i128 P = h.p / g * D; // lcm(p, d)
    // smallest x >= 0 with x = q j0 (mod p), x = 0 (mod d): x = d k
    i128 target = (static_cast<i128>(h.q) * j0) % h.p;
    i128 x0 = -1;
    for (i128 k = 0; k < h.p / g; ++k) {
        if ((D * k - target) % h.p == 0) {
            x0 = D * k;
            break;
        }
    }
    if (x0 < 0)
        throw Error("intersect_dZ2: no congruence solution");
    Lattice2 out;
    out.e1 = {static_cast<i64>(P), 0};
    out.e2 = {static_cast<i64>(x0), static_cast<i64>(h.r * j0)};
    return out;
}

ThetaLambda theta_lambda(const Lattice2& L)
{
    const u64 det = L.det();
    Rat r = psi1(det) / Rat(to_int(det));
    r.canonicalize();
    const long double six_pi2 = 6 / (std::numbers::pi_v<long double> * std::numbers::pi_v<long double>);
    return {r, to_ld(r) * six_pi2};
}

long double theta_truncated(const Lattice2& L, u64 N)
{
    SpfSieve sieve(static_cast<std::uint32_t>(N));
    long double s = 0;
    for (u64 d = 1; d <= N; ++d) {
        int mu = mobius(sieve.factor(static_cast<std::uint32_t>(d)));
        if (mu)
            s += mu / static_cast<long double>(intersect_dZ2(L, d).det());
    }
    return s;
}

long double SurdValue::value() const
{
    return (to_ld(p) + to_ld(q) * std::sqrt(static_cast<long double>(N))) / to_ld(s);
}

ThetaAlpha theta_alpha(const Lattice2& reduced, const QuadraticTarget& t)
{
    const Int a = to_int(t.a), b = to_int(t.b), N = to_int(t.ab());
    Vec2 e1 = reduced.e1, e2 = reduced.e2;
    // lambda2 - alpha mu2 > 0  <=>  a lambda2 - mu2 sqrt(ab) > 0
    int s2 = sign_surd(a * to_int(e2.u), Int(-to_int(e2.v)), N);
    if (s2 == 0)
        throw DegenerateSlope("lambda2 - alpha mu2 vanishes");
    if (s2 < 0)
        e2 = {-e2.u, -e2.v};
    auto theta_of = [&](const Vec2& f1, const Vec2& f2) {
        const Int l1 = to_int(f1.u), m1 = to_int(f1.v), l2 = to_int(f2.u), m2 = to_int(f2.v);
        SurdValue th{b * m1 * m2 - a * l1 * l2, l2 * m1 - l1 * m2, a * l2 * l2 - b * m2 * m2, t.ab()};
        if (sgn(th.s) < 0) {
            th.p = -th.p;
            th.q = -th.q;
            th.s = -th.s;
        }
        Int g = gcd(gcd(th.p, th.q), th.s);
        if (g > 1) {
            th.p /= g;
            th.q /= g;
            th.s /= g;
        }
        return th;
    };
    SurdValue th = theta_of(e1, e2);
    if (sign_surd(th.p, th.q, N) < 0) {
        e1 = {-e1.u, -e1.v};
        th = theta_of(e1, e2);
    }
    ThetaAlpha out;
    out.basis.e1 = e1;
    out.basis.e2 = e2;
    out.theta = th;
    return out;
}

bool slope_bracket(const ThetaAlpha& ta, const QuadraticTarget& t)
{
    // x = (a l - m sqrt(N))/a, x^2 = (a^2 l^2 + m^2 N - 2 a l m sqrt(N)) / a^2
    const Int a = to_int(t.a), b = to_int(t.b), N = to_int(t.ab()), det = to_int(ta.basis.det());
    const Int l = to_int(ta.basis.e2.u), m = to_int(ta.basis.e2.v);
    if (sign_surd(a * l, Int(-m), N) <= 0)
        return false;
    const Int c = a * a * l * l + m * m * N, d = -2 * a * l * m;
    // lower: 256 b^2 det x^2 > 1
    const Int k = 256 * b * b * det;
    bool lower = sign_surd(k * c - a * a, k * d, N) > 0;
    // upper: x^2 < 64 (b/a) det  <=>  a c + a d sqrt(N) < 64 b det a^2
    bool upper = sign_surd(64 * b * det * a * a - a * c, Int(-a * d), N) > 0;
    return lower && upper;
}

u64 count_lattice_zoom(const QuadraticTarget& t, const Rat& eps, const Rat& K, const Lattice2& L, u64 B, Ratio r, unsigned threads)
{
    if (sgn(eps) <= 0 || sgn(K) <= 0 || B == 0)
        throw InvalidArgument("lattice count needs eps, K > 0 and B >= 1");
    const Rat kb = K * Rat(to_int(B));
    const u64 V = to_u64(floor_div(kb.get_num(), kb.get_den()));
    const detail::SurdBound outer(t.a, t.b, eps, B, r);
    const long double alpha = outer.alpha(), rho = outer.scale();
    const bool thin = rho * static_cast<long double>(V) < 0.25L;

    auto visit = [&](u64 u, u64 v) -> u64 {
        return outer.le(u, v) && std::gcd(u, v) == 1 && L.contains(static_cast<i64>(u), static_cast<i64>(v));
    };
    auto block = [&](u64 lo, u64 hi) -> u64 {
        u64 c = 0;
        for (u64 v = lo; v <= hi; ++v) {
            const long double av = alpha * static_cast<long double>(v);
            if (thin) {
                // only u = floor(alpha v) + 1 can qualify
                const long double f = std::floor(av);
                const long double delta = f + 1 - av;
                if (delta > rho * static_cast<long double>(v) + 1e-9L && delta < 1 - 1e-9L)
                    continue;
            }
            const u64 fl = detail::floor_alpha(t.a, t.b, alpha, v);
            for (u64 u = fl + 1;; ++u) {
                if (!outer.le(u, v))
                    break;
                c += visit(u, v);
            }
        }
        return c;
    };
    return V ? parallel_sum<u64>(threads, 1, V, block) : 0;
}

long double lattice_zoom_main_term(const QuadraticTarget& /*t*/, const Rat& eps, const Rat& K, const Lattice2& L, u64 B, Ratio r)
{
    if (2 * r.p <= r.q)
        throw UnsupportedFactor("lattice main term needs r > 1/2");
    const long double e = 2 - static_cast<long double>(r.q) / r.p;
    const long double k = to_ld(K);
    return theta_lambda(L).value * to_ld(eps) * k * k / 2 * std::pow(static_cast<long double>(B), e);
}

ConditionReport check_theorem_conditions(const QuadraticTarget& t, const Rat& eps, const Rat& K, const Lattice2& L, u64 B, Ratio r)
{
    ConditionReport rep;
    const Rat rr = r.value();
    rep.cond0 = rr > Rat(1, 2) && rr < Rat(7, 10);
    const long double inv_r = static_cast<long double>(r.q) / r.p;
    const long double alpha = t.alpha(), e = to_ld(eps), k = to_ld(K), b = static_cast<long double>(t.b);
    const long double Bl = static_cast<long double>(B);
    const long double U = std::pow(std::pow(2.0L, 21) * 162 * alpha * alpha * e * e, -0.4L);
    rep.cond4_lhs = k * k * b;
    rep.cond4_rhs = U * std::pow(Bl, 0.8L * (inv_r - 1) - 0.6L * (2 - inv_r));
    rep.cond4 = rep.cond4_lhs <= rep.cond4_rhs;
    const long double det = static_cast<long double>(L.det());
    rep.cond5_lhs = b * det * det;
    rep.cond5_rhs = k * k * std::pow(Bl, 2 - inv_r);
    rep.cond5 = rep.cond5_lhs <= rep.cond5_rhs;
    return rep;
}

Rat liouville_xi_theta(const QuadraticTarget& t, const Lattice2& reduced)
{
    return Rat(Int(1), to_int(162 * t.b * reduced.det()));
}

} // namespace zoom
