#include "zoom/y4.hpp"

#include "surd_bound.hpp"
#include "zoom/arithmetic.hpp"
#include "zoom/divisor_asymptotics.hpp"
#include "zoom/errors.hpp"
#include "zoom/parallel.hpp"

#include <cmath>
#include <numeric>

namespace zoom {

namespace {

void normalize_pair(Int& p, Int& q)
{
    if (p == 0 && q == 0)
        throw InvalidArgument("[0:0] is not a point");
    Int g = gcd(p, q);
    p /= g;
    q /= g;
    if (p < 0 || (p == 0 && q < 0)) {
        p = -p;
        q = -q;
    }
}

Rat rpow(const Rat& x, unsigned e)
{
    Rat r(pow(x.get_num(), e), pow(x.get_den(), e));
    r.canonicalize();
    return r;
}

// eta < B^(1/r) d <= eps, i.e. d^p B^q against eps^p, eta^p
struct ScaledWindow {
    Rat outer_p, inner_p;
    Int Bq;
    unsigned p;
    bool has_inner;

    ScaledWindow(const Rat& eps, const Rat& eta, u64 B, Ratio r)
        : outer_p(rpow(eps, r.p)), inner_p(rpow(eta, r.p)), Bq(pow(to_int(B), r.q)), p(r.p), has_inner(sgn(eta) > 0)
    {
    }

    bool contains(const Rat& d) const
    {
        Rat v = rpow(d, p) * Bq;
        if (v > outer_p)
            return false;
        return !has_inner || v > inner_p;
    }
};

void check_factor(Ratio r)
{
    if (r.p < 2 * r.q)
        throw UnsupportedFactor("the Y4 counter needs r >= 2");
}

u128 gcd128(u128 x, u128 y)
{
    while (y) {
        u128 r = x % y;
        x = y;
        y = r;
    }
    return x;
}

u64 count_on_curve(const NodalCurve& c, const Rat& eps1, const Rat& eps2, u64 B, Ratio r,
    const std::optional<std::pair<Rat, Rat>>& taus)
{
    if (sgn(eps1) <= 0 || B == 0)
        return 0;
    const u64 a = c.a, b = c.b;
    const ScaledWindow win(eps1, eps2, B, r);
    const long double alpha = std::sqrt(static_cast<long double>(b) / a);
    const long double rho = to_ld(eps1) * std::pow(static_cast<long double>(B), -static_cast<long double>(r.q) / r.p);
    const long double step = 0.5L * (alpha - 1) * rho;
    // height >= t^2 with t = ua(u-v)/g and g <= gcd(v,a)^2 gcd(u,b) gcd(u-v,b-a) <= a^2 b (b-a)
    const long double v4 = static_cast<long double>(B) * a * a * a * b * static_cast<long double>(b - a) * (b - a) / ((alpha - 1) * (alpha - 1));
    const u64 v_end = static_cast<u64>(std::pow(v4, 0.25L) * 1.01L) + 2;
    const Int Bz = to_int(B);
    const u64 sqrtB = isqrt(B);

    u64 n = 0;
    const long double t_coef = a * alpha * (alpha - 1) / (static_cast<long double>(b) * (b - a));
    for (u64 v = 1; v <= v_end; ++v) {
        // same t^2 <= B bound with the gcd(v, a) factor known: skips most v without touching u
        const long double g = static_cast<long double>(std::gcd(v, a));
        if (t_coef * v * v / (g * g) > sqrtB * (1 + 1e-9L) + 1)
            continue;
        const u64 f = detail::floor_alpha(a, b, alpha, v);
        const long double u_hi = alpha * v + step * v * (1 + 1e-9L) + 1e-6L;
        for (u64 u = f + 1; static_cast<long double>(u) <= u_hi; ++u) {
            if (static_cast<u128>(a) * u >= static_cast<u128>(b) * v)
                break;
            if (std::gcd(u, v) != 1)
                continue;
            if (taus) {
                Rat lam(to_int(u), to_int(v));
                if (lam < taus->second || lam > taus->first)
                    continue;
            }
            // height >= t^2 with [s:t] = [v(bv-au) : ua(u-v)] reduced; cheap reject before the exact checks
            const u128 s0 = static_cast<u128>(v) * (static_cast<u128>(b) * v - static_cast<u128>(a) * u);
            const u128 t0 = static_cast<u128>(u) * a * (u - v);
            if (t0 / gcd128(s0, t0) > sqrtB)
                continue;
            if (!win.contains(curve_distance(c, u, v)))
                continue;
            if (curve_height(c, u, v) <= Bz)
                ++n;
        }
    }
    return n;
}

u64 curve_cutoff(const Rat& eps, u64 B, Ratio r, const std::optional<Rat>& cutoff_eta)
{
    if (r.p == 2 * r.q)
        return to_u64(floor_div(Int(eps.get_num() * eps.get_num()), Int(eps.get_den() * eps.get_den())));
    if (cutoff_eta) {
        Rat e = *cutoff_eta * (Rat(1) - Rat(2 * r.q, r.p));
        e.canonicalize();
        if (sgn(e) <= 0)
            return 1;
        if (!e.get_num().fits_ulong_p() || !e.get_den().fits_ulong_p())
            throw InvalidArgument("cutoff exponent too large");
        return to_u64(iroot_floor(pow(to_int(B), e.get_num().get_ui()), e.get_den().get_ui()));
    }
    // b <= eps^2 B^(1 - 2/r)
    const unsigned p = r.p;
    Int num = pow(eps.get_num(), 2 * p) * pow(to_int(B), r.p - 2 * r.q);
    Int den = pow(eps.get_den(), 2 * p);
    return to_u64(iroot_floor(floor_div(num, den), p));
}

} // namespace

Y4Point::Y4Point(Int x_, Int y_, Int s_, Int t_) : x(std::move(x_)), y(std::move(y_)), s(std::move(s_)), t(std::move(t_))
{
    normalize_pair(x, y);
    normalize_pair(s, t);
}

std::string Y4Point::str() const
{
    return "[" + x.get_str() + ":" + y.get_str() + "]x[" + s.get_str() + ":" + t.get_str() + "]";
}

Int height(const Y4Point& P)
{
    if (P.x == 0 || P.y == 0 || P.s == 0 || P.t == 0)
        throw OnBoundary("height needs all coordinates nonzero");
    Int x = abs(P.x), y = abs(P.y), s = abs(P.s), t = abs(P.t);
    Int st = s * t, xy = x * y;
    Int m = std::max({Int(x * x * st), Int(y * y * st), Int(t * t * xy), Int(s * s * xy)});
    Int g = gcd(x, s) * gcd(x, t) * gcd(y, s) * gcd(y, t);
    if (m % g != 0)
        throw Error("height: gcd product does not divide the leading monomial");
    return m / g;
}

Rat distance(const Y4Point& P)
{
    if (P.x == 0 || P.s == 0)
        throw OnBoundary("distance needs x, s nonzero");
    Rat w = Rat(P.y, P.x) - 1, z = Rat(P.t, P.s) - 1;
    w.canonicalize();
    z.canonicalize();
    return std::max(Rat(abs(w)), Rat(abs(z)));
}

bool in_region_r(const Y4Point& P)
{
    if (P.x == 0 || P.s == 0)
        return false;
    Rat w(P.y, P.x), z(P.t, P.s);
    w.canonicalize();
    z.canonicalize();
    return w > 1 && z > w;
}

NodalCurve::NodalCurve(u64 a_, u64 b_) : a(a_), b(b_)
{
    if (a == 0 || b == 0)
        throw InvalidArgument("curve parameters must be positive");
    if (a == b)
        throw DegenerateCurve("a = b gives a reducible curve");
    if (std::gcd(a, b) != 1)
        throw InvalidArgument("curve parameters must be coprime");
    if (a > b)
        throw InvalidArgument("need a < b");
}

bool NodalCurve::square_pair() const
{
    return is_square(a) && is_square(b);
}

bool on_curve(const NodalCurve& c, const Y4Point& P)
{
    Int ts = P.t - P.s, yx = P.y - P.x;
    return to_int(c.a) * P.x * P.y * ts * ts == to_int(c.b) * P.s * P.t * yx * yx;
}

NodalCurve curve_of(const Y4Point& P)
{
    if (P.x == 0 || P.s == 0)
        throw OffRegion("point at infinity");
    Rat w(P.y, P.x), z(P.t, P.s);
    w.canonicalize();
    z.canonicalize();
    Rat w1 = w - 1, z1 = z - 1;
    if (sgn(w1) <= 0 || sgn(z1) <= 0)
        throw OffRegion("shifted coordinates must be positive");
    Rat ratio = z1 * z1 * w / (w1 * w1 * z);
    ratio.canonicalize();
    if (ratio == 1)
        throw DegenerateCurve("point lies on z = w");
    if (ratio < 1)
        throw OffRegion("z < w");
    if (!ratio.get_num().fits_ulong_p() || !ratio.get_den().fits_ulong_p())
        throw OutOfRange("curve parameters overflow 64 bits");
    return NodalCurve(ratio.get_den().get_ui(), ratio.get_num().get_ui());
}

Y4Point psi_ab(u64 a, u64 b, u64 u, u64 v)
{
    NodalCurve c(a, b);
    if (u == 0 || v == 0 || std::gcd(u, v) != 1)
        throw InvalidArgument("(u, v) must be coprime positive");
    if (detail::side(a, b, u, v) <= 0 || static_cast<u128>(a) * u >= static_cast<u128>(b) * v)
        throw OutOfRange("u/v outside (sqrt(b/a), b/a)");
    const Int A = to_int(a), B = to_int(b), U = to_int(u), V = to_int(v);
    const Int d = gcd(U, B) * gcd(V, A) * gcd(Int(U - V), Int(B - A));
    const Int m = B * V - U * A;
    // d always divides both pairs but need not be their full gcd (a = 1, b = 4, u = 10, v = 3
    // leaves a 2 in [x:y]); the constructor strips whatever is left, pair by pair
    return Y4Point(U * m / d, B * V * (U - V) / d, V * m / d, U * A * (U - V) / d);
}

Rat curve_distance(const NodalCurve& c, u64 u, u64 v)
{
    const Int A = to_int(c.a), B = to_int(c.b), U = to_int(u), V = to_int(v);
    Rat d(A * U * U - B * V * V, V * (B * V - A * U));
    d.canonicalize();
    return d;
}

Int curve_height(const NodalCurve& c, u64 u, u64 v)
{
    // b (ua(u-v))^2 / (d1 d2 d3)^2 is only an upper bound once the pairs share more than d1 d2 d3
    return height(psi_ab(c.a, c.b, u, v));
}

u64 count_E(const NodalCurve& c, const Rat& eps1, const Rat& eps2, u64 B, Ratio r)
{
    return count_on_curve(c, eps1, eps2, B, r, std::nullopt);
}

Y4Count count_zoom_y4(const Y4Query& q)
{
    check_factor(q.r);
    Rat outer = q.eps, inner = q.eta;
    std::optional<std::pair<Rat, Rat>> taus;
    if (q.region) {
        const RegionW& W = *q.region;
        if (sgn(W.tau2) <= 0 || W.tau1 <= W.tau2)
            throw InvalidArgument("need 0 < tau2 < tau1");
        outer = W.eps1;
        inner = W.eps2;
        taus = std::make_pair(W.tau1, W.tau2);
    }
    if (q.cutoff_eta && sgn(*q.cutoff_eta) <= 0)
        throw ParameterOutOfRange("cutoff eta must be positive");

    Y4Count out;
    out.total.window = ZoomWindow(outer, inner, q.B, q.r);
    out.b_max = curve_cutoff(outer, q.B, q.r, q.cutoff_eta);

    std::vector<NodalCurve> curves;
    for (u64 b = 2; b <= out.b_max; ++b)
        for (u64 a = 1; a < b; ++a) {
            if (std::gcd(a, b) != 1)
                continue;
            if (taus) {
                Rat ba(to_int(b), to_int(a));
                if (ba <= taus->second * taus->second || ba >= taus->first * taus->first)
                    continue;
            }
            curves.emplace_back(a, b);
        }
    out.curves = curves.size();

    std::vector<u64> counts(curves.size(), 0);
    if (!curves.empty())
        parallel_for(resolve_threads(q.threads), 0, curves.size() - 1,
            [&](u64 i) { counts[i] = count_on_curve(curves[i], outer, inner, q.B, q.r, taus); });
    for (size_t i = 0; i < curves.size(); ++i) {
        out.total.count += counts[i];
        if (counts[i])
            out.per_curve[{curves[i].a, curves[i].b}] = counts[i];
    }

    if (q.region && q.cutoff_eta && q.r.p * 55 < 144 * q.r.q && q.r.p > 2 * q.r.q && *q.cutoff_eta < Rat(1, 35))
        out.total.main_term = lower_bound_main_term(q.r, *q.cutoff_eta, *q.region, 1000000, q.B);
    return out;
}

ZoomCount brute_force_zoom_y4(const Rat& eps, const Rat& eta, u64 B, Ratio r, std::vector<Y4Point>* points)
{
    check_factor(r);
    ZoomCount out;
    out.window = ZoomWindow(eps, eta, B, r);
    if (B > kBruteForceLimit)
        throw TooLarge("brute-force oracle is limited to B <= 100000");

    const ScaledWindow win(eps, eta, B, r);
    const Int Bz = to_int(B);
    // in R the height is t^2 x' y' with x' = x / gcd(x, st), y' = y / gcd(y, st)
    for (u64 t = 2; t * t <= B; ++t) {
        for (u64 s = t - 1; s >= 1; --s) {
            Rat dz(to_int(t - s), to_int(s));
            if (rpow(dz, r.p) * win.Bq > win.outer_p)
                break;
            if (std::gcd(s, t) != 1)
                continue;
            const u64 N = s * t;
            const std::vector<u64> divs = divisors(factor(N));
            const u64 Y = B / (t * t);
            for (u64 xp = 1; xp <= Y; ++xp) {
                std::vector<u64> ex;
                for (u64 e : divs)
                    if (std::gcd(xp, N / e) == 1)
                        ex.push_back(xp * e);
                for (u64 yp = 1; xp * yp <= Y; ++yp) {
                    for (u64 e2 : divs) {
                        if (std::gcd(yp, N / e2) != 1)
                            continue;
                        const u64 y = yp * e2;
                        for (u64 x : ex) {
                            // x < y and y/x < t/s
                            if (y <= x || static_cast<u128>(y) * s >= static_cast<u128>(t) * x)
                                continue;
                            if (std::gcd(x, y) != 1)
                                continue;
                            Y4Point P(to_int(x), to_int(y), to_int(s), to_int(t));
                            if (height(P) > Bz)
                                continue;
                            if (!win.contains(distance(P)))
                                continue;
                            ++out.count;
                            if (points)
                                points->push_back(std::move(P));
                        }
                    }
                }
            }
        }
    }
    return out;
}

Rat approx_constant_on_curve(const NodalCurve& c)
{
    return c.square_pair() ? Rat(4) : Rat(2);
}

bool thin_set_member(const Y4Point& P)
{
    Int m = P.x * P.y * P.s * P.t;
    return sgn(m) >= 0 && is_square(m);
}

long double lower_bound_main_term(Ratio r, const Rat& eta, const RegionW& W, std::uint32_t prime_cutoff, u64 B)
{
    if (!(r.p > 2 * r.q && r.p * 55 < 144 * r.q))
        throw ParameterOutOfRange("need 2 < r < 144/55");
    if (!(sgn(eta) > 0 && eta < Rat(1, 35)))
        throw ParameterOutOfRange("need 0 < eta < 1/35");
    if (sgn(W.tau2) <= 0 || W.tau1 <= W.tau2 || W.eps1 <= W.eps2)
        throw InvalidArgument("empty region");
    const long double c2 = c2_constant(r, eta, prime_cutoff);
    const long double area = to_ld(W.eps1 - W.eps2) * (1 / to_ld(W.tau2) - 1 / to_ld(W.tau1));
    const long double lb = std::log(static_cast<long double>(B));
    const long double ex = (1 + to_ld(eta)) * (0.5L - 1 / r.as_ld());
    return c2 * area * std::pow(static_cast<long double>(B), ex) * lb * lb * lb;
}

} // namespace zoom
