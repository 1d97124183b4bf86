#include "zoom/zoom_p1.hpp"
#include "zoom/arithmetic.hpp"
#include "zoom/errors.hpp"
#include "zoom/parallel.hpp"
#include "zoom/pell.hpp"
#include "surd_bound.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

namespace zoom {

using detail::SurdBound;

ZoomWindow::ZoomWindow(Rat eps, Rat eta, u64 B_, Ratio r_) : eps_outer(std::move(eps)), eps_inner(std::move(eta)), B(B_), r(r_)
{
    validate();
}

void ZoomWindow::validate() const
{
    if (sgn(eps_outer) <= 0)
        throw InvalidArgument("eps must be positive");
    if (sgn(eps_inner) < 0 || eps_inner >= eps_outer)
        throw InvalidArgument("need 0 <= eta < eps");
    if (B == 0)
        throw InvalidArgument("B must be >= 1");
}

namespace {

constexpr long double pi2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double>;

// #{lo <= x <= hi : gcd(x, v) = 1}
u64 coprime_in(u64 lo, u64 hi, u64 v)
{
    if (hi < lo)
        return 0;
    if (hi - lo < 24) {
        u64 c = 0;
        for (u64 x = lo; x <= hi; ++x)
            c += std::gcd(x, v) == 1;
        return c;
    }
    u64 c = 0;
    i64 total = 0;
    for (auto [d, mu] : signed_squarefree_divisors(factor(v))) {
        i64 k = static_cast<i64>(hi / d) - static_cast<i64>((lo - 1) / d);
        total += mu * k;
    }
    c = static_cast<u64>(total);
    return c;
}

u64 clamp_floor(long double x, u64 cap)
{
    if (!(x > 0))
        return 0;
    if (x >= static_cast<long double>(cap))
        return cap;
    return static_cast<u64>(std::floor(x));
}

// The u-intervals of the window at a given v: one on each side of alpha v.
struct SurdIntervals {
    u64 left_lo, left_hi;   // empty when hi < lo
    u64 right_lo, right_hi;
};

SurdIntervals surd_intervals(const QuadraticTarget& t, const SurdBound& outer, const SurdBound& inner, u64 B, u64 v)
{
    const long double alpha = outer.alpha();
    const long double av = alpha * static_cast<long double>(v);
    const u64 fl = detail::floor_alpha(t.a, t.b, alpha, v);
    SurdIntervals s{1, 0, 1, 0};

    // right: u in (alpha v, ...]
    if (fl + 1 <= B) {
        u64 h = clamp_floor(av + outer.scale() * v, B);
        h = std::max(h, fl);
        while (h < B && outer.le(h + 1, v))
            ++h;
        while (h > fl && !outer.le(h, v))
            --h;
        if (h > fl) {
            u64 l = fl + 1;
            if (!inner.zero()) {
                l = std::max(fl + 1, std::min(h + 1, clamp_floor(av + inner.scale() * v, B) + 1));
                while (l > fl + 1 && !inner.le(l - 1, v))
                    --l;
                while (l <= h && inner.le(l, v))
                    ++l;
            }
            s.right_lo = l;
            s.right_hi = h;
        }
    }
    // left: u in [1, alpha v)
    if (fl >= 1) {
        const u64 top = std::min(fl, B);
        u64 g = std::max<u64>(1, clamp_floor(av - outer.scale() * v, B));
        g = std::min(g, top + 1);
        while (g > 1 && outer.le(g - 1, v))
            --g;
        while (g <= top && !outer.le(g, v))
            ++g;
        if (g <= top) {
            u64 k = top;
            if (!inner.zero()) {
                long double est = av - inner.scale() * v;
                k = est < 1 ? g - 1 : std::min(top, std::max(g - 1, clamp_floor(est, B)));
                while (k < top && !inner.le(k + 1, v))
                    ++k;
                while (k >= g && inner.le(k, v))
                    --k;
            }
            s.left_lo = g;
            s.left_hi = k;
        }
    }
    return s;
}

u64 surd_v_end(const SurdBound& outer, u64 B)
{
    const long double gap = outer.alpha() - outer.scale();
    if (gap <= 0)
        return B;
    long double e = static_cast<long double>(B) / gap * (1 + 1e-12L) + 1;
    return e >= static_cast<long double>(B) ? B : static_cast<u64>(e);
}

} // namespace

ZoomCount count_zoom_rational(const ZoomWindow& w, unsigned threads)
{
    w.validate();
    const unsigned p = w.r.p, q = w.r.q;
    const Int B = to_int(w.B);
    const Int Bq = pow(B, q);
    const Int en = pow(w.eps_outer.get_num(), p), ed = pow(w.eps_outer.get_den(), p);
    const bool has_inner = sgn(w.eps_inner) > 0;
    const Int hn = pow(w.eps_inner.get_num(), p), hd = pow(w.eps_inner.get_den(), p);

    // B^(1/r) u/v <= eps needs v >= u B^(1/r)/eps, so u <= eps B^(1-1/r)
    Int u_end = iroot_floor(floor_div(en * pow(B, p), Bq * ed), p);
    if (u_end > B)
        u_end = B;
    auto block = [&](u64 lo, u64 hi) -> u64 {
        u64 c = 0;
        for (u64 u = lo; u <= hi; ++u) {
            const Int up = pow(to_int(u), p) * Bq;
            // en v^p >= ed u^p B^q
            Int vmin = iroot_ceil(ceil_div(up * ed, en), p);
            if (vmin > B)
                continue;
            u64 v_lo = std::max<u64>(1, to_u64(vmin));
            u64 v_hi = w.B;
            if (has_inner) {
                // hn v^p < hd u^p B^q
                Int lim = ceil_div(up * hd, hn) - 1;
                if (sgn(lim) < 0)
                    continue;
                Int vmax = iroot_floor(lim, p);
                if (vmax < B)
                    v_hi = to_u64(vmax);
            }
            c += coprime_in(v_lo, v_hi, u);
        }
        return c;
    };
    ZoomCount out;
    out.window = w;
    out.count = sgn(u_end) > 0 ? parallel_sum<u64>(threads, 1, to_u64(u_end), block) : 0;
    out.main_term = w.r.p >= w.r.q ? pagelot_main_term(w) : 0;
    return out;
}

long double pagelot_main_term(const ZoomWindow& w)
{
    w.validate();
    if (w.r.p < w.r.q)
        throw UnsupportedFactor("main term needs r >= 1");
    const long double B = static_cast<long double>(w.B);
    if (w.r.p > w.r.q) {
        long double e = 2 - static_cast<long double>(w.r.q) / w.r.p;
        return 3 / pi2 * to_ld(Rat(w.eps_outer - w.eps_inner)) * std::pow(B, e);
    }
    // r = 1: integral of sigma(x)/x^2 over (eta, eps], sigma a step function
    Int top = floor_div(w.eps_outer.get_num(), w.eps_outer.get_den());
    if (top > 100000000)
        throw TooLarge("eps too large for the step-function integral");
    const auto n_max = static_cast<std::uint32_t>(top.get_ui());
    const auto phi = totient_prefix(n_max);
    Rat integral = 0;
    const Rat inv_eps = 1 / w.eps_outer;
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        Rat start = std::max(Rat(n), w.eps_inner);
        if (start >= w.eps_outer)
            continue;
        integral += Rat(to_int(phi[n] - phi[n - 1])) * (1 / start - inv_eps);
    }
    return to_ld(integral) * B;
}

ZoomCount count_zoom_surd(const QuadraticTarget& t, const ZoomWindow& w, unsigned threads)
{
    w.validate();
    const SurdBound outer(t.a, t.b, w.eps_outer, w.B, w.r);
    const SurdBound inner(t.a, t.b, w.eps_inner, w.B, w.r);
    auto block = [&](u64 lo, u64 hi) -> u64 {
        u64 c = 0;
        for (u64 v = lo; v <= hi; ++v) {
            SurdIntervals s = surd_intervals(t, outer, inner, w.B, v);
            c += coprime_in(s.left_lo, s.left_hi, v);
            c += coprime_in(s.right_lo, s.right_hi, v);
        }
        return c;
    };
    ZoomCount out;
    out.window = w;
    out.count = parallel_sum<u64>(threads, 1, surd_v_end(outer, w.B), block);
    out.main_term = 2 * w.r.p > w.r.q ? subcritical_main_term(t, w) : 0;
    return out;
}

long double subcritical_main_term(const QuadraticTarget& t, const ZoomWindow& w)
{
    if (2 * w.r.p <= w.r.q)
        throw UnsupportedFactor("main term needs r > 1/2");
    const long double e = 2 - static_cast<long double>(w.r.q) / w.r.p;
    const long double sup = std::max<long double>(1, static_cast<long double>(t.b) / t.a);
    return std::pow(static_cast<long double>(w.B), e) * 3 / (pi2 * sup) * 2 * to_ld(Rat(w.eps_outer - w.eps_inner));
}

u64 pell_window_range(const QuadraticTarget& t, const Rat& eps)
{
    // floor(2 eps sqrt(ab)) + 1
    Rat s = 4 * eps * eps * Rat(to_int(t.ab()));
    return to_u64(isqrt(floor_div(s.get_num(), s.get_den()))) + 1;
}

std::map<i64, u64> pell_window_decomposition(const QuadraticTarget& t, const Rat& eps, u64 B)
{
    const ZoomWindow w(eps, 0, B, Ratio(1, 2));
    const SurdBound outer(t.a, t.b, eps, B, w.r);
    const SurdBound inner(t.a, t.b, 0, B, w.r);
    std::map<i64, u64> out;
    const u64 v_end = surd_v_end(outer, B);
    for (u64 v = 1; v <= v_end; ++v) {
        SurdIntervals s = surd_intervals(t, outer, inner, B, v);
        auto visit = [&](u64 lo, u64 hi) {
            for (u64 u = lo; u <= hi; ++u)
                if (std::gcd(u, v) == 1) {
                    i128 m = static_cast<i128>(t.a) * u * u - static_cast<i128>(t.b) * v * v;
                    ++out[static_cast<i64>(m)];
                }
        };
        visit(s.left_lo, s.left_hi);
        visit(s.right_lo, s.right_hi);
    }
    return out;
}

long double critical_upper_bound(const QuadraticTarget& t, const Rat& eps)
{
    if (sgn(eps) <= 0)
        throw InvalidArgument("eps must be positive");
    const u64 M = pell_window_range(t, eps);
    const u64 A = t.a_core();
    const long double unit = unit_star(t.core()).value();
    const long double xi = to_ld(liouville_xi(t));
    long double steps = std::floor((std::log(to_ld(eps)) - std::log(xi)) / (2 * std::log(unit))) + 1;
    steps = std::max<long double>(steps, 0);
    u64 sum = 0;
    for (u64 m = 1; m <= M; ++m)
        sum += 2 * tau(A * m);
    return 6 * static_cast<long double>(sum) * steps;
}

long double critical_value(const QuadraticTarget& t, i64 m)
{
    const long double a = static_cast<long double>(t.a);
    return std::fabs(static_cast<long double>(m)) * std::sqrt(static_cast<long double>(t.ab())) / (2 * a * a);
}

namespace {

// sign of c^2 - m^2 ab/(4a^4), i.e. of c - c_m
int compare_critical(const QuadraticTarget& t, i64 m, const Rat& c)
{
    Rat lhs = c * c * 4 * pow(to_int(t.a), 4);
    Rat rhs(to_int(static_cast<u64>(m < 0 ? -m : m)) * to_int(static_cast<u64>(m < 0 ? -m : m)) * to_int(t.ab()));
    return cmp(lhs, rhs);
}

// first primitive (u, v), u, v > 0, of a u^2 - b v^2 = m, minimal in its orbit
std::vector<Solution> primitive_bases(const QuadraticTarget& t, i64 m, const QuadraticInteger& gen, u64 v_limit)
{
    std::set<std::pair<Int, Int>> seen;
    std::vector<Solution> out;
    const Int c = to_int(m);
    for (u64 v = 1; v <= v_limit; ++v) {
        i128 n = static_cast<i128>(t.b) * v * v + m;
        if (n <= 0 || n % t.a)
            continue;
        u64 n2 = static_cast<u64>(n / t.a);
        u64 u = isqrt(n2);
        if (u * u != n2 || std::gcd(u, v) != 1)
            continue;
        Solution s{to_int(u), to_int(v)};
        for (;;) {
            Solution prev = retreat_solution(t.a, t.b, c, s, gen);
            if (sgn(prev.first) <= 0 || sgn(prev.second) <= 0)
                break;
            s = prev;
        }
        if (seen.insert({s.second, s.first}).second)
            out.push_back(s);
    }
    return out;
}

} // namespace

std::pair<Rat, Rat> oscillation_window(const QuadraticTarget& t, i64 m, const Rat& width)
{
    if (m == 0 || sgn(width) <= 0 || width >= 1)
        throw InvalidArgument("oscillation window needs m != 0 and 0 < width < 1");
    // c_m^2 = m^2 ab / (4 a^4), bracket by L/K <= c_m < (L+1)/K
    const Int K = Int(1000000);
    const Int mm = to_int(static_cast<u64>(m < 0 ? -m : m));
    Rat c2(mm * mm * to_int(t.ab()) * K * K, 4 * pow(to_int(t.a), 4));
    Int L = isqrt(floor_div(c2.get_num(), c2.get_den()));
    Rat eta = Rat(L, K) * (1 - width);
    Rat eps = Rat(L + 1, K) * (1 + width);
    eta.canonicalize();
    eps.canonicalize();
    if (compare_critical(t, m, eta) >= 0 || compare_critical(t, m, eps) <= 0)
        throw Error("oscillation window does not bracket the critical value");
    return {eps, eta};
}

std::vector<u64> tracking_sequence(const QuadraticTarget& t, const Rat& eps, const Rat& eta, i64 m, size_t n)
{
    if (m == 0 || compare_critical(t, m, eta) >= 0 || compare_critical(t, m, eps) <= 0)
        throw ParameterOutOfRange("need eta < c_m < eps for m = " + std::to_string(m));
    std::vector<u64> out;
    if (n == 0)
        return out;
    const QuadraticInteger gen = generalized_generator(t.a, t.b);
    auto bases = primitive_bases(t, m, gen, 1000000);
    if (bases.empty())
        throw NoPrimitiveSolution("no primitive solution of " + std::to_string(t.a) + "u^2-" + std::to_string(t.b) + "v^2=" + std::to_string(m));
    const Int c = to_int(m);
    Solution s = bases.front();
    while (out.size() < n) {
        if (s.first > Int("1000000000000"))
            throw Error("tracking sequence left the 64-bit range");
        const u64 u = to_u64(s.first), v = to_u64(s.second);
        // B = u is admissible once eta < |u/v - alpha| u^2 <= eps
        const ZoomWindow w(eps, eta, u, Ratio(1, 2));
        const SurdBound outer(t.a, t.b, eps, u, w.r), inner(t.a, t.b, eta, u, w.r);
        if (outer.exact(u, v) && !inner.exact(u, v)) {
            if (count_zoom_surd(t, w).count == 0)
                throw Error("tracking point not seen by the counter at B=" + std::to_string(u));
            out.push_back(u);
        }
        s = advance_solution(t.a, t.b, c, s, gen);
    }
    return out;
}

std::vector<u64> avoidance_sequence(const QuadraticTarget& t, const Rat& eps, const Rat& eta, size_t n)
{
    std::vector<u64> out;
    if (n == 0)
        return out;
    ZoomWindow(eps, eta, 1, Ratio(1, 2)).validate();
    const QuadraticInteger gen = generalized_generator(t.a, t.b);
    const long double rho = std::log(gen.value());
    const long double theta = t.alpha();
    const long double e = to_ld(eps), h = to_ld(eta);
    const i64 M = static_cast<i64>(pell_window_range(t, eps));
    const u64 v_limit = std::max<u64>(20000, 4 * to_u64(gen.y) * static_cast<u64>(M + 1));
    const long double margin = 1e-5L;

    // log B values where a family member sits in the window, reduced modulo rho;
    // members further out repeat the same arc shifted by rho
    std::vector<std::pair<long double, long double>> arcs;
    for (i64 m = -M; m <= M; ++m) {
        if (m == 0)
            continue;
        const Int c = to_int(m);
        for (Solution s : primitive_bases(t, m, gen, v_limit)) {
            while (s.second < 1000000)
                s = advance_solution(t.a, t.b, c, s, gen);
            const long double u = to_ld(s.first), v = to_ld(s.second);
            const long double X = std::fabs(static_cast<long double>(m)) / (static_cast<long double>(t.a) * v * (u + theta * v));
            long double lo = std::log(u);
            if (h > 0)
                lo = std::max(lo, 0.5L * std::log(h / X));
            const long double hi = 0.5L * std::log(e / X);
            if (hi < lo)
                continue;
            if (hi - lo + 2 * margin >= rho)
                throw NoGap("a single family covers the whole period");
            long double start = std::fmod(lo - margin, rho);
            if (start < 0)
                start += rho;
            const long double len = hi - lo + 2 * margin;
            if (start + len <= rho) {
                arcs.emplace_back(start, start + len);
            } else {
                arcs.emplace_back(start, rho);
                arcs.emplace_back(0, start + len - rho);
            }
        }
    }
    std::sort(arcs.begin(), arcs.end());
    long double best_lo = 0, best_len = rho;
    if (!arcs.empty()) {
        best_len = -1;
        std::vector<std::pair<long double, long double>> merged;
        for (auto& a : arcs) {
            if (!merged.empty() && a.first <= merged.back().second)
                merged.back().second = std::max(merged.back().second, a.second);
            else
                merged.push_back(a);
        }
        for (size_t i = 0; i < merged.size(); ++i) {
            long double g_lo = merged[i].second;
            long double g_hi = i + 1 < merged.size() ? merged[i + 1].first : merged.front().first + rho;
            if (g_hi - g_lo > best_len) {
                best_len = g_hi - g_lo;
                best_lo = g_lo;
            }
        }
    }
    if (best_len < 1e-6L * rho)
        throw NoGap("no gap wider than 1e-6 periods");
    const long double center = best_lo + best_len / 2;
    // first period with B >= 1000
    long double k = std::ceil((std::log(1000.0L) - center) / rho);
    while (out.size() < n) {
        const long double lb = center + k * rho;
        if (lb > 43)
            throw TooLarge("avoidance B beyond 64 bits");
        const u64 B = static_cast<u64>(std::llround(std::exp(lb)));
        const ZoomWindow w(eps, eta, B, Ratio(1, 2));
        if (count_zoom_surd(t, w).count != 0)
            throw NoGap("counter found a point at B=" + std::to_string(B));
        out.push_back(B);
        k += 1;
    }
    return out;
}

} // namespace zoom
