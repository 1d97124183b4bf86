#include "zoom/pell.hpp"
#include "zoom/arithmetic.hpp"
#include "zoom/errors.hpp"
#include "zoom/quadratic.hpp"

#include <algorithm>
#include <cmath>

namespace zoom {

QuadraticInteger::QuadraticInteger(Int x_, Int y_, u64 D_, bool half_) : x(std::move(x_)), y(std::move(y_)), D(D_), half(half_)
{
    if (!half)
        return;
    bool xo = mpz_odd_p(x.get_mpz_t()) != 0, yo = mpz_odd_p(y.get_mpz_t()) != 0;
    if (xo != yo)
        throw InvalidArgument("half-integral element needs x = y mod 2");
    if (!xo) {
        x /= 2;
        y /= 2;
        half = false;
    } else if (D % 4 != 1) {
        throw InvalidArgument("half-integral element needs D = 1 mod 4");
    }
}

Int QuadraticInteger::norm() const
{
    Int n = x * x - to_int(D) * y * y;
    return half ? Int(n / 4) : n;
}

QuadraticInteger QuadraticInteger::conj() const
{
    return {x, -y, D, half};
}

long double QuadraticInteger::value() const
{
    long double v = to_ld(x) + to_ld(y) * std::sqrt(static_cast<long double>(D));
    return half ? v / 2 : v;
}

std::string QuadraticInteger::str() const
{
    std::string s = x.get_str() + (sgn(y) < 0 ? "-" : "+") + Int(abs(y)).get_str() + "*sqrt(" + std::to_string(D) + ")";
    return half ? "(" + s + ")/2" : s;
}

QuadraticInteger operator*(const QuadraticInteger& a, const QuadraticInteger& b)
{
    if (a.D != b.D)
        throw InvalidArgument("mixing different quadratic fields");
    // work with doubled coordinates X = 2x (or x when half)
    Int X1 = a.half ? a.x : Int(2 * a.x), Y1 = a.half ? a.y : Int(2 * a.y);
    Int X2 = b.half ? b.x : Int(2 * b.x), Y2 = b.half ? b.y : Int(2 * b.y);
    Int X = (X1 * X2 + to_int(a.D) * Y1 * Y2) / 2;
    Int Y = (X1 * Y2 + X2 * Y1) / 2;
    return {X, Y, a.D, true};
}

QuadraticInteger pow(const QuadraticInteger& a, unsigned e)
{
    QuadraticInteger r(1, 0, a.D);
    QuadraticInteger base = a;
    while (e) {
        if (e & 1)
            r = r * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return r;
}

static void require_squarefree(u64 D)
{
    if (D < 2 || !factor(D).squarefree())
        throw InvalidArgument("D must be squarefree and >= 2, got " + std::to_string(D));
}

QuadraticInteger fundamental_unit(u64 D)
{
    require_squarefree(D);
    ContinuedFraction cf = cf_sqrt(D);
    auto conv = convergents(cf, cf.period.size());
    QuadraticInteger eta(conv.back().first, conv.back().second, D);
    if (D % 8 != 5)
        return eta;
    // a half unit, if any, is a cube root of eta
    const long double limit = 2 * std::cbrt(eta.value()) / std::sqrt(static_cast<long double>(D)) + 2;
    const Int d = to_int(D);
    for (Int y = 1; to_ld(y) <= limit; y += 2) {
        Int dy2 = d * y * y;
        for (int s : {-4, 4}) {
            Int n = dy2 + s;
            if (is_square(n)) {
                QuadraticInteger h(isqrt(n), y, D, true);
                if (h.half)
                    return h;
            }
        }
    }
    return eta;
}

QuadraticInteger unit_star(u64 D)
{
    QuadraticInteger e = fundamental_unit(D);
    if (e.norm() != 1)
        e = e * e;
    if (e.half)
        e = pow(e, 3);
    return e;
}

int splitting(u64 D, u64 p)
{
    if (p == 2) {
        if (D % 4 != 1)
            return 0;
        return D % 8 == 1 ? 1 : -1;
    }
    if (D % p == 0)
        return 0;
    return mpz_legendre(to_int(D % p).get_mpz_t(), to_int(p).get_mpz_t());
}

u64 ideal_count(u64 D, i64 m)
{
    require_squarefree(D);
    if (m == 0)
        throw InvalidArgument("ideal_count needs m != 0");
    u64 count = 1;
    for (auto [p, e] : factor(static_cast<u64>(m < 0 ? -m : m)).terms) {
        int s = splitting(D, p);
        if (s == 1)
            count *= e + 1;
        else if (s == -1 && e % 2)
            return 0;
    }
    return count;
}

std::vector<Solution> solve_pell(u64 D, i64 m, u64 y_bound)
{
    std::vector<Solution> out;
    const Int d = to_int(D), mm = to_int(m);
    const long double top = static_cast<long double>(D) * y_bound * static_cast<long double>(y_bound) + std::fabs(static_cast<long double>(m));
    if (top < 9e18L) {
        for (u64 y = 1; y <= y_bound; ++y) {
            i64 n = static_cast<i64>(D * y * y) + m;
            if (n <= 0)
                continue;
            u64 x = isqrt(static_cast<u64>(n));
            if (x * x == static_cast<u64>(n))
                out.emplace_back(to_int(x), to_int(y));
        }
        return out;
    }
    for (u64 y = 1; y <= y_bound; ++y) {
        Int yy = to_int(y);
        Int n = d * yy * yy + mm;
        if (sgn(n) > 0 && is_square(n))
            out.emplace_back(isqrt(n), yy);
    }
    return out;
}

std::map<i64, std::vector<Solution>> solve_pell_window(u64 D, u64 m_max, u64 y_bound)
{
    std::map<i64, std::vector<Solution>> out;
    const long double top = static_cast<long double>(D) * y_bound * static_cast<long double>(y_bound) + m_max;
    if (top >= 9e18L)
        throw TooLarge("window scan needs D*y^2 below 2^63");
    const i64 M = static_cast<i64>(m_max);
    for (u64 y = 1; y <= y_bound; ++y) {
        const i64 s = static_cast<i64>(D * y * y);
        u64 lo = s > M ? isqrt(static_cast<u64>(s - M)) : 1;
        if (lo == 0)
            lo = 1;
        u64 hi = isqrt(static_cast<u64>(s + M));
        for (u64 x = lo; x <= hi; ++x) {
            i64 m = static_cast<i64>(x * x) - s;
            if (m != 0 && m >= -M && m <= M)
                out[m].emplace_back(to_int(x), to_int(y));
        }
    }
    return out;
}

Solution minimal_positive(u64 D, const Solution& z0, const QuadraticInteger& unit)
{
    if (unit.half || unit.norm() != 1 || unit.D != D)
        throw InvalidArgument("minimal_positive needs a norm-one unit of Z[sqrt D]");
    const Int d = to_int(D);
    Int x = z0.first, y = z0.second;
    if (sgn(x) == 0 && sgn(y) == 0)
        throw InvalidArgument("zero element has no orbit");
    if (sign_surd(x, y, d) < 0) {
        x = -x;
        y = -y;
    }
    const Int &u = unit.x, &v = unit.y;
    while (!(sgn(x) > 0 && sgn(y) > 0)) {
        Int nx = x * u + d * y * v, ny = x * v + y * u;
        x = std::move(nx);
        y = std::move(ny);
    }
    for (;;) {
        Int nx = x * u - d * y * v, ny = y * u - x * v;
        if (sgn(nx) <= 0 || sgn(ny) <= 0)
            break;
        x = std::move(nx);
        y = std::move(ny);
    }
    return {x, y};
}

std::vector<PellFamily> decompose_families(u64 D, i64 m, const std::vector<Solution>& solutions)
{
    require_squarefree(D);
    if (m == 0)
        throw InvalidArgument("decompose_families needs m != 0");
    const QuadraticInteger unit = unit_star(D);
    const Int d = to_int(D), mm = to_int(m);
    auto key = [](const Solution& s) { return std::make_pair(s.second, s.first); };
    std::map<std::pair<Int, Int>, PellFamily> fams;
    auto family_of = [&](const Solution& z) -> PellFamily& {
        Solution base = minimal_positive(D, z, unit);
        auto [it, fresh] = fams.try_emplace(key(base));
        if (fresh) {
            it->second.base = QuadraticInteger(base.first, base.second, D);
            it->second.generator = unit;
            it->second.m = m;
            it->second.gcd_xy = gcd(base.first, base.second);
        }
        return it->second;
    };
    for (const Solution& s : solutions) {
        if (s.first * s.first - d * s.second * s.second != mm)
            throw NotASolution("(" + s.first.get_str() + "," + s.second.get_str() + ") does not solve x^2-" + std::to_string(D) + "y^2=" + std::to_string(m));
        family_of(s).members.push_back(s);
        family_of({s.first, -s.second}); // conjugate orbit
    }
    std::vector<PellFamily> out;
    for (auto& [k, fam] : fams) {
        const Int &bx = fam.base.x, &by = fam.base.y;
        for (const Solution& z : fam.members) {
            // z * conj(base) / m must be a norm-one element of Z[sqrt D]
            Int qx = z.first * bx - d * z.second * by, qy = z.second * bx - z.first * by;
            if (!mpz_divisible_p(qx.get_mpz_t(), mm.get_mpz_t()) || !mpz_divisible_p(qy.get_mpz_t(), mm.get_mpz_t()))
                throw InconsistentOrbit("unit quotient not integral for (" + z.first.get_str() + "," + z.second.get_str() + ")");
            qx /= mm;
            qy /= mm;
            if (qx * qx - d * qy * qy != 1)
                throw InconsistentOrbit("unit quotient has norm != 1");
            if (gcd(z.first, z.second) != fam.gcd_xy)
                throw InconsistentOrbit("coordinate gcd changes along an orbit");
        }
        out.push_back(std::move(fam));
    }
    return out;
}

QuadraticInteger generalized_generator(u64 a, u64 b)
{
    QuadraticTarget t(a, b);
    const u64 D = t.core();
    const Int step = to_int(t.a_square() * t.b_square());
    const QuadraticInteger unit = unit_star(D);
    QuadraticInteger g = unit;
    while (!mpz_divisible_p(g.y.get_mpz_t(), step.get_mpz_t()))
        g = g * unit;
    return g;
}

namespace {

struct Step {
    Int u, w, bw; // x' = x u + y bw, y' = x w + y u
};

Step step_of(u64 a, u64 b, const QuadraticInteger& gen)
{
    QuadraticTarget t(a, b);
    const Int ab2 = to_int(t.a_square() * t.b_square());
    if (gen.half || gen.D != t.core() || gen.norm() != 1 || !mpz_divisible_p(gen.y.get_mpz_t(), ab2.get_mpz_t()))
        throw InvalidArgument("generator " + gen.str() + " does not act on a x^2 - b y^2");
    return {gen.x, to_int(a) * gen.y / ab2, to_int(b) * gen.y / ab2};
}

void check_solution(u64 a, u64 b, const Int& c, const Solution& s)
{
    if (to_int(a) * s.first * s.first - to_int(b) * s.second * s.second != c)
        throw NotASolution("(" + s.first.get_str() + "," + s.second.get_str() + ") does not solve " + std::to_string(a) + "x^2-" + std::to_string(b) + "y^2=" + c.get_str());
}

} // namespace

Solution advance_solution(u64 a, u64 b, const Int& c, const Solution& sol, const QuadraticInteger& gen)
{
    check_solution(a, b, c, sol);
    Step st = step_of(a, b, gen);
    return {sol.first * st.u + sol.second * st.bw, sol.first * st.w + sol.second * st.u};
}

Solution retreat_solution(u64 a, u64 b, const Int& c, const Solution& sol, const QuadraticInteger& gen)
{
    check_solution(a, b, c, sol);
    Step st = step_of(a, b, gen);
    return {sol.first * st.u - sol.second * st.bw, sol.second * st.u - sol.first * st.w};
}

} // namespace zoom
