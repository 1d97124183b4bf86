// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"
#include "zoom/arithmetic.hpp"
#include "zoom/divisor_asymptotics.hpp"
#include "zoom/errors.hpp"
#include "zoom/lattice_zoom.hpp"
#include "zoom/pell.hpp"
#include "zoom/quadratic.hpp"
#include "zoom/y4.hpp"
#include "zoom/zoom_p1.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace zoom;

namespace {

const long double kPi2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double>;

struct Outcome {
    bool ok = true;
    std::ostringstream note;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            note << " [failed: " << what << "]";
        }
    }
};

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

int failures = 0;

void run(int id, const std::function<void(Outcome&)>& body)
{
    Outcome o;
    Stopwatch sw;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.note << " [exception: " << e.what() << "]";
    }
    if (!o.ok)
        ++failures;
    std::printf("criterion %2d: %s (%.2fs)%s\n", id, o.ok ? "PASS" : "FAIL", sw.seconds(), o.note.str().c_str());
    std::fflush(stdout);
}

std::vector<u64> one_two_five(u64 lo, u64 hi)
{
    std::vector<u64> out;
    for (u64 d = lo; d <= hi; d *= 10)
        for (u64 m : {1, 2, 5})
            if (d * m <= hi)
                out.push_back(d * m);
    return out;
}

void criterion1(Outcome& o)
{
    Stopwatch sw;
    const u64 B = 1000000;
    ZoomCount c = count_zoom_rational(ZoomWindow(1, 0, B, Ratio(2, 1)));
    const double secs = sw.seconds();
    const long double ratio = c.count / std::pow(static_cast<long double>(B), 1.5L) / (3 / kPi2);
    o.note << " count=" << c.count << " ratio=" << static_cast<double>(ratio) << " time=" << secs << "s";
    o.require(ratio >= 0.978L && ratio <= 1.022L, "ratio in [0.978, 1.022]");
    o.require(secs < 10, "runtime < 10s");
}

void criterion2(Outcome& o)
{
    Stopwatch sw;
    ZoomWindow w(Rat(7, 2), Rat(3, 2), 1000000, Ratio(1, 1));
    ZoomCount c = count_zoom_rational(w);
    const double secs = sw.seconds();
    const long double main = pagelot_main_term(w);
    const long double rel = std::fabs(static_cast<long double>(c.count) - main) / main;
    o.note << " count=" << c.count << " main=" << static_cast<double>(main) << " rel_err=" << static_cast<double>(rel)
           << " time=" << secs << "s";
    o.require(rel <= 0.005L, "relative error <= 0.5%");
    o.require(secs < 10, "runtime < 10s");
}

void criterion3(Outcome& o)
{
    Stopwatch sw;
    const u64 B = 10000000;
    ZoomCount c = count_zoom_surd(QuadraticTarget(1, 2), ZoomWindow(1, 0, B, Ratio(1, 1)));
    const double secs = sw.seconds();
    const long double expect = B * (3 / kPi2) / 2 * 2;
    const long double ratio = c.count / expect;
    o.note << " count=" << c.count << " ratio=" << static_cast<double>(ratio) << " time=" << secs << "s";
    o.require(ratio >= 0.95L && ratio <= 1.05L, "ratio in [0.95, 1.05]");
    o.require(secs < 60, "runtime < 60s");
}

void criterion4(Outcome& o)
{
    const QuadraticTarget s2(1, 2);
    const long double bound = critical_upper_bound(s2, 3);
    u64 gap_max = 0, crit_max = 0;
    for (u64 B : one_two_five(100, 1000000)) {
        const u64 g = count_zoom_surd(s2, ZoomWindow(Rat(1, 7), 0, B, Ratio(1, 2))).count;
        const u64 c = count_zoom_surd(s2, ZoomWindow(3, 0, B, Ratio(1, 2))).count;
        gap_max = std::max(gap_max, g);
        crit_max = std::max(crit_max, c);
        o.require(g == 0, "eps=1/7 count 0 at B=" + std::to_string(B));
        o.require(c <= bound, "eps=3 count within bound at B=" + std::to_string(B));
    }
    o.note << " max_gap_count=" << gap_max << " max_eps3_count=" << crit_max << " bound=" << static_cast<double>(bound);
}

void criterion5(Outcome& o)
{
    const QuadraticTarget s2(1, 2);
    auto [eps, eta] = oscillation_window(s2, 7, Rat(1, 1000));
    const auto track = tracking_sequence(s2, eps, eta, 7, 5);
    const auto avoid = avoidance_sequence(s2, eps, eta, 5);
    o.require(track.size() == 5 && avoid.size() == 5, "five values each");
    o.note << " eps=" << to_string(eps) << " eta=" << to_string(eta) << " track=";
    for (u64 B : track) {
        const u64 c = count_zoom_surd(s2, ZoomWindow(eps, eta, B, Ratio(1, 2))).count;
        o.note << B << ":" << c << " ";
        o.require(c >= 1, "tracking count >= 1 at B=" + std::to_string(B));
    }
    o.note << "avoid=";
    for (u64 B : avoid) {
        const u64 c = count_zoom_surd(s2, ZoomWindow(eps, eta, B, Ratio(1, 2))).count;
        o.note << B << ":" << c << " ";
        o.require(c == 0, "avoidance count 0 at B=" + std::to_string(B));
    }
}

void criterion6(Outcome& o)
{
    u64 checked_m = 0, solutions = 0, families_total = 0;
    for (u64 D = 2; D <= 30; ++D) {
        if (!factor(D).squarefree())
            continue;
        const QuadraticInteger unit = unit_star(D);
        const auto window = solve_pell_window(D, 30, 1000000);
        for (i64 m = -30; m <= 30; ++m) {
            if (m == 0)
                continue;
            ++checked_m;
            const auto it = window.find(m);
            const std::vector<Solution> sols = it == window.end() ? std::vector<Solution>{} : it->second;
            const std::string tag = "D=" + std::to_string(D) + " m=" + std::to_string(m);
            if (ideal_count(D, m) == 0)
                o.require(sols.empty(), "no solutions when ideal_count=0, " + tag);
            if (sols.empty())
                continue;
            solutions += sols.size();
            const auto fams = decompose_families(D, m, sols);
            families_total += fams.size();
            o.require(fams.size() <= 3 * tau(static_cast<u64>(m < 0 ? -m : m)), "family bound, " + tag);
            size_t covered = 0;
            for (const PellFamily& f : fams) {
                covered += f.members.size();
                o.require(f.generator == unit, "generator is the norm-one unit, " + tag);
                QuadraticInteger z = f.base;
                for (int k = 0; k <= 5; ++k) {
                    o.require(z.norm() == m, "closure keeps the norm, " + tag);
                    o.require(gcd(z.x, z.y) == f.gcd_xy, "constant gcd, " + tag);
                    z = z * unit;
                }
                for (const Solution& s : f.members)
                    o.require(gcd(s.first, s.second) == f.gcd_xy, "member gcd, " + tag);
            }
            o.require(covered == sols.size(), "every solution in a family, " + tag);
        }
    }
    o.note << " pairs=" << checked_m << " solutions=" << solutions << " families=" << families_total;
}

void criterion7(Outcome& o)
{
    Stopwatch sw;
    int cases = 0;
    for (int e : {1, 2, 4})
        for (Ratio r : {Ratio(2, 1), Ratio(9, 4)})
            for (u64 B : {1000ULL, 10000ULL}) {
                const u64 dec = count_zoom_y4({.eps = e, .B = B, .r = r}).total.count;
                const u64 bf = brute_force_zoom_y4(e, 0, B, r).count;
                ++cases;
                if (dec != bf)
                    o.require(false, "eps=" + std::to_string(e) + " r=" + r.str() + " B=" + std::to_string(B) + ": " +
                                         std::to_string(dec) + " vs " + std::to_string(bf));
            }
    const double secs = sw.seconds();
    o.note << " cases=" << cases << " time=" << secs << "s";
    o.require(secs < 300, "runtime < 5min");
}

// O(1) bound checked against every B in the sweep
constexpr u64 kCriticalBound = 100;

void criterion8(Outcome& o)
{
    std::vector<u64> counts;
    for (u64 B = 1000; B <= 10000000; B *= 10)
        counts.push_back(count_zoom_y4({.eps = 4, .B = B, .r = Ratio(2, 1)}).total.count);
    o.note << " counts(1e3..1e7)=";
    for (u64 c : counts)
        o.note << c << " ";
    o.note << "bound=" << kCriticalBound;
    o.require(counts[2] == counts[3], "B=1e5 and B=1e6 agree");
    for (u64 c : counts)
        o.require(c <= kCriticalBound, "count <= bound");
}

void criterion9(Outcome& o)
{
    Stopwatch sw;
    const QuadraticTarget s2(1, 2);
    const Lattice2 Z2 = Lattice2::standard();
    const u64 B = 100000000;
    const u64 c = count_lattice_zoom(s2, 1, 1, Z2, B, Ratio(3, 5));
    const double secs = sw.seconds();
    const long double main = lattice_zoom_main_term(s2, 1, 1, Z2, B, Ratio(3, 5));
    const long double ratio = c / main;
    o.note << " count=" << c << " main=" << static_cast<double>(main) << " ratio=" << static_cast<double>(ratio)
           << " time=" << secs << "s";
    o.require(ratio >= 0.8L && ratio <= 1.2L, "ratio in [0.8, 1.2]");
    o.require(secs < 60, "runtime < 60s");
}

void criterion10(Outcome& o)
{
    const long double a = c1_constant(100000), b = c1_constant(1000000);
    const long double diff = std::fabs(a - b);
    const Rat tau1(3), tau2(3, 2);
    auto ratio = [&](std::uint32_t X) {
        return sum_psi_region_approx(X, tau1, tau2) / psi_region_main_term(X, tau1, tau2);
    };
    const long double r3 = ratio(1000), r5 = ratio(100000);
    o.note << " c1(1e5)=" << static_cast<double>(a) << " c1(1e6)=" << static_cast<double>(b)
           << " diff=" << static_cast<double>(diff) << " ratio(1e3)=" << static_cast<double>(r3)
           << " ratio(1e5)=" << static_cast<double>(r5);
    o.require(diff < 1e-8L, "C1 stable to 1e-8");
    o.require(r5 >= 0.5L && r5 <= 1.5L, "ratio at X=1e5 in [0.5, 1.5]");
    o.require(std::fabs(r5 - 1) < std::fabs(r3 - 1), "closer to 1 than at X=1e3");
}

void criterion11(Outcome& o)
{
    u64 n_liouville = 0, n_samples = 0, n_points = 0;

    // convergents respect |p/q - alpha| >= xi / q^2, all cross-multiplied
    for (u64 b = 2; b <= 40; ++b)
        for (u64 a = 1; a < b; ++a) {
            if (std::gcd(a, b) != 1 || is_square(a * b))
                continue;
            QuadraticTarget t(a, b);
            const Rat xi = liouville_xi(t);
            const Int A = to_int(a), Bz = to_int(b);
            for (auto [p, q] : convergents(cf_target(t), 80)) {
                if (q > 1000000000)
                    break;
                // |p/q - alpha| >= xi/q^2  <=>  alpha outside [p/q - xi/q^2, p/q + xi/q^2]
                const Rat lo = Rat(p, q) - xi / Rat(q * q), hi = Rat(p, q) + xi / Rat(q * q);
                // alpha^2 = b/a compared against lo^2 and hi^2; lo may be negative only for tiny q
                const bool below = sgn(lo) > 0 && A * lo.get_num() * lo.get_num() >= Bz * lo.get_den() * lo.get_den();
                const bool above = A * hi.get_num() * hi.get_num() <= Bz * hi.get_den() * hi.get_den();
                ++n_liouville;
                o.require(below || above, "Liouville certificate for sqrt(" + std::to_string(b) + "/" + std::to_string(a) + ")");
            }
        }

    // parametrisation corpus
    for (int i = 0; i < 20000; ++i) {
        u64 b = oracle::uniform(2, 80), a = oracle::uniform(1, b - 1);
        if (std::gcd(a, b) != 1)
            continue;
        u64 v = oracle::uniform(1, 5000);
        const Int A = to_int(a), Bz = to_int(b);
        const double lo = v * std::sqrt(static_cast<double>(b) / a), hi = static_cast<double>(v) * b / a;
        if (hi - lo < 1)
            continue;
        u64 u = static_cast<u64>(lo) + oracle::uniform(0, static_cast<u64>(hi - lo));
        const Int U = to_int(u), V = to_int(v);
        if (!(A * U * U > Bz * V * V && A * U < Bz * V) || std::gcd(u, v) != 1)
            continue;
        ++n_samples;
        const Int d = gcd(U, Bz) * gcd(V, A) * gcd(Int(U - V), Int(Bz - A));
        o.require(mpz_divisible_p(Int(A * U * U - Bz * V * V).get_mpz_t(), d.get_mpz_t()) != 0, "d1 d2 d3 divides a u^2 - b v^2");
        const Y4Point P = psi_ab(a, b, u, v);
        o.require(A * P.x * P.y * (P.t - P.s) * (P.t - P.s) == Bz * P.s * P.t * (P.y - P.x) * (P.y - P.x), "on-curve identity");
        o.require(curve_of(P) == NodalCurve(a, b), "curve_of(psi_ab) round trip");
        const Rat dist = distance(P);
        o.require(height(P) * dist * dist >= 1, "height * distance^2 >= 1 on parametrised points");
    }

    // every point the brute-force oracle finds
    for (u64 B : {2000ULL, 20000ULL}) {
        std::vector<Y4Point> pts;
        brute_force_zoom_y4(8, 0, B, Ratio(9, 4), &pts);
        for (const Y4Point& P : pts) {
            if (P.s == P.t)
                continue;
            ++n_points;
            const Rat dist = distance(P);
            o.require(height(P) * dist * dist >= 1, "height * distance^2 >= 1 on oracle points");
        }
    }

    // h * tau = Psi, with tau and Psi from the naive oracles
    const std::uint32_t N = 10000;
    for (std::uint32_t n = 1; n <= N; ++n) {
        Rat s = 0;
        for (u64 d : oracle::divisors(n))
            s += h_function(d) * to_int(oracle::tau(n / d));
        if (s != oracle::psi(n)) {
            o.require(false, "h * tau = Psi at n=" + std::to_string(n));
            break;
        }
    }
    o.note << " convergents=" << n_liouville << " samples=" << n_samples << " oracle_points=" << n_points << " convolution_n<=" << N;
}

} // namespace

int main()
{
    run(1, criterion1);
    run(2, criterion2);
    run(3, criterion3);
    run(4, criterion4);
    run(5, criterion5);
    run(6, criterion6);
    run(7, criterion7);
    run(8, criterion8);
    run(9, criterion9);
    run(10, criterion10);
    run(11, criterion11);
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
