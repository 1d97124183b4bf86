#include "oracles.hpp"
#include "zoom/errors.hpp"
#include "zoom/zoom_p1.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace zoom;

namespace {

constexpr long double pi2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double>;

mpq_class qpow(const mpq_class& x, unsigned e)
{
    mpq_class r = 1;
    for (unsigned i = 0; i < e; ++i)
        r *= x;
    return r;
}

// target [0:1]: coprime u, v <= B with eta < B^(1/r) u/v <= eps
u64 rational_oracle(const Rat& eps, const Rat& eta, u64 B, unsigned p, unsigned q)
{
    u64 n = 0;
    mpq_class Bq = qpow(mpq_class(B), q), ep = qpow(eps, p), hp = qpow(eta, p);
    for (u64 v = 1; v <= B; ++v)
        for (u64 u = 1; u <= B; ++u) {
            if (std::gcd(u, v) != 1)
                continue;
            mpq_class d = qpow(mpq_class(u, v), p) * Bq;
            if (d <= ep && d > hp)
                ++n;
        }
    return n;
}

// sqrt(b/a) target, r in {1/2, 1, 2}, via 512-bit floating point
u64 surd_oracle(u64 a, u64 b, const Rat& eps, const Rat& eta, u64 B, Ratio r)
{
    const unsigned prec = 512;
    mpf_class alpha = sqrt(mpf_class(b, prec) / mpf_class(a, prec));
    mpf_class scale(1, prec);
    if (r == Ratio(1, 2))
        scale = mpf_class(1, prec) / (mpf_class(B, prec) * mpf_class(B, prec));
    else if (r == Ratio(1, 1))
        scale = mpf_class(1, prec) / mpf_class(B, prec);
    else if (r == Ratio(2, 1))
        scale = mpf_class(1, prec) / sqrt(mpf_class(B, prec));
    else
        throw std::logic_error("oracle supports r in {1/2, 1, 2}");
    mpf_class hi = mpf_class(eps, prec) * scale, lo = mpf_class(eta, prec) * scale;
    const double al = std::sqrt(static_cast<double>(b) / a), win = hi.get_d();
    u64 n = 0;
    for (u64 v = 1; v <= B; ++v) {
        const double c = al * v, w = win * v + 2;
        for (i64 u = std::max<i64>(1, static_cast<i64>(c - w)); u <= static_cast<i64>(c + w) && static_cast<u64>(u) <= B; ++u) {
            if (std::gcd(static_cast<u64>(u), v) != 1)
                continue;
            mpf_class d = abs(mpf_class(u, prec) / mpf_class(v, prec) - alpha);
            if (d <= hi && d > lo)
                ++n;
        }
    }
    return n;
}

} // namespace

TEST_CASE("window validation")
{
    CHECK_THROWS_AS(ZoomWindow(0, 0, 10, Ratio(1, 1)), InvalidArgument);
    CHECK_THROWS_AS(ZoomWindow(1, 1, 10, Ratio(1, 1)), InvalidArgument);
    CHECK_THROWS_AS(ZoomWindow(1, 0, 0, Ratio(1, 1)), InvalidArgument);
    CHECK_THROWS_AS(ZoomWindow(1, -1, 10, Ratio(1, 1)), InvalidArgument);
}

TEST_CASE("rational target examples")
{
    CHECK(count_zoom_rational(ZoomWindow(Rat(5, 2), 0, 10, Ratio(1, 1))).count == 8);
    CHECK(count_zoom_rational(ZoomWindow(Rat(1, 2), 0, 1, Ratio(1, 1))).count == 0);
    ZoomWindow w(1, 0, 1000000, Ratio(2, 1));
    CHECK(pagelot_main_term(w) == doctest::Approx(3 / pi2 * 1e9).epsilon(1e-12));
    CHECK(pagelot_main_term(ZoomWindow(Rat(1, 2), 0, 1000, Ratio(1, 1))) == 0);
    CHECK(pagelot_main_term(ZoomWindow(3, 2, 100000, Ratio(1, 1))) == doctest::Approx(100000.0 / 3).epsilon(1e-12));
    CHECK_THROWS_AS(pagelot_main_term(ZoomWindow(3, 2, 100, Ratio(1, 2))), UnsupportedFactor);
}

TEST_CASE("rational target against enumeration")
{
    for (auto [p, q] : std::vector<std::pair<unsigned, unsigned>>{{1, 1}, {2, 1}, {3, 2}, {1, 2}, {3, 1}}) {
        for (u64 B : {1ULL, 7ULL, 40ULL, 150ULL}) {
            for (auto [e, h] : std::vector<std::pair<Rat, Rat>>{{Rat(5, 2), 0}, {3, 1}, {Rat(7, 3), Rat(1, 2)}, {Rat(1, 1), 0}}) {
                ZoomWindow w(e, h, B, Ratio(p, q));
                INFO("r=" << p << "/" << q << " B=" << B << " eps=" << e.get_str() << " eta=" << h.get_str());
                CHECK(count_zoom_rational(w).count == rational_oracle(e, h, B, p, q));
            }
        }
    }
}

TEST_CASE("rational count is thread independent")
{
    ZoomWindow w(Rat(3, 2), Rat(1, 3), 20000, Ratio(3, 2));
    u64 c1 = count_zoom_rational(w, 1).count;
    CHECK(count_zoom_rational(w, 2).count == c1);
    CHECK(count_zoom_rational(w, 8).count == c1);
}

TEST_CASE("surd target examples")
{
    QuadraticTarget s2(1, 2);
    CHECK(count_zoom_surd(s2, ZoomWindow(Rat(1, 10), 0, 1000, Ratio(1, 2))).count == 0);
    CHECK(count_zoom_surd(s2, ZoomWindow(3, 0, 1, Ratio(1, 2))).count == 1);
    CHECK(subcritical_main_term(s2, ZoomWindow(Rat(1, 2), 0, 1000, Ratio(1, 1))) == doctest::Approx(3 / (2 * pi2) * 1000).epsilon(1e-12));
    CHECK_THROWS_AS(subcritical_main_term(s2, ZoomWindow(1, 0, 1000, Ratio(1, 2))), UnsupportedFactor);
}

TEST_CASE("surd target against high-precision enumeration")
{
    for (auto [a, b] : std::vector<std::pair<u64, u64>>{{1, 2}, {1, 3}, {2, 5}, {3, 7}}) {
        QuadraticTarget t(a, b);
        for (Ratio r : {Ratio(1, 2), Ratio(1, 1), Ratio(2, 1)}) {
            for (u64 B : {1ULL, 10ULL, 300ULL}) {
                for (auto [e, h] : std::vector<std::pair<Rat, Rat>>{{3, 0}, {Rat(1, 2), 0}, {Rat(9, 2), Rat(1, 3)}}) {
                    INFO(t.str() << " r=" << r.str() << " B=" << B << " eps=" << e.get_str());
                    CHECK(count_zoom_surd(t, ZoomWindow(e, h, B, r)).count == surd_oracle(a, b, e, h, B, r));
                }
            }
        }
    }
}

TEST_CASE("gap below the Liouville constant")
{
    std::vector<u64> Bs;
    for (u64 B = 1; B <= 200; ++B)
        Bs.push_back(B);
    for (u64 B = 250; B <= 100000; B = B * 3 / 2)
        Bs.push_back(B);
    Bs.push_back(100000);
    for (auto [a, b] : std::vector<std::pair<u64, u64>>{{1, 2}, {1, 3}}) {
        QuadraticTarget t(a, b);
        Rat eps = liouville_xi(t) - Rat(1, 10000);
        for (u64 B : Bs)
            REQUIRE(count_zoom_surd(t, ZoomWindow(eps, 0, B, Ratio(1, 2))).count == 0);
        CHECK(pell_window_decomposition(t, eps, 10000).empty());
    }
}

TEST_CASE("Pell window partition")
{
    CHECK(pell_window_range(QuadraticTarget(1, 2), 3) == 9);
    for (auto [a, b] : std::vector<std::pair<u64, u64>>{{1, 2}, {1, 3}}) {
        QuadraticTarget t(a, b);
        for (Rat eps : {Rat(1, 2), Rat(1), Rat(3), Rat(5)}) {
            for (u64 B : {100ULL, 1000ULL, 10000ULL}) {
                auto bins = pell_window_decomposition(t, eps, B);
                u64 s = 0;
                for (auto [m, c] : bins) {
                    s += c;
                    CHECK(static_cast<u64>(m < 0 ? -m : m) <= pell_window_range(t, eps));
                }
                CHECK(s == count_zoom_surd(t, ZoomWindow(eps, 0, B, Ratio(1, 2))).count);
            }
        }
    }
}

TEST_CASE("critical count stays under the bound")
{
    QuadraticTarget s2(1, 2);
    const long double bound = critical_upper_bound(s2, 3);
    CHECK(std::isfinite(bound));
    for (u64 B : {1000ULL, 3000ULL, 10000ULL, 30000ULL, 100000ULL, 300000ULL, 1000000ULL})
        CHECK(count_zoom_surd(s2, ZoomWindow(3, 0, B, Ratio(1, 2))).count <= bound);
}

TEST_CASE("monotone in eps and eta")
{
    QuadraticTarget t(2, 5);
    for (Ratio r : {Ratio(1, 2), Ratio(1, 1), Ratio(3, 2)}) {
        u64 prev = 0;
        for (Rat e : {Rat(1, 4), Rat(1, 2), Rat(1), Rat(2), Rat(4)}) {
            u64 c = count_zoom_surd(t, ZoomWindow(e, 0, 3000, r)).count;
            CHECK(c >= prev);
            prev = c;
        }
        prev = ~0ULL;
        for (Rat h : {Rat(0), Rat(1, 4), Rat(1, 2), Rat(1), Rat(2)}) {
            u64 c = count_zoom_surd(t, ZoomWindow(4, h, 3000, r)).count;
            CHECK(c <= prev);
            prev = c;
        }
    }
}

TEST_CASE("oscillation window, tracking and avoidance")
{
    QuadraticTarget s2(1, 2);
    auto [eps, eta] = oscillation_window(s2, 7, Rat(1, 1000));
    const long double c7 = critical_value(s2, 7);
    CHECK(to_ld(eta) < c7);
    CHECK(c7 < to_ld(eps));

    auto track = tracking_sequence(s2, eps, eta, 7, 4);
    REQUIRE(track.size() == 4);
    for (size_t i = 1; i < track.size(); ++i)
        CHECK(track[i] > track[i - 1]);
    for (u64 B : track)
        CHECK(count_zoom_surd(s2, ZoomWindow(eps, eta, B, Ratio(1, 2))).count >= 1);
    CHECK(tracking_sequence(s2, eps, eta, 7, 1).size() == 1);
    CHECK_THROWS_AS(tracking_sequence(s2, eps, eta, 1, 3), ParameterOutOfRange);

    auto avoid = avoidance_sequence(s2, eps, eta, 4);
    REQUIRE(avoid.size() == 4);
    for (u64 B : avoid)
        CHECK(count_zoom_surd(s2, ZoomWindow(eps, eta, B, Ratio(1, 2))).count == 0);
    CHECK(avoidance_sequence(s2, eps, eta, 0).empty());
}
