#include "oracles.hpp"
#include "zoom/errors.hpp"
#include "zoom/quadratic.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace zoom;

namespace {

// first n partial quotients of sqrt(num/den) in 1024-bit floating point
std::vector<Int> mpf_quotients(u64 num, u64 den, size_t n)
{
    mpf_class x(0, 1024);
    x = mpf_class(num, 1024) / mpf_class(den, 1024);
    x = sqrt(x);
    std::vector<Int> out;
    for (size_t k = 0; k < n; ++k) {
        mpf_class f = floor(x);
        out.push_back(Int(f));
        x = 1 / (x - f);
    }
    return out;
}

long double naive_star_discrepancy(long double alpha, u64 N)
{
    std::vector<long double> xs;
    for (u64 k = 1; k <= N; ++k) {
        long double v = k * alpha;
        xs.push_back(v - std::floor(v));
    }
    std::sort(xs.begin(), xs.end());
    long double d = 0;
    for (u64 i = 0; i < N; ++i)
        d = std::max({d, static_cast<long double>(i + 1) / N - xs[i], xs[i] - static_cast<long double>(i) / N});
    return d;
}

} // namespace

TEST_CASE("target validation")
{
    CHECK_THROWS_AS(QuadraticTarget(1, 4), PerfectSquare);
    CHECK_THROWS_AS(QuadraticTarget(4, 9), PerfectSquare);
    CHECK_THROWS_AS(QuadraticTarget(2, 4), InvalidArgument);
    CHECK_THROWS_AS(QuadraticTarget(3, 2), InvalidArgument);
    QuadraticTarget t(2, 5);
    CHECK(t.core() == 10);
}

TEST_CASE("cf_sqrt examples")
{
    auto c2 = cf_sqrt(2);
    CHECK(c2.a0 == 1);
    CHECK(c2.period == std::vector<Int>{2});
    auto c3 = cf_sqrt(3);
    CHECK(c3.a0 == 1);
    CHECK(c3.period == std::vector<Int>{1, 2});
    CHECK_THROWS_AS(cf_sqrt(4), PerfectSquare);
}

TEST_CASE("cf against high-precision floating expansion")
{
    for (u64 d = 2; d <= 200; ++d) {
        if (oracle::is_square(Int(to_int(d))))
            continue;
        auto cf = cf_sqrt(d);
        auto ref = mpf_quotients(d, 1, 40);
        for (size_t k = 0; k < ref.size(); ++k)
            REQUIRE(cf.term(k) == ref[k]);
    }
    for (int i = 0; i < 60; ++i) {
        u64 b = oracle::uniform(2, 300), a = oracle::uniform(1, b - 1);
        if (std::gcd(a, b) != 1 || (oracle::is_square(Int(to_int(a))) && oracle::is_square(Int(to_int(b)))))
            continue;
        auto cf = cf_target(QuadraticTarget(a, b));
        auto ref = mpf_quotients(b, a, 30);
        for (size_t k = 0; k < ref.size(); ++k)
            REQUIRE(cf.term(k) == ref[k]);
    }
}

TEST_CASE("convergents")
{
    auto cv = convergents(cf_sqrt(2), 3);
    CHECK(cv == std::vector<std::pair<Int, Int>>{{1, 1}, {3, 2}, {7, 5}});
    CHECK(convergents(cf_sqrt(7), 1) == std::vector<std::pair<Int, Int>>{{2, 1}});
    CHECK(convergents(cf_sqrt(3), 2) == std::vector<std::pair<Int, Int>>{{1, 1}, {2, 1}});
    auto cf = cf_sqrt(13);
    auto c = convergents(cf, 30);
    for (size_t k = 1; k + 1 < c.size(); ++k)
        REQUIRE(c[k + 1].second > cf.term(k + 1) * c[k].second);
}

TEST_CASE("liouville certificates")
{
    CHECK(liouville_xi(QuadraticTarget(1, 2)) == Rat(1, 6));
    CHECK(liouville_xi(QuadraticTarget(1, 3)) == Rat(1, 7));
    CHECK(liouville_xi(QuadraticTarget(2, 3)) == Rat(1, 10));
    CHECK(partial_quotient_bound(QuadraticTarget(1, 2)) == 6);
    CHECK(partial_quotient_bound(QuadraticTarget(1, 3)) == 7);
    CHECK(partial_quotient_bound(QuadraticTarget(1, 5)) >= 4);

    for (auto [a, b] : std::vector<std::pair<u64, u64>>{{1, 2}, {1, 3}, {2, 3}, {2, 5}, {3, 7}, {1, 13}, {5, 11}}) {
        QuadraticTarget t(a, b);
        const Int n = liouville_xi(t).get_den();
        REQUIRE(liouville_xi(t).get_num() == 1);
        for (auto [p, q] : convergents(cf_target(t), 60)) {
            if (q > 1000000)
                break;
            // |p/q - alpha| >= 1/(n q^2), cross-multiplied
            const Int A = to_int(a), B = to_int(b), nq2 = n * q * q;
            if (A * p * p > B * q * q) {
                Int lhs = p * n * q - 1;
                REQUIRE(sgn(lhs) >= 0);
                REQUIRE(A * lhs * lhs >= B * nq2 * nq2);
            } else {
                Int lhs = p * n * q + 1;
                REQUIRE(A * lhs * lhs <= B * nq2 * nq2);
            }
        }
    }
}

TEST_CASE("partial quotients within the bound for random targets")
{
    int done = 0;
    while (done < 50) {
        u64 b = oracle::uniform(2, 200), a = oracle::uniform(1, b - 1);
        if (std::gcd(a, b) != 1 || (oracle::is_square(Int(to_int(a))) && oracle::is_square(Int(to_int(b)))))
            continue;
        ++done;
        QuadraticTarget t(a, b);
        auto cf = cf_target(t);
        CHECK(cf.max_quotient() <= to_int(partial_quotient_bound(t)));
    }
}

TEST_CASE("empirical discrepancy")
{
    QuadraticTarget s2(1, 2);
    auto e1 = empirical_discrepancy(s2, 1);
    CHECK(e1.lo > Rat(58, 100));
    CHECK(e1.hi < Rat(59, 100));
    auto e2 = empirical_discrepancy(s2, 2);
    const long double r2 = std::sqrt(2.0L) - 1;
    CHECK(to_ld(e2.lo) <= r2 + 1e-15L);
    CHECK(to_ld(e2.hi) >= r2 - 1e-15L);
    CHECK(e2.hi - e2.lo < Rat(1, 1000000));

    for (auto [a, b] : std::vector<std::pair<u64, u64>>{{1, 2}, {1, 3}, {2, 5}}) {
        QuadraticTarget t(a, b);
        const u64 M = to_u64(cf_target(t).max_quotient());
        for (u64 N : {100ULL, 1000ULL, 10000ULL}) {
            auto e = empirical_discrepancy(t, N);
            const long double ref = naive_star_discrepancy(t.alpha(), N);
            CHECK(to_ld(e.lo) <= ref + 1e-12L);
            CHECK(to_ld(e.hi) >= ref - 1e-12L);
            CHECK(e.lo > 0);
            CHECK(e.hi <= 1);
            CHECK(to_ld(e.hi) <= discrepancy_upper_bound(N, M));
        }
    }
}

TEST_CASE("discrepancy upper bound shape")
{
    CHECK(discrepancy_upper_bound(1, 1) >= 1);
    CHECK(discrepancy_upper_bound(100000, 6) > 0);
    CHECK(discrepancy_upper_bound(100000, 7) > discrepancy_upper_bound(100000, 6));
    CHECK(to_ld(empirical_discrepancy(QuadraticTarget(1, 2), 10000).hi) < discrepancy_upper_bound(10000, 2));
}
