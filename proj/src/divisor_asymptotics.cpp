#include "zoom/divisor_asymptotics.hpp"

#include "zoom/arithmetic.hpp"
#include "zoom/errors.hpp"
#include "zoom/parallel.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace zoom {

namespace {

struct Slope {
    u64 num, den;

    explicit Slope(const Rat& t)
    {
        if (sgn(t) <= 0 || !t.get_num().fits_ulong_p() || !t.get_den().fits_ulong_p())
            throw InvalidArgument("slope bound must be a positive rational of moderate size");
        num = t.get_num().get_ui();
        den = t.get_den().get_ui();
    }
    u64 floor_times(u64 x) const { return static_cast<u64>(static_cast<u128>(num) * x / den); }
    u64 ceil_times(u64 x) const { return static_cast<u64>((static_cast<u128>(num) * x + den - 1) / den); }
};

void check_taus(const Rat& tau1, const Rat& tau2)
{
    if (!(tau2 > 1 && tau1 > tau2))
        throw InvalidArgument("need tau1 > tau2 > 1");
}

// x2 range for a given x1
struct Band {
    Slope t1, t2;
    u64 X;

    Band(const Rat& tau1, const Rat& tau2, u64 X_) : t1(tau1), t2(tau2), X(X_) {}
    u64 x1_max() const { return static_cast<u64>(static_cast<u128>(X) * t2.den / t2.num); }
    u64 lo(u64 x1) const { return t2.ceil_times(x1); }
    u64 hi(u64 x1) const { return std::min(X, t1.floor_times(x1)); }
};

std::vector<double> psi_doubles(std::uint32_t X, const SpfSieve& sv)
{
    std::vector<double> F(static_cast<size_t>(X) + 1, 0.0);
    if (X >= 1)
        F[1] = 1.0;
    for (std::uint32_t n = 2; n <= X; ++n) {
        // multiplicative: peel off the full power of spf
        std::uint32_t p = sv.spf(n), m = n;
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        F[n] = F[m] * ((e + 1.0) - 2.0 * e / (p + 1.0));
    }
    return F;
}

// sum over x1 in the band of w(x1) * sum_{x2, gcd(x1,x2)=1} G[x2] F[x2 - x1]
template <class W>
long double band_sum(std::uint32_t X, const Rat& tau1, const Rat& tau2, unsigned threads, const std::vector<double>& G,
    const std::vector<double>& F, const SpfSieve& sv, W weight)
{
    const Band band(tau1, tau2, X);
    const u64 x1_end = band.x1_max();
    if (x1_end == 0)
        return 0;
    return parallel_sum<long double>(resolve_threads(threads), 1, x1_end, [&](u64 b, u64 e) {
        long double acc = 0;
        std::vector<std::pair<std::uint32_t, int>> ds;
        for (u64 x1 = b; x1 <= e; ++x1) {
            const u64 lo = band.lo(x1), hi = band.hi(x1);
            if (lo > hi)
                continue;
            sv.signed_squarefree_divisors(static_cast<std::uint32_t>(x1), ds);
            double row = 0;
            for (auto [d, mu] : ds) {
                double part = 0;
                const u64 start = (lo + d - 1) / d * d;
                const double* g = G.data();
                const double* f = F.data() - x1;
                for (u64 x2 = start; x2 <= hi; x2 += d)
                    part += g[x2] * f[x2];
                row += mu * part;
            }
            acc += weight(x1) * row;
        }
        return acc;
    });
}

} // namespace

Rat c1_factor(u64 p)
{
    // (1-1/p)^3 (1 + 3/p - 1/p^2 - 6/(p(p+1)))
    const Int P = to_int(p);
    Rat one_minus(P - 1, P);
    Rat inner = Rat(1) + Rat(3, P) - Rat(1, P * P) - Rat(6, P * (P + 1));
    Rat v = one_minus * one_minus * one_minus * inner;
    v.canonicalize();
    return v;
}

long double c1_constant(std::uint32_t prime_cutoff)
{
    if (prime_cutoff < 2)
        throw InvalidArgument("prime cutoff must be >= 2");
    long double v = 1;
    for (std::uint32_t p : primes_up_to(prime_cutoff)) {
        const long double x = 1.0L / p;
        const long double om = 1 - x;
        v *= om * om * om * (1 + 3 * x - x * x - 6 * x / (p + 1.0L));
    }
    return v;
}

long double c2_constant(Ratio r, const Rat& eta, std::uint32_t prime_cutoff)
{
    if (r.p < 2 * r.q || r.p * 55 >= 144 * r.q)
        throw ParameterOutOfRange("need 2 <= r < 144/55");
    if (sgn(eta) < 0 || eta >= Rat(1, 35))
        throw ParameterOutOfRange("need 0 <= eta < 1/35");
    const long double k = to_ld(eta) * (1 - 2 / r.as_ld());
    constexpr long double pi = std::numbers::pi_v<long double>;
    return 9 / (2 * pi * pi) * k * k * k * c1_constant(prime_cutoff);
}

std::vector<Rat> psi_table(std::uint32_t X)
{
    SpfSieve sv(X);
    std::vector<Rat> out(static_cast<size_t>(X) + 1);
    if (X >= 1)
        out[1] = 1;
    for (std::uint32_t n = 2; n <= X; ++n)
        out[n] = psi(sv.factor(n));
    return out;
}

Rat sum_psi_region(std::uint32_t X, const Rat& tau1, const Rat& tau2, unsigned threads)
{
    check_taus(tau1, tau2);
    const std::vector<Rat> F = psi_table(X);
    const Band band(tau1, tau2, X);
    const u64 x1_end = band.x1_max();
    if (x1_end == 0)
        return 0;
    struct Acc {
        Rat v = 0;
        Acc& operator+=(const Acc& o)
        {
            v += o.v;
            return *this;
        }
    };
    return parallel_sum<Acc>(resolve_threads(threads), 1, x1_end, [&](u64 b, u64 e) {
        Acc acc;
        for (u64 x1 = b; x1 <= e; ++x1) {
            Rat row = 0;
            for (u64 x2 = band.lo(x1); x2 <= band.hi(x1); ++x2)
                if (std::gcd(x1, x2) == 1)
                    row += F[x2] * F[x2 - x1];
            acc.v += F[x1] * row;
        }
        return acc;
    }).v;
}

long double sum_psi_region_approx(std::uint32_t X, const Rat& tau1, const Rat& tau2, unsigned threads)
{
    check_taus(tau1, tau2);
    SpfSieve sv(X);
    const std::vector<double> F = psi_doubles(X, sv);
    return band_sum(X, tau1, tau2, threads, F, F, sv, [&](u64 x1) { return static_cast<long double>(F[x1]); });
}

long double psi_region_main_term(std::uint32_t X, const Rat& tau1, const Rat& tau2, std::uint32_t prime_cutoff)
{
    check_taus(tau1, tau2);
    const long double L = std::log(static_cast<long double>(X));
    const long double x = X;
    return c1_constant(prime_cutoff) / 2 * (1 / to_ld(tau2) - 1 / to_ld(tau1)) * x * x * L * L * L;
}

Enclosure PsiWeighted::value(unsigned bits) const
{
    Enclosure e{0, 0};
    const Int scale = Int(1) << (2 * bits);
    const Int unit = Int(1) << bits;
    for (const auto& [k, c] : coeff) {
        // isqrt(k 4^bits) / 2^bits <= sqrt(k) < (isqrt + 1) / 2^bits
        Int s = isqrt(Int(to_int(k) * scale));
        Rat lo_root(s, unit), hi_root(s + 1, unit);
        lo_root.canonicalize();
        hi_root.canonicalize();
        if (s * s == to_int(k) * scale)
            hi_root = lo_root;
        e.lo += c / hi_root;
        e.hi += c / lo_root;
    }
    return e;
}

PsiWeighted sum_psi_weighted(std::uint32_t X, const Rat& tau1, const Rat& tau2)
{
    check_taus(tau1, tau2);
    const std::vector<Rat> F = psi_table(X);
    const Band band(tau1, tau2, X);
    PsiWeighted out;
    for (u64 x1 = 1; x1 <= band.x1_max(); ++x1) {
        Rat row = 0;
        for (u64 x2 = band.lo(x1); x2 <= band.hi(x1); ++x2)
            if (std::gcd(x1, x2) == 1)
                row += F[x2] * F[x2 - x1] / to_int(x2);
        if (sgn(row) == 0)
            continue;
        auto [core, sq] = squarefree_decompose(x1);
        Rat term = F[x1] * row / to_int(sq);
        term.canonicalize();
        out.coeff[core] += term;
    }
    return out;
}

long double sum_psi_weighted_approx(std::uint32_t X, const Rat& tau1, const Rat& tau2, unsigned threads)
{
    check_taus(tau1, tau2);
    SpfSieve sv(X);
    const std::vector<double> F = psi_doubles(X, sv);
    std::vector<double> G(F.size());
    for (size_t n = 1; n < F.size(); ++n)
        G[n] = F[n] / static_cast<double>(n);
    return band_sum(X, tau1, tau2, threads, G, F, sv,
        [&](u64 x1) { return static_cast<long double>(F[x1]) / std::sqrt(static_cast<long double>(x1)); });
}

long double psi_weighted_main_term(std::uint32_t X, const Rat& tau1, const Rat& tau2, std::uint32_t prime_cutoff)
{
    check_taus(tau1, tau2);
    const long double L = std::log(static_cast<long double>(X));
    return 4 * c1_constant(prime_cutoff) * (1 / std::sqrt(to_ld(tau2)) - 1 / std::sqrt(to_ld(tau1))) *
        std::sqrt(static_cast<long double>(X)) * L * L * L;
}

} // namespace zoom
