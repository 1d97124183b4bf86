#include "zoom/arithmetic.hpp"
#include "zoom/errors.hpp"

#include <algorithm>

namespace zoom {

u64 Factorization::value() const
{
    u64 v = 1;
    for (auto [p, e] : terms)
        for (unsigned i = 0; i < e; ++i)
            v *= p;
    return v;
}

u64 Factorization::radical() const
{
    u64 v = 1;
    for (auto [p, e] : terms)
        v *= p;
    return v;
}

bool Factorization::squarefree() const
{
    return std::all_of(terms.begin(), terms.end(), [](const PrimePower& t) { return t.e == 1; });
}

Factorization factor(u64 n)
{
    if (n == 0)
        throw InvalidArgument("cannot factor 0");
    Factorization f;
    auto strip = [&](u64 p) {
        if (n % p)
            return;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.terms.push_back({p, e});
    };
    strip(2);
    strip(3);
    strip(5);
    // wheel mod 30
    static const unsigned gaps[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    u64 p = 7;
    for (unsigned i = 0; p <= n / p; p += gaps[i], i = (i + 1) & 7)
        strip(p);
    if (n > 1)
        f.terms.push_back({n, 1});
    return f;
}

SpfSieve::SpfSieve(std::uint32_t n) : n_(n), spf_(static_cast<size_t>(n) + 1, 0)
{
    for (std::uint32_t i = 2; i <= n; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = i;
            primes_.push_back(i);
        }
        for (std::uint32_t p : primes_) {
            u64 m = static_cast<u64>(p) * i;
            if (p > spf_[i] || m > n)
                break;
            spf_[m] = p;
        }
    }
}

Factorization SpfSieve::factor(std::uint32_t k) const
{
    Factorization f;
    while (k > 1) {
        std::uint32_t p = spf_[k];
        unsigned e = 0;
        while (k % p == 0) {
            k /= p;
            ++e;
        }
        f.terms.push_back({p, e});
    }
    return f;
}

void SpfSieve::signed_squarefree_divisors(std::uint32_t k, std::vector<std::pair<std::uint32_t, int>>& out) const
{
    out.clear();
    out.emplace_back(1, 1);
    while (k > 1) {
        std::uint32_t p = spf_[k];
        while (k % p == 0)
            k /= p;
        size_t n = out.size();
        for (size_t i = 0; i < n; ++i)
            out.emplace_back(out[i].first * p, -out[i].second);
    }
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n)
{
    std::vector<std::uint32_t> ps;
    if (n < 2)
        return ps;
    std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i])
            continue;
        ps.push_back(static_cast<std::uint32_t>(i));
        for (u64 j = i * i; j <= n; j += i)
            comp[j] = true;
    }
    return ps;
}

int mobius(const Factorization& f)
{
    if (!f.squarefree())
        return 0;
    return f.terms.size() % 2 ? -1 : 1;
}

u64 euler_phi(const Factorization& f)
{
    u64 v = 1;
    for (auto [p, e] : f.terms) {
        v *= p - 1;
        for (unsigned i = 1; i < e; ++i)
            v *= p;
    }
    return v;
}

u64 tau(const Factorization& f)
{
    u64 v = 1;
    for (auto [p, e] : f.terms)
        v *= e + 1;
    return v;
}

Rat phi_ratio(const Factorization& f)
{
    Rat v = 1;
    for (auto [p, e] : f.terms)
        v *= Rat(to_int(p - 1), to_int(p));
    v.canonicalize();
    return v;
}

std::pair<u64, u64> squarefree_decompose(const Factorization& f)
{
    u64 core = 1, sq = 1;
    for (auto [p, e] : f.terms) {
        if (e % 2)
            core *= p;
        for (unsigned i = 0; i < e / 2; ++i)
            sq *= p;
    }
    return {core, sq};
}

Rat psi1(const Factorization& f)
{
    Rat v = 1;
    for (auto [p, e] : f.terms)
        v *= Rat(to_int(p), to_int(p + 1));
    v.canonicalize();
    return v;
}

Rat psi(const Factorization& f)
{
    // Psi(p^k) = k + 1 - 2k/(p+1)
    Rat v = 1;
    for (auto [p, e] : f.terms) {
        Rat local(to_int(static_cast<u64>(e + 1) * (p + 1) - 2 * static_cast<u64>(e)), to_int(p + 1));
        local.canonicalize();
        v *= local;
    }
    return v;
}

Rat h_function(const Factorization& f)
{
    if (!f.squarefree())
        return 0;
    Rat v = 1;
    for (auto [p, e] : f.terms)
        v *= Rat(-2, to_int(p + 1));
    v.canonicalize();
    return v;
}

int mobius(u64 n) { return mobius(factor(n)); }
u64 euler_phi(u64 n) { return euler_phi(factor(n)); }
u64 tau(u64 n) { return tau(factor(n)); }
Rat phi_ratio(u64 n) { return phi_ratio(factor(n)); }
std::pair<u64, u64> squarefree_decompose(u64 n) { return squarefree_decompose(factor(n)); }
Rat psi1(u64 n) { return psi1(factor(n)); }
Rat psi(u64 n) { return psi(factor(n)); }
Rat h_function(u64 n) { return h_function(factor(n)); }

std::vector<u64> totient_prefix(std::uint32_t n)
{
    std::vector<std::uint32_t> phi(static_cast<size_t>(n) + 1);
    for (std::uint32_t i = 0; i <= n; ++i)
        phi[i] = i;
    for (std::uint32_t i = 2; i <= n; ++i)
        if (phi[i] == i)
            for (std::uint32_t j = i; j <= n; j += i)
                phi[j] -= phi[j] / i;
    std::vector<u64> prefix(static_cast<size_t>(n) + 1, 0);
    for (std::uint32_t i = 1; i <= n; ++i)
        prefix[i] = prefix[i - 1] + phi[i];
    return prefix;
}

u64 sigma_pagelot(const Rat& x)
{
    if (sgn(x) < 0)
        throw InvalidArgument("sigma of a negative number");
    Int fl = floor_div(x.get_num(), x.get_den());
    if (fl > 200000000)
        throw TooLarge("sigma argument too large: " + fl.get_str());
    auto n = static_cast<std::uint32_t>(fl.get_ui());
    return totient_prefix(n)[n];
}

std::vector<std::pair<u64, int>> signed_squarefree_divisors(const Factorization& f)
{
    std::vector<std::pair<u64, int>> out{{1, 1}};
    for (auto [p, e] : f.terms) {
        size_t n = out.size();
        for (size_t i = 0; i < n; ++i)
            out.emplace_back(out[i].first * p, -out[i].second);
    }
    return out;
}

std::vector<u64> divisors(const Factorization& f)
{
    std::vector<u64> out{1};
    for (auto [p, e] : f.terms) {
        size_t n = out.size();
        u64 pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < n; ++i)
                out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace zoom
