#include "zoom/numeric.hpp"
#include "zoom/errors.hpp"

#include <cctype>
#include <cmath>
#include <numeric>

namespace zoom {

Ratio::Ratio(unsigned p_, unsigned q_) : p(p_), q(q_)
{
    if (p == 0 || q == 0)
        throw InvalidArgument("zoom factor must be positive");
    unsigned g = std::gcd(p, q);
    p /= g;
    q /= g;
}

Ratio Ratio::from(const Rat& r)
{
    if (sgn(r) <= 0)
        throw InvalidArgument("zoom factor must be positive");
    if (!r.get_num().fits_uint_p() || !r.get_den().fits_uint_p())
        throw InvalidArgument("zoom factor too large: " + r.get_str());
    return Ratio(static_cast<unsigned>(r.get_num().get_ui()), static_cast<unsigned>(r.get_den().get_ui()));
}

std::string Ratio::str() const
{
    return q == 1 ? std::to_string(p) : std::to_string(p) + "/" + std::to_string(q);
}

static bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

Rat parse_rational(std::string_view s)
{
    std::string_view body = s;
    bool neg = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        neg = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw InvalidArgument("expected a rational p/q, got '" + std::string(s) + "'");
    Rat r{Int(std::string(num)), Int(std::string(den))};
    if (r.get_den() == 0)
        throw InvalidArgument("zero denominator in '" + std::string(s) + "'");
    r.canonicalize();
    return neg ? Rat(-r) : r;
}

Ratio parse_ratio(std::string_view s)
{
    return Ratio::from(parse_rational(s));
}

std::string to_string(const Rat& r)
{
    return r.get_str();
}

long double to_ld(const Int& z)
{
    if (z.fits_slong_p())
        return static_cast<long double>(z.get_si());
    long e = 0;
    double m = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::ldexp(static_cast<long double>(m), static_cast<int>(e));
}

long double to_ld(const Rat& r)
{
    // ~70 significant bits; only the float prefilters go through here
    const Int& n = r.get_num();
    const Int& d = r.get_den();
    if (n.fits_slong_p() && d.fits_slong_p())
        return static_cast<long double>(n.get_si()) / static_cast<long double>(d.get_si());
    long k = 70 + static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)) - static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
    Int q = k >= 0 ? Int((n << k) / d) : Int((n >> -k) / d);
    return std::ldexp(to_ld(q), static_cast<int>(-k));
}

Int to_int(u64 v)
{
    Int z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return z;
}

Int to_int(i64 v)
{
    if (v >= 0)
        return to_int(static_cast<u64>(v));
    return -to_int(static_cast<u64>(-(v + 1)) + 1);
}

u64 to_u64(const Int& z)
{
    if (sgn(z) < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 64)
        throw OutOfRange("value does not fit in 64 bits: " + z.get_str());
    u64 v = 0;
    mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, z.get_mpz_t());
    return v;
}

i64 to_i64(const Int& z)
{
    if (!z.fits_slong_p())
        throw OutOfRange("value does not fit in 64 bits: " + z.get_str());
    return z.get_si();
}

u64 isqrt(u64 n)
{
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n)
        --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

Int isqrt(const Int& n)
{
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(u64 n)
{
    u64 r = isqrt(n);
    return r * r == n;
}

bool is_square(const Int& n)
{
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int iroot_floor(const Int& n, unsigned k)
{
    Int r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

Int iroot_ceil(const Int& n, unsigned k)
{
    Int r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) == 0)
        r += 1;
    return r;
}

Int ceil_div(const Int& a, const Int& b)
{
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int floor_div(const Int& a, const Int& b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int pow(const Int& base, unsigned e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

int sign_surd(const Int& c, const Int& d, const Int& N)
{
    int sc = sgn(c);
    int sd = sgn(d);
    if (sgn(N) == 0 || sd == 0)
        return sc;
    if (sc == 0)
        return sd;
    if (sc == sd)
        return sc;
    // opposite signs: compare c^2 with d^2 N
    int cmpv = cmp(Int(c * c), Int(d * d * N));
    return cmpv == 0 ? 0 : (cmpv > 0 ? sc : sd);
}

Surd mul(const Surd& a, const Surd& b, const Int& N)
{
    return {a.x * b.x + N * a.y * b.y, a.x * b.y + a.y * b.x};
}

Surd pow(const Surd& a, unsigned e, const Int& N)
{
    Surd r{1, 0};
    Surd base = a;
    while (e) {
        if (e & 1)
            r = mul(r, base, N);
        e >>= 1;
        if (e)
            base = mul(base, base, N);
    }
    return r;
}

} // namespace zoom

#include "zoom/parallel.hpp"

#include <cstdlib>

namespace zoom {

unsigned resolve_threads(unsigned requested)
{
    if (const char* env = std::getenv("ZOOM_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 1024)
            return static_cast<unsigned>(v);
    }
    return requested ? requested : 1;
}

} // namespace zoom
