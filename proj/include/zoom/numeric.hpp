#pragma once

// Exact integer helpers shared by the counters: integer roots, signs of
// r1 + r2*sqrt(N), elements of Z[sqrt(N)], rational parsing.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace zoom {

using Int = mpz_class;
using Rat = mpq_class;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Zoom factor r = p/q, lowest terms.
struct Ratio {
    unsigned p = 1;
    unsigned q = 1;

    Ratio() = default;
    Ratio(unsigned p_, unsigned q_);
    static Ratio from(const Rat& r);
    Rat value() const { return Rat(p, q); }
    long double as_ld() const { return static_cast<long double>(p) / q; }
    bool operator==(const Ratio&) const = default;
    std::string str() const;
};

// "p/q" or an integer. Anything with a decimal point or exponent is refused.
Rat parse_rational(std::string_view s);
Ratio parse_ratio(std::string_view s);

std::string to_string(const Rat& r);
long double to_ld(const Rat& r);
long double to_ld(const Int& z);
Int to_int(u64 v);
Int to_int(i64 v);
u64 to_u64(const Int& z);
i64 to_i64(const Int& z);

u64 isqrt(u64 n);
Int isqrt(const Int& n);
bool is_square(u64 n);
bool is_square(const Int& n);

Int iroot_floor(const Int& n, unsigned k);
Int iroot_ceil(const Int& n, unsigned k);
Int ceil_div(const Int& a, const Int& b);  // b > 0
Int floor_div(const Int& a, const Int& b); // b > 0
Int pow(const Int& base, unsigned e);

// sign of c + d*sqrt(N), N >= 0
int sign_surd(const Int& c, const Int& d, const Int& N);
// sign of (c1 + d1 sqrt N) - (c2 + d2 sqrt N)
inline int compare_surd(const Int& c1, const Int& d1, const Int& c2, const Int& d2, const Int& N)
{
    return sign_surd(c1 - c2, d1 - d2, N);
}

// x + y*sqrt(N)
struct Surd {
    Int x;
    Int y;

    Surd() = default;
    Surd(Int x_, Int y_) : x(std::move(x_)), y(std::move(y_)) {}
    Surd conj() const { return {x, -y}; }
    Int norm(const Int& N) const { return x * x - N * y * y; }
    int sign(const Int& N) const { return sign_surd(x, y, N); }
    bool operator==(const Surd&) const = default;
};

Surd mul(const Surd& a, const Surd& b, const Int& N);
Surd pow(const Surd& a, unsigned e, const Int& N);


} // namespace zoom
