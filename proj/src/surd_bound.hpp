#pragma once

// |u/v - sqrt(b/a)| <= c * B^(-1/r), decided in long double when the margin
// allows and in Z[sqrt(ab)] otherwise.

#include "zoom/numeric.hpp"

#include <cmath>

namespace zoom::detail {

inline int side(u64 a, u64 b, u64 u, u64 v)
{
    // sign of a u^2 - b v^2
    if (u < (u64(1) << 40) && v < (u64(1) << 40) && a < (u64(1) << 40) && b < (u64(1) << 40)) {
        u128 l = static_cast<u128>(a) * u * u, r = static_cast<u128>(b) * v * v;
        if (static_cast<u128>(u) * u < (static_cast<u128>(1) << 80) && static_cast<u128>(v) * v < (static_cast<u128>(1) << 80))
            return l == r ? 0 : (l > r ? 1 : -1);
    }
    Int uu = to_int(u), vv = to_int(v);
    return sgn(Int(to_int(a) * uu * uu - to_int(b) * vv * vv));
}

// floor(v sqrt(b/a))
inline u64 floor_alpha(u64 a, u64 b, long double alpha, u64 v)
{
    long double est = std::floor(alpha * static_cast<long double>(v));
    u64 f = est > 0 ? static_cast<u64>(est) : 0;
    while (side(a, b, f + 1, v) <= 0)
        ++f;
    while (f > 0 && side(a, b, f, v) > 0)
        --f;
    return f;
}

class SurdBound {
public:
    SurdBound(u64 a, u64 b, const Rat& c, u64 B, Ratio r)
        : a_(a), b_(b), zero_(sgn(c) == 0), p_(r.p)
    {
        alpha_ = std::sqrt(static_cast<long double>(b) / static_cast<long double>(a));
        scale_ = to_ld(c) * std::pow(static_cast<long double>(B), -static_cast<long double>(r.q) / r.p);
        N_ = to_int(a) * to_int(b);
        K_ = pow(to_int(B), r.q) * pow(c.get_den(), r.p);
        R_ = pow(c.get_num(), r.p) * pow(to_int(a), r.p);
    }

    bool zero() const { return zero_; }
    long double alpha() const { return alpha_; }
    // c * B^(-1/r) in long double
    long double scale() const { return scale_; }

    bool le(u64 u, u64 v) const
    {
        if (zero_)
            return false;
        const long double uu = static_cast<long double>(u), vv = static_cast<long double>(v);
        const long double delta = std::fabs(uu - alpha_ * vv);
        const long double thr = scale_ * vv;
        const long double margin = (uu + alpha_ * vv) * 4e-18L + thr * 1e-15L;
        if (delta < thr - margin)
            return true;
        if (delta > thr + margin)
            return false;
        return exact(u, v);
    }

    bool exact(u64 u, u64 v) const
    {
        if (zero_)
            return false;
        const Int vv = to_int(v);
        Surd g(to_int(a_) * to_int(u), -vv);
        int s = side(a_, b_, u, v);
        Surd gp = pow(g, p_, N_);
        Int sp = (p_ % 2) ? Int(s) : Int(1);
        Int R = R_ * pow(vv, p_);
        return sign_surd(R - sp * K_ * gp.x, Int(-sp * K_ * gp.y), N_) >= 0;
    }

private:
    u64 a_, b_;
    bool zero_;
    unsigned p_;
    long double alpha_ = 0, scale_ = 0;
    Int N_, K_, R_;
};

} // namespace zoom::detail
