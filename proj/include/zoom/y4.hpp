#pragma once

#include "zoom/numeric.hpp"
#include "zoom/zoom_p1.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace zoom {

// ([x:y], [s:t]), both pairs primitive
struct Y4Point {
    Int x, y, s, t;

    Y4Point(Int x_, Int y_, Int s_, Int t_);
    bool operator==(const Y4Point&) const = default;
    std::string str() const;
};

Int height(const Y4Point& P);
Rat distance(const Y4Point& P);
// z > w > 1 with w = y/x, z = t/s
bool in_region_r(const Y4Point& P);

// a x y (t-s)^2 = b s t (y-x)^2, gcd(a,b) = 1, a < b
struct NodalCurve {
    u64 a = 1;
    u64 b = 2;

    NodalCurve() = default;
    NodalCurve(u64 a_, u64 b_);
    bool square_pair() const;
    bool operator==(const NodalCurve&) const = default;
};

NodalCurve curve_of(const Y4Point& P);
Y4Point psi_ab(u64 a, u64 b, u64 u, u64 v);
bool on_curve(const NodalCurve& c, const Y4Point& P);

// restricted distance and height of psi_ab(u, v)
Rat curve_distance(const NodalCurve& c, u64 u, u64 v);
Int curve_height(const NodalCurve& c, u64 u, u64 v);

// eps2 < B^(1/r) d <= eps1, height <= B, (u, v) primitive in range
u64 count_E(const NodalCurve& c, const Rat& eps1, const Rat& eps2, u64 B, Ratio r);

// eps2 < z' <= eps1 (rescaled), tau2 <= z'/w' <= tau1
struct RegionW {
    Rat eps1, eps2, tau1, tau2;
};

struct Y4Query {
    Rat eps;
    Rat eta = 0;
    u64 B = 1;
    Ratio r{2, 1};
    // r > 2 only: keep b <= B^(cutoff_eta (1 - 2/r)) instead of the complete range
    std::optional<Rat> cutoff_eta;
    std::optional<RegionW> region;
    unsigned threads = 1;
};

struct Y4Count {
    ZoomCount total;
    std::map<std::pair<u64, u64>, u64> per_curve; // nonzero entries only
    u64 b_max = 0;
    u64 curves = 0;
};

Y4Count count_zoom_y4(const Y4Query& q);

constexpr u64 kBruteForceLimit = 100000;
// points, when given, receives every counted point
ZoomCount brute_force_zoom_y4(const Rat& eps, const Rat& eta, u64 B, Ratio r, std::vector<Y4Point>* points = nullptr);

Rat approx_constant_on_curve(const NodalCurve& c);
bool thin_set_member(const Y4Point& P);

long double lower_bound_main_term(Ratio r, const Rat& eta, const RegionW& W, std::uint32_t prime_cutoff, u64 B);

} // namespace zoom
