#pragma once

#include "zoom/numeric.hpp"
#include "zoom/quadratic.hpp"

#include <map>
#include <optional>
#include <vector>

namespace zoom {

// eta*B^(-1/r) < d <= eps*B^(-1/r), height <= B
struct ZoomWindow {
    Rat eps_outer;
    Rat eps_inner;
    u64 B = 1;
    Ratio r;

    ZoomWindow() = default;
    ZoomWindow(Rat eps, Rat eta, u64 B_, Ratio r_);
    void validate() const;
};

struct ZoomCount {
    u64 count = 0;
    long double main_term = 0;
    ZoomWindow window;
    std::optional<double> slope; // empirical log-log growth, filled by callers that sweep B

    long double ratio() const { return main_term > 0 ? static_cast<long double>(count) / main_term : 0; }
};

// target [0:1]
ZoomCount count_zoom_rational(const ZoomWindow& w, unsigned threads = 1);
long double pagelot_main_term(const ZoomWindow& w);

ZoomCount count_zoom_surd(const QuadraticTarget& t, const ZoomWindow& w, unsigned threads = 1);
long double subcritical_main_term(const QuadraticTarget& t, const ZoomWindow& w);

// r = 1/2, eta = 0: counts keyed by m = a u^2 - b v^2
std::map<i64, u64> pell_window_decomposition(const QuadraticTarget& t, const Rat& eps, u64 B);
u64 pell_window_range(const QuadraticTarget& t, const Rat& eps);
long double critical_upper_bound(const QuadraticTarget& t, const Rat& eps);

// limit of B^2 |u/v - alpha| along a family with a u^2 - b v^2 = m
long double critical_value(const QuadraticTarget& t, i64 m);
// rationals eta < c_m < eps with eps/eta - 1 about 2*width
std::pair<Rat, Rat> oscillation_window(const QuadraticTarget& t, i64 m, const Rat& width);

std::vector<u64> tracking_sequence(const QuadraticTarget& t, const Rat& eps, const Rat& eta, i64 m, size_t n);
std::vector<u64> avoidance_sequence(const QuadraticTarget& t, const Rat& eps, const Rat& eta, size_t n);

} // namespace zoom
