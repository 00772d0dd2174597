#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergostat/rational.hpp"

namespace ergostat {

namespace detail {
inline double pad_down(double x) {
    if (!std::isfinite(x)) return x;
    return std::nextafter(std::nextafter(x, -std::numeric_limits<double>::infinity()),
                          -std::numeric_limits<double>::infinity());
}
inline double pad_up(double x) {
    if (!std::isfinite(x)) return x;
    return std::nextafter(std::nextafter(x, std::numeric_limits<double>::infinity()),
                          std::numeric_limits<double>::infinity());
}
}  // namespace detail

/// Directed enclosure [lo, hi] of log10 of a positive quantity. Every
/// operation widens by a couple of ulps so libm rounding cannot leak the true
/// value out of the interval.
struct LogVal {
    double lo = 0.0;
    double hi = 0.0;

    static LogVal zero_log() { return {0.0, 0.0}; }  // log10(1), exact

    static LogVal of_uint(std::uint64_t n) {
        double v = std::log10(static_cast<double>(n));
        return {detail::pad_down(v), detail::pad_up(v)};
    }

    static LogVal of_bignat(const BigNat& n) {
        auto [lo, hi] = log10_bounds(n);
        return {lo, hi};
    }

    /// log10 of a positive rational, directed.
    static LogVal of_rational(const Rational& q) {
        LogVal num = of_bignat(numerator_of(q));
        LogVal den = of_bignat(denominator_of(q));
        return {detail::pad_down(num.lo - den.hi), detail::pad_up(num.hi - den.lo)};
    }

    /// Underlying multiplication: log values add.
    friend LogVal operator*(const LogVal& a, const LogVal& b) {
        return {detail::pad_down(a.lo + b.lo), detail::pad_up(a.hi + b.hi)};
    }

    /// Underlying addition via log-sum-exp with directed rounding.
    static LogVal sum(const LogVal& a, const LogVal& b) {
        auto one_sided = [](double x, double y, bool up) {
            double m = std::max(x, y);
            if (!std::isfinite(m)) return m;
            double d = std::min(x, y) - m;  // <= 0
            double corr = std::log1p(std::pow(10.0, d)) / 2.302585092994045684;
            double v = m + corr;
            return up ? detail::pad_up(detail::pad_up(v)) : detail::pad_down(detail::pad_down(v));
        };
        return {one_sided(a.lo, b.lo, false), one_sided(a.hi, b.hi, true)};
    }

    /// Underlying max: interval max is exact on endpoints.
    static LogVal max(const LogVal& a, const LogVal& b) {
        return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
    }

    /// Underlying value raised to a nonnegative integer power.
    LogVal pow_count(const BigNat& k) const {
        double kd = k.convert_to<double>();
        // k converts with <= 0.5 ulp relative error; widen accordingly.
        double rel = 1.2e-16 * std::abs(kd);
        double l = lo >= 0 ? (kd - rel) * lo : (kd + rel) * lo;
        double h = hi >= 0 ? (kd + rel) * hi : (kd - rel) * hi;
        return {detail::pad_down(l), detail::pad_up(h)};
    }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

}  // namespace ergostat
