// Test-only reference oracles. These re-derive expected values through the
// most direct code path available (plain loops over boost big ints / rationals)
// and must stay independent of the library implementation they check.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace oracle {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int ceil_pos(const Rat& q) {
    if (q <= 0) throw std::invalid_argument("oracle::ceil_pos: needs q > 0");
    Int num = boost::multiprecision::numerator(q);
    Int den = boost::multiprecision::denominator(q);
    return (num + den - 1) / den;
}

// Hilbert modulus eta(e) = e^2/8, eta~(e) = e/8, clamped at 2.
inline Rat hilbert_eta(Rat e) {
    if (e > 2) e = 2;
    return e * e / 8;
}
inline Rat hilbert_eta_tilde(Rat e) {
    if (e > 2) e = 2;
    return e / 8;
}

// L_p modulus for integer p >= 2: eta(e) = e^p / (p 2^p), eta~ = e^{p-1} / (p 2^p).
inline Rat lp_eta(Rat e, unsigned p) {
    if (e > 2) e = 2;
    Rat r = 1;
    for (unsigned i = 0; i < p; ++i) r *= e;
    Int two_p = boost::multiprecision::pow(Int(2), p);
    return r / (Rat(p) * Rat(two_p));
}
inline Rat lp_eta_tilde(Rat e, unsigned p) {
    if (e > 2) e = 2;
    Rat r = 1;
    for (unsigned i = 0; i + 1 < p; ++i) r *= e;
    Int two_p = boost::multiprecision::pow(Int(2), p);
    return r / (Rat(p) * Rat(two_p));
}

struct PhiParts {
    Int M;
    Rat gamma;
    Int K;
    Int phi;
};

// Direct evaluation of Phi = M * htilde^K(1) with M = ceil(16 b / eps),
// gamma = (eps/16) eta(eps/(8b))   (unrefined)  or (eps/8) eta~(eps/(8b)) (refined),
// K = ceil(b / gamma), h(n) = 2 (M n + g(M n)), htilde = running max of h
// (equal to h for nondecreasing g, which is all this oracle supports).
inline PhiParts phi_direct(const Rat& eps, const Rat& b,
                           const std::function<Rat(Rat)>& eta,
                           const std::function<Rat(Rat)>& eta_tilde,
                           const std::function<Int(const Int&)>& g,
                           bool refined, std::uint64_t max_iter = 1u << 26) {
    PhiParts out;
    out.M = ceil_pos(Rat(16) * b / eps);
    Rat arg = eps / (8 * b);
    out.gamma = refined ? (eps / 8) * eta_tilde(arg) : (eps / 16) * eta(arg);
    out.K = ceil_pos(b / out.gamma);
    if (out.K > max_iter) throw std::runtime_error("oracle::phi_direct: K too large");
    Int n = 1;
    std::uint64_t k = out.K.convert_to<std::uint64_t>();
    for (std::uint64_t i = 0; i < k; ++i) n = 2 * (out.M * n + g(out.M * n));
    out.phi = out.M * n;
    return out;
}

// Brute-force least witness of the metastability window over a precomputed
// Cesaro trajectory: least P with max_{P<=i<j<=P+w(P)} |x_i-x_j| < eps.
// means[n-1] holds x_n as a flat vector of dimension d. Returns 0 if none.
inline std::uint64_t brute_witness(const std::vector<std::vector<double>>& means,
                                   const std::function<std::uint64_t(std::uint64_t)>& width,
                                   double eps, double p) {
    auto dist = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t t = 0; t < a.size(); ++t) {
            double ad = std::abs(a[t] - b[t]);
            s += std::pow(ad, p);
        }
        return std::pow(s, 1.0 / p);
    };
    for (std::uint64_t P = 1; P <= means.size(); ++P) {
        std::uint64_t w = width(P);
        if (P + w > means.size()) break;
        double diam = 0.0;
        for (std::uint64_t i = P; i <= P + w; ++i)
            for (std::uint64_t j = i + 1; j <= P + w; ++j)
                diam = std::max(diam, dist(means[i - 1], means[j - 1]));
        if (diam < eps) return P;
    }
    return 0;
}

// Direct Cesaro means x_n = (1/n) sum_{i<n} T^i x for a dense row-major d x d
// matrix, computed by plain summation (no incremental recurrence).
inline std::vector<std::vector<double>> cesaro_direct(std::span<const double> mat, int d,
                                                      std::span<const double> x0,
                                                      std::uint64_t n_max) {
    std::vector<std::vector<double>> means;
    means.reserve(n_max);
    std::vector<double> power(x0.begin(), x0.end());
    std::vector<double> sum(d, 0.0);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        for (int i = 0; i < d; ++i) sum[i] += power[i];
        std::vector<double> mean(d);
        for (int i = 0; i < d; ++i) mean[i] = sum[i] / static_cast<double>(n);
        means.push_back(std::move(mean));
        std::vector<double> next(d, 0.0);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) next[r] += mat[r * d + c] * power[c];
        power.swap(next);
    }
    return means;
}

// Least N with a_N <= a_m + eps for every 1 <= m <= g(N); 0 if none found
// within the sequence (a is 1-indexed via a[n-1]).
inline std::uint64_t brute_glb_witness(std::span<const double> a,
                                       const std::function<std::uint64_t(std::uint64_t)>& g,
                                       double eps) {
    for (std::uint64_t n = 1; n <= a.size(); ++n) {
        std::uint64_t gn = g(n);
        if (gn > a.size()) return 0;  // cannot evaluate the window
        bool ok = true;
        for (std::uint64_t m = 1; m <= gn && ok; ++m)
            if (!(a[n - 1] <= a[m - 1] + eps)) ok = false;
        if (ok) return n;
    }
    return 0;
}

}  // namespace oracle
