#pragma once

#include <span>
#include <string>
#include <string_view>

#include "ergostat/rational.hpp"
#include "ergostat/spaces.hpp"

namespace ergostat {

enum class ModulusKind { Hilbert, Lp, Power };

/// A modulus of uniform convexity eta: (0,2] -> (0,1], evaluable over exact
/// rationals, with clamp extension eta(eps) = eta(2) for eps > 2 and a
/// monotone factorization eta(eps) = eps * eta_tilde(eps) for every built-in
/// kind. Evaluations are exact except for lp with non-integer p, where the
/// value is rounded *down* to a nearby rational (any positive pointwise lower
/// bound of a modulus is itself a modulus).
class Modulus {
public:
    static Modulus hilbert();                              // eps^2 / 8
    static Modulus lp(const Rational& p);                  // eps^p / (p 2^p), p >= 2
    static Modulus power(const Rational& c, unsigned q);   // c eps^q, q >= 1, c 2^q <= 1
    /// Built-in modulus matching a space: hilbert for p = 2, lp(p) otherwise.
    static Modulus for_space(const LpSpace& space);
    /// `hilbert` | `lp:<p>` | `power:<c>:<q>`, case-insensitive.
    static Modulus parse(std::string_view spec);
    std::string spec_string() const;

    ModulusKind kind() const { return kind_; }
    bool has_tilde() const { return true; }  // all built-in kinds factorize
    const Rational& lp_exponent() const { return p_; }

    /// eta(min(2, eps)); DomainError for eps <= 0.
    Rational eval(const Rational& eps) const;
    /// eta_tilde(min(2, eps)); eval(eps) == eps * eval_tilde(eps) exactly on (0,2].
    Rational eval_tilde(const Rational& eps) const;
    /// u_eta(eps) = (eps/2) eta(eps) (unrefined) or eps * eta_tilde(eps)
    /// (refined). DomainError unless eps in (0,2].
    Rational eval_u(const Rational& eps, bool refined) const;

    /// Closed-form binary64 evaluation for the geometric checks (clamped).
    double eval_d(double eps) const;
    double eval_u_d(double eps, bool refined) const;

    /// True when this modulus may be checked against that space (hilbert needs
    /// p = 2, lp needs matching p; power kinds are user claims, always allowed).
    bool valid_for(const LpSpace& space) const;

private:
    Modulus(ModulusKind kind, Rational p, Rational c, unsigned q);

    ModulusKind kind_;
    Rational p_;  // lp exponent
    Rational c_;  // power coefficient
    unsigned q_ = 0;
};

/// Result of one midpoint-inequality check |(x+y)/2| <= |y| - u(|x-y|).
struct UcCheck {
    bool holds = false;
    double slack = 0.0;  // |y| - u - |mid| (>= -1e-12 iff holds); |y| - |mid| when vacuous
    double eps = 0.0;    // |x - y|
};

/// Checks the uniform-convexity midpoint inequality for a concrete pair.
/// Preconditions (ContractError on violation): |x| <= |y| <= 1 within 1e-12,
/// and eta valid for the space. Vacuously true when x == y.
UcCheck check_uc_inequality(std::span<const double> x, std::span<const double> y,
                            const Modulus& eta, const LpSpace& space, bool refined);

/// Monte-Carlo upper bound on Clarkson's modulus delta_X(eps): the minimum of
/// 1 - |(x+y)/2| over sampled feasible pairs (|x|,|y| <= 1, |x-y| >= eps),
/// each polished by coordinate-wise descent. Deterministic given seed; the
/// OpenMP and serial paths return bit-identical values.
double estimate_clarkson(const LpSpace& space, double eps, std::uint64_t n_samples,
                         std::uint64_t seed);
double estimate_clarkson_serial(const LpSpace& space, double eps, std::uint64_t n_samples,
                                std::uint64_t seed);

/// Closed form 1 - sqrt(1 - eps^2/4) for the Euclidean plane (test reference).
double clarkson_delta_hilbert(double eps);

}  // namespace ergostat
