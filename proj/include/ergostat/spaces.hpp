#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ergostat/rational.hpp"

namespace ergostat {

/// Finite-dimensional l_p space (p >= 2; the built-in moduli are only valid
/// there). Norms are evaluated in binary64; exactness lives in `bounds`.
struct LpSpace {
    int d = 1;
    Rational p = 2;

    LpSpace() = default;
    LpSpace(int dim, Rational exponent);

    bool euclidean() const { return p == 2; }
    double p_value() const { return to_double(p); }

    /// "lp:<d>:<p>" with p an integer or num/den.
    static LpSpace parse(std::string_view spec);
    std::string spec_string() const;
};

/// (sum |v_i|^p)^(1/p), p >= 1. p = 2 accumulates sorted squares
/// (ascending) so short trajectories stay reproducibly tight.
double lp_norm(std::span<const double> v, double p);
double lp_dist(std::span<const double> a, std::span<const double> b, double p);

enum class Certificate {
    ByConstruction,  // built from convex combinations / products of nonexpansive generators
    Estimated,       // imported matrix whose estimated p-norm is <= 1 + 1e-9
};

/// Knobs for gen_nonexpansive.
struct GenRecipe {
    int combo_depth = 4;
    bool include_diagonals = true;
    bool orthogonal_for_p2 = false;
    std::string to_json() const;  // {"seed":...,"depth":...,"flags":[...]}
};

/// Dense linear operator on l_p^d that is nonexpansive either by construction
/// or by estimated certificate.
class Operator {
public:
    Operator(int d, std::vector<double> row_major, Certificate cert, double cert_bound,
             std::string recipe);

    static Operator identity(int d);
    static Operator neg_identity(int d);
    /// Coordinate reversal (a signed permutation; an isometry of every l_p).
    static Operator reversal(int d);
    static Operator signed_permutation(int d, const std::vector<int>& perm,
                                       const std::vector<int>& signs);
    /// (I + reversal)/2 -- the classic averaged swap.
    static Operator averaged_swap(int d);
    /// Imports a row-major d x d matrix; certifies via estimate_opnorm and
    /// throws DomainError if the estimate exceeds 1 + 1e-9.
    static Operator import_matrix(const LpSpace& space, std::vector<double> row_major);
    static Operator import_csv(const LpSpace& space, const std::string& path);

    int dim() const { return d_; }
    double entry(int r, int c) const { return m_[static_cast<std::size_t>(r) * d_ + c]; }
    std::span<const double> entries() const { return m_; }

    std::vector<double> apply(std::span<const double> v) const;
    void apply_into(std::span<const double> v, std::span<double> out) const;

    Certificate certificate() const { return cert_; }
    double certificate_bound() const { return cert_bound_; }
    bool certified() const;
    const std::string& recipe() const { return recipe_; }

private:
    int d_;
    std::vector<double> m_;  // row-major
    Certificate cert_;
    double cert_bound_;
    std::string recipe_;
};

/// Random nonexpansive operator: finite products and convex combinations of
/// signed permutations (isometries of every l_p) and diagonals with entries
/// in [-1,1] (nonexpansive in every l_p); optionally composed with random
/// orthogonal factors when p = 2. Deterministic given seed.
Operator gen_nonexpansive(const LpSpace& space, std::uint64_t seed, const GenRecipe& recipe = {});

/// Lower bound on the operator p-norm: random starts plus normalized
/// coordinate ascent on |Tv|_p / |v|_p; for p = 2 additionally power
/// iteration on T^t T (dominant singular value to relative 1e-10).
double estimate_opnorm(const Operator& T, double p, int iters, std::uint64_t seed);

/// Named operator specs used by the CLI: identity | neg-identity | swap |
/// avg-swap | random:<depth> | csv:<path>. `seed` feeds the random recipe.
Operator parse_operator(const LpSpace& space, std::string_view spec, std::uint64_t seed);

}  // namespace ergostat
