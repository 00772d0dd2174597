#include "ergostat/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "ergostat/errors.hpp"
#include "ergostat/rng.hpp"

namespace ergostat {

LpSpace::LpSpace(int dim, Rational exponent) : d(dim), p(std::move(exponent)) {
    if (d < 1) throw DomainError("LpSpace: dimension must be >= 1");
    if (p < 2) throw DomainError("LpSpace: p must be >= 2 (built-in moduli require it)");
}

LpSpace LpSpace::parse(std::string_view spec) {
    std::string s(spec);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s.rfind("lp:", 0) != 0) throw ParseError("space spec must look like lp:<d>:<p>: '" + s + "'");
    auto rest = s.substr(3);
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw ParseError("space spec must look like lp:<d>:<p>: '" + s + "'");
    int d;
    try {
        d = std::stoi(rest.substr(0, colon));
    } catch (const std::exception&) {
        throw ParseError("bad dimension in space spec '" + s + "'");
    }
    Rational p = parse_rational(rest.substr(colon + 1));
    return LpSpace(d, p);
}

std::string LpSpace::spec_string() const {
    return "lp:" + std::to_string(d) + ":" + format_rational(p);
}

double lp_norm(std::span<const double> v, double p) {
    if (p < 1.0) throw DomainError("lp_norm: p must be >= 1");
    if (p == 2.0) {
        // Sorted ascending accumulation keeps the sum of squares stable.
        std::vector<double> sq(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
        std::sort(sq.begin(), sq.end());
        double s = std::accumulate(sq.begin(), sq.end(), 0.0);
        return std::sqrt(s);
    }
    double mx = 0.0;
    for (double x : v) mx = std::max(mx, std::abs(x));
    if (mx == 0.0) return 0.0;
    // Scale out the max to avoid overflow/underflow of |x|^p.
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x) / mx, p);
    return mx * std::pow(s, 1.0 / p);
}

double lp_dist(std::span<const double> a, std::span<const double> b, double p) {
    if (a.size() != b.size()) throw DomainError("lp_dist: dimension mismatch");
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    return lp_norm(diff, p);
}

std::string GenRecipe::to_json() const {
    std::ostringstream os;
    os << "{\"kind\":\"random\",\"depth\":" << combo_depth << ",\"diagonals\":"
       << (include_diagonals ? "true" : "false") << ",\"orthogonal\":"
       << (orthogonal_for_p2 ? "true" : "false") << "}";
    return os.str();
}

Operator::Operator(int d, std::vector<double> row_major, Certificate cert, double cert_bound,
                   std::string recipe)
    : d_(d), m_(std::move(row_major)), cert_(cert), cert_bound_(cert_bound),
      recipe_(std::move(recipe)) {
    if (d_ < 1 || m_.size() != static_cast<std::size_t>(d_) * d_)
        throw DomainError("Operator: entries must form a d x d matrix");
}

bool Operator::certified() const {
    return cert_ == Certificate::ByConstruction ||
           (cert_ == Certificate::Estimated && cert_bound_ <= 1.0 + 1e-9);
}

Operator Operator::identity(int d) {
    std::vector<double> m(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i) * d + i] = 1.0;
    return Operator(d, std::move(m), Certificate::ByConstruction, 1.0, "{\"kind\":\"identity\"}");
}

Operator Operator::neg_identity(int d) {
    std::vector<double> m(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i) * d + i] = -1.0;
    return Operator(d, std::move(m), Certificate::ByConstruction, 1.0, "{\"kind\":\"neg-identity\"}");
}

Operator Operator::reversal(int d) {
    std::vector<int> perm(d), signs(d, 1);
    for (int i = 0; i < d; ++i) perm[i] = d - 1 - i;
    auto op = signed_permutation(d, perm, signs);
    return Operator(d, std::vector<double>(op.entries().begin(), op.entries().end()),
                    Certificate::ByConstruction, 1.0, "{\"kind\":\"swap\"}");
}

Operator Operator::signed_permutation(int d, const std::vector<int>& perm,
                                      const std::vector<int>& signs) {
    if (static_cast<int>(perm.size()) != d || static_cast<int>(signs.size()) != d)
        throw DomainError("signed_permutation: perm/signs must have length d");
    std::vector<double> m(static_cast<std::size_t>(d) * d, 0.0);
    std::vector<bool> seen(d, false);
    for (int i = 0; i < d; ++i) {
        if (perm[i] < 0 || perm[i] >= d || seen[perm[i]])
            throw DomainError("signed_permutation: not a permutation");
        seen[perm[i]] = true;
        m[static_cast<std::size_t>(i) * d + perm[i]] = signs[i] >= 0 ? 1.0 : -1.0;
    }
    return Operator(d, std::move(m), Certificate::ByConstruction, 1.0,
                    "{\"kind\":\"signed-permutation\"}");
}

Operator Operator::averaged_swap(int d) {
    auto rev = reversal(d);
    std::vector<double> m(rev.entries().begin(), rev.entries().end());
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            double v = 0.5 * m[static_cast<std::size_t>(i) * d + j] + (i == j ? 0.5 : 0.0);
            m[static_cast<std::size_t>(i) * d + j] = v;
        }
    }
    return Operator(d, std::move(m), Certificate::ByConstruction, 1.0, "{\"kind\":\"avg-swap\"}");
}

Operator Operator::import_matrix(const LpSpace& space, std::vector<double> row_major) {
    Operator cand(space.d, std::move(row_major), Certificate::Estimated, 0.0,
                  "{\"kind\":\"imported\"}");
    double bound = estimate_opnorm(cand, space.p_value(), 400, 0x5eed);
    if (bound > 1.0 + 1e-9)
        throw DomainError("import_matrix: estimated p-norm " + std::to_string(bound) +
                          " exceeds 1 (matrix is not certifiably nonexpansive)");
    return Operator(space.d, std::vector<double>(cand.entries().begin(), cand.entries().end()),
                    Certificate::Estimated, bound, "{\"kind\":\"imported\"}");
}

Operator Operator::import_csv(const LpSpace& space, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix CSV: " + path);
    std::vector<double> vals;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    }
    if (vals.size() != static_cast<std::size_t>(space.d) * space.d)
        throw ParseError("matrix CSV has " + std::to_string(vals.size()) + " entries, expected " +
                         std::to_string(space.d * space.d));
    return import_matrix(space, std::move(vals));
}

std::vector<double> Operator::apply(std::span<const double> v) const {
    std::vector<double> out(d_);
    apply_into(v, out);
    return out;
}

void Operator::apply_into(std::span<const double> v, std::span<double> out) const {
    if (static_cast<int>(v.size()) != d_ || static_cast<int>(out.size()) != d_)
        throw DomainError("Operator::apply: dimension mismatch");
    for (int r = 0; r < d_; ++r) {
        double s = 0.0;
        const double* row = m_.data() + static_cast<std::size_t>(r) * d_;
        for (int c = 0; c < d_; ++c) s += row[c] * v[c];
        out[r] = s;
    }
}

namespace {

std::vector<double> random_signed_perm(int d, Rng& rng) {
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = d - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    std::vector<double> m(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i)
        m[static_cast<std::size_t>(i) * d + perm[i]] = rng.coin() ? 1.0 : -1.0;
    return m;
}

std::vector<double> random_diagonal(int d, Rng& rng) {
    std::vector<double> m(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i) * d + i] = rng.uniform(-1.0, 1.0);
    return m;
}

// Random orthogonal via modified Gram-Schmidt on a Gaussian matrix.
std::vector<double> random_orthogonal(int d, Rng& rng) {
    std::vector<std::vector<double>> cols(d, std::vector<double>(d));
    for (auto& col : cols)
        for (auto& x : col) x = rng.normal();
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < j; ++k) {
            double dot = 0.0;
            for (int i = 0; i < d; ++i) dot += cols[j][i] * cols[k][i];
            for (int i = 0; i < d; ++i) cols[j][i] -= dot * cols[k][i];
        }
        double nrm = lp_norm(cols[j], 2.0);
        if (nrm < 1e-12) {  // degenerate draw; replace with a unit basis vector
            std::fill(cols[j].begin(), cols[j].end(), 0.0);
            cols[j][j] = 1.0;
            j--;  // re-orthogonalize this column
            continue;
        }
        for (int i = 0; i < d; ++i) cols[j][i] /= nrm;
    }
    std::vector<double> m(static_cast<std::size_t>(d) * d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m[static_cast<std::size_t>(r) * d + c] = cols[c][r];
    return m;
}

std::vector<double> mat_mul(const std::vector<double>& a, const std::vector<double>& b, int d) {
    std::vector<double> out(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            double aik = a[static_cast<std::size_t>(i) * d + k];
            if (aik == 0.0) continue;
            for (int j = 0; j < d; ++j)
                out[static_cast<std::size_t>(i) * d + j] += aik * b[static_cast<std::size_t>(k) * d + j];
        }
    return out;
}

}  // namespace

Operator gen_nonexpansive(const LpSpace& space, std::uint64_t seed, const GenRecipe& recipe) {
    const int d = space.d;
    Rng rng(derive_seed(seed, 0xa11ce));
    std::vector<double> acc = random_signed_perm(d, rng);
    for (int step = 0; step < recipe.combo_depth; ++step) {
        int choice = static_cast<int>(rng.below(3));
        std::vector<double> factor;
        if (choice == 0) {
            factor = random_signed_perm(d, rng);
        } else if (choice == 1 && recipe.include_diagonals) {
            factor = random_diagonal(d, rng);
        } else if (recipe.orthogonal_for_p2 && space.euclidean()) {
            factor = random_orthogonal(d, rng);
        } else {
            factor = random_signed_perm(d, rng);
        }
        if (rng.coin()) {
            acc = mat_mul(acc, factor, d);
        } else {
            double lambda = rng.uniform01();
            for (std::size_t i = 0; i < acc.size(); ++i)
                acc[i] = lambda * acc[i] + (1.0 - lambda) * factor[i];
        }
    }
    std::ostringstream rec;
    rec << "{\"kind\":\"random\",\"seed\":" << seed << ",\"depth\":" << recipe.combo_depth
        << ",\"diagonals\":" << (recipe.include_diagonals ? "true" : "false")
        << ",\"orthogonal\":" << (recipe.orthogonal_for_p2 ? "true" : "false") << "}";
    return Operator(d, std::move(acc), Certificate::ByConstruction, 1.0, rec.str());
}

double estimate_opnorm(const Operator& T, double p, int iters, std::uint64_t seed) {
    if (iters < 1) throw DomainError("estimate_opnorm: iters must be >= 1");
    const int d = T.dim();
    Rng rng(derive_seed(seed, 0x0b57));
    double best = 0.0;

    auto ratio = [&](std::vector<double>& v) {
        double nv = lp_norm(v, p);
        if (nv == 0.0) return 0.0;
        for (auto& x : v) x /= nv;
        return lp_norm(T.apply(v), p);
    };

    const int restarts = 4;
    for (int r = 0; r < restarts; ++r) {
        std::vector<double> v(d);
        for (auto& x : v) x = rng.normal();
        double cur = ratio(v);
        best = std::max(best, cur);
        double step = 0.5;
        for (int it = 0; it < iters; ++it) {
            int coord = static_cast<int>(rng.below(d));
            double delta = rng.coin() ? step : -step;
            std::vector<double> w = v;
            w[coord] += delta;
            double cand = ratio(w);
            if (cand > cur) {
                v = w;
                cur = cand;
                best = std::max(best, cur);
            } else {
                step *= 0.97;
            }
        }
    }

    if (p == 2.0) {
        // Power iteration on T^t T; the Rayleigh quotient is a lower bound on
        // the squared dominant singular value throughout.
        std::vector<double> v(d);
        for (auto& x : v) x = rng.normal();
        double nrm = lp_norm(v, 2.0);
        for (auto& x : v) x /= nrm;
        double lambda = 0.0;
        for (int it = 0; it < 20000; ++it) {
            std::vector<double> tv = T.apply(v);
            std::vector<double> w(d, 0.0);  // w = T^t (T v)
            for (int rr = 0; rr < d; ++rr)
                for (int cc = 0; cc < d; ++cc) w[cc] += T.entry(rr, cc) * tv[rr];
            double next = 0.0;
            for (int i = 0; i < d; ++i) next += v[i] * w[i];
            double wn = lp_norm(w, 2.0);
            if (wn == 0.0) break;
            for (int i = 0; i < d; ++i) v[i] = w[i] / wn;
            if (std::abs(next - lambda) <= 1e-12 * std::max(1.0, std::abs(next)) && it > 4) {
                lambda = next;
                break;
            }
            lambda = next;
        }
        if (lambda > 0.0) best = std::max(best, std::sqrt(lambda));
    }
    return best;
}

Operator parse_operator(const LpSpace& space, std::string_view spec, std::uint64_t seed) {
    std::string s(spec);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "identity") return Operator::identity(space.d);
    if (s == "neg-identity") return Operator::neg_identity(space.d);
    if (s == "swap") return Operator::reversal(space.d);
    if (s == "avg-swap") return Operator::averaged_swap(space.d);
    if (s.rfind("random", 0) == 0) {
        GenRecipe recipe;
        if (auto colon = s.find(':'); colon != std::string::npos) {
            try {
                recipe.combo_depth = std::stoi(s.substr(colon + 1));
            } catch (const std::exception&) {
                throw ParseError("bad depth in operator spec '" + s + "'");
            }
        }
        recipe.orthogonal_for_p2 = space.euclidean();
        return gen_nonexpansive(space, seed, recipe);
    }
    if (s.rfind("csv:", 0) == 0) return Operator::import_csv(space, std::string(spec.substr(4)));
    throw ParseError("unknown operator spec '" + std::string(spec) + "'");
}

}  // namespace ergostat
