#include "ergostat/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "ergostat/errors.hpp"

namespace ergostat {

namespace mp = boost::multiprecision;

BigNat floor_rational(const Rational& q) {
    BigNat num = numerator_of(q);
    BigNat den = denominator_of(q);  // backend keeps den > 0
    BigNat quot = num / den;         // truncates toward zero
    if (num < 0 && quot * den != num) --quot;
    return quot;
}

BigNat ceil_rational(const Rational& q) {
    BigNat num = numerator_of(q);
    BigNat den = denominator_of(q);
    BigNat quot = num / den;
    if (num > 0 && quot * den != num) ++quot;
    return quot;
}

BigNat ipow(const BigNat& base, std::uint64_t exp) {
    BigNat result = 1;
    BigNat b = base;
    while (exp != 0) {
        if (exp & 1) result *= b;
        exp >>= 1;
        if (exp != 0) b *= b;
    }
    return result;
}

BigNat iroot_floor(const BigNat& n, unsigned k) {
    if (n < 0) throw DomainError("iroot_floor: negative radicand");
    if (k == 0) throw DomainError("iroot_floor: zeroth root");
    if (n == 0 || n == 1 || k == 1) return n;
    // Initial guess from the bit length, then Newton steps downward.
    std::uint64_t bits = mp::msb(n) + 1;
    BigNat x = BigNat(1) << static_cast<unsigned>((bits + k - 1) / k);
    while (true) {
        BigNat xk1 = ipow(x, k - 1);
        BigNat y = ((k - 1) * x + n / xk1) / k;
        if (y >= x) break;
        x = y;
    }
    while (ipow(x, k) > n) --x;
    while (ipow(x + 1, k) <= n) ++x;
    return x;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

BigNat parse_uint(std::string_view s, std::string_view orig) {
    if (!all_digits(s)) throw ParseError("invalid rational literal: '" + std::string(orig) + "'");
    BigNat v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw ParseError("empty rational literal");

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw ParseError("invalid rational literal: '" + std::string(text) + "'");

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigNat num = parse_uint(s.substr(0, slash), text);
        BigNat den = parse_uint(s.substr(slash + 1), text);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        value = Rational(num, den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty())
            throw ParseError("invalid rational literal: '" + std::string(text) + "'");
        BigNat intpart = ip.empty() ? BigNat(0) : parse_uint(ip, text);
        BigNat frac = fp.empty() ? BigNat(0) : parse_uint(fp, text);
        BigNat scale = ipow(BigNat(10), fp.size());
        value = Rational(intpart * scale + frac, scale);
    } else {
        value = Rational(parse_uint(s, text));
    }
    return negative ? -value : value;
}

std::string format_rational(const Rational& q) {
    BigNat den = denominator_of(q);
    if (den == 1) return numerator_of(q).str();
    return numerator_of(q).str() + "/" + den.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::pair<double, double> log10_bounds(const BigNat& n) {
    if (n < 1) throw DomainError("log10_bounds: needs n >= 1");
    auto pad_down = [](double x) { return std::nextafter(std::nextafter(x, -1e308), -1e308); };
    auto pad_up = [](double x) { return std::nextafter(std::nextafter(x, 1e308), 1e308); };
    std::uint64_t bits = mp::msb(n) + 1;
    if (bits <= 62) {
        double v = std::log10(n.convert_to<double>());  // exact conversion below 2^53? top 62 still fine for bounds
        return {pad_down(v), pad_up(v)};
    }
    std::uint64_t shift = bits - 62;
    std::uint64_t top = (n >> static_cast<unsigned>(shift)).convert_to<std::uint64_t>();
    // n in [top * 2^shift, (top+1) * 2^shift)
    const double log10_2 = 0.30102999566398119521;
    double base = static_cast<double>(shift) * log10_2;
    double lo = pad_down(std::log10(static_cast<double>(top)) + pad_down(base));
    double hi = pad_up(std::log10(static_cast<double>(top + 1)) + pad_up(base));
    return {lo, hi};
}

std::uint64_t decimal_digits(const BigNat& n) {
    BigNat a = mp::abs(n);
    if (a == 0) return 1;
    auto [lo, hi] = log10_bounds(a);
    auto dlo = static_cast<std::uint64_t>(std::floor(lo)) + 1;
    auto dhi = static_cast<std::uint64_t>(std::floor(hi)) + 1;
    if (dlo == dhi) return dlo;
    return a.str().size();  // ambiguous near a power of ten; rare and exact
}

bool exceeds_digit_budget(const BigNat& n, std::uint64_t digits) {
    if (n == 0) return digits < 1;
    auto [lo, hi] = log10_bounds(n == 0 ? BigNat(1) : mp::abs(n));
    (void)hi;
    return std::floor(lo) + 1.0 > static_cast<double>(digits);
}

}  // namespace ergostat
