#ifndef WGRAPH_RATIONAL_HPP_
#define WGRAPH_RATIONAL_HPP_

#include <cstdint>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/gmp.hpp>

#include "wgraph/error.hpp"

namespace wgraph {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

/// Parses `-?digits(/digits)?` into a reduced rational.
inline Rational parse_rational(std::string_view text) {
    static const std::regex pattern(R"(^(-?[0-9]+)(?:/([0-9]+))?$)");
    std::string s(text);
    std::smatch m;
    if (!std::regex_match(s, m, pattern))
        throw Error(ErrorCode::ParseError, "not a rational: '" + s + "'");
    Integer num(m[1].str());
    Integer den(m[2].matched ? m[2].str() : std::string("1"));
    if (den == 0)
        throw Error(ErrorCode::ZeroDenominator, "zero denominator in '" + s + "'");
    return Rational(num, den);
}

/// Canonical "n/d" form, or "n" when the value is an integer.
inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Integer ipow(Integer base, unsigned exp) {
    Integer result = 1;
    while (exp) {
        if (exp & 1u)
            result *= base;
        base *= base;
        exp >>= 1u;
    }
    return result;
}

inline Rational ipow(const Rational& base, unsigned exp) {
    return Rational(ipow(numerator(base), exp), ipow(denominator(base), exp));
}

namespace detail {

// floor(n^(1/k)) for n >= 0.
inline Integer integer_root(const Integer& n, unsigned k) {
    if (n < 2 || k == 1)
        return n;
    Integer lo = 0;
    Integer hi = 1;
    while (ipow(hi, k) <= n)
        hi *= 2;
    while (hi - lo > 1) {
        Integer mid = (lo + hi) / 2;
        if (ipow(mid, k) <= n)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

} // namespace detail

/// value^(1/p) when it is itself rational.
inline std::optional<Rational> exact_root(const Rational& value, unsigned p) {
    if (value < 0)
        return std::nullopt;
    Integer n = detail::integer_root(numerator(value), p);
    Integer d = detail::integer_root(denominator(value), p);
    if (ipow(n, p) != numerator(value) || ipow(d, p) != denominator(value))
        return std::nullopt;
    return Rational(n, d);
}

/// lo <= value^(1/p) < hi with hi − lo = 10^−digits.
inline std::pair<Rational, Rational> root_bracket(const Rational& value, unsigned p, unsigned digits) {
    const Integer unit = ipow(Integer(10), digits);
    const Rational scaled = value * Rational(ipow(unit, p));
    Integer r = detail::integer_root(numerator(scaled) / denominator(scaled), p);
    return {Rational(r, unit), Rational(r + 1, unit)};
}

/// Decimal rendering of value^(1/p) with `digits` fractional digits, rounded
/// half-to-even. The rounding decision is made exactly.
inline std::string render_root(const Rational& value, unsigned p, unsigned digits = 12) {
    if (value < 0 || p == 0)
        throw Error(ErrorCode::BadParameter, "render_root needs value >= 0 and p >= 1");
    const Integer scale = ipow(Integer(10), digits * p);
    const Rational scaled = value * Rational(scale);
    Integer floor_scaled = numerator(scaled) / denominator(scaled);
    Integer r = detail::integer_root(floor_scaled, p);
    // Compare (r + 1/2)^p against scaled, i.e. (2r + 1)^p against 2^p * scaled.
    const Rational lhs(ipow(2 * r + 1, p));
    const Rational rhs = Rational(ipow(Integer(2), p)) * scaled;
    if (lhs < rhs || (lhs == rhs && r % 2 == 1))
        r += 1;

    std::string s = r.str();
    if (digits == 0)
        return s;
    if (s.size() <= digits)
        s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    return s;
}

} // namespace wgraph

#endif
