#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qnk {

// All coefficients, counts and multiplicities in this library are exact.
// Int is an arbitrary-precision integer, Rat an arbitrary-precision
// rational kept in lowest terms by the backend.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int result = 1;
    for (long long i = 0; i < k; ++i) {
        result *= n - i;
        result /= i + 1;  // exact: product of i+1 consecutive integers
    }
    return result;
}

inline bool is_integral(const Rat& r) { return denominator(r) == 1; }

// Exact conversion; throws if r is not an integer.
inline Int to_integer(const Rat& r) {
    if (!is_integral(r)) {
        throw std::domain_error("expected an integer, got " + r.str());
    }
    return numerator(r);
}

// True when 2*r is an integer.
inline bool is_half_integral(const Rat& r) {
    const Int d = denominator(r);
    return d == 1 || d == 2;
}

// Parses "p" or "p/q" with optional sign; q must be nonzero.
inline Rat parse_rational(std::string_view text) {
    const std::string s(text);
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        const Int num(s.substr(0, slash));
        const Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational '" + s + "'");
    }
}

// Lowest-terms decimal rendering, "p" when integral, otherwise "p/q".
inline std::string to_string(const Rat& r) {
    if (is_integral(r)) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace qnk
