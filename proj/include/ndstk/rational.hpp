#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace ndstk {

// Exact rational scalar used for all map algebra and metric decisions.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline const Rat& rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

// Fractional part in [0, 1); exact.
inline Rat rat_mod1(const Rat& x) {
    Int q = numerator(x) / denominator(x);
    Rat r = x - Rat(q);
    if (r < 0) r += 1;
    return r;
}

inline double rat_to_double(const Rat& x) { return x.convert_to<double>(); }

// True when x = p / 2^k with p, 2^k small enough that x and all differences
// of such values round-trip through double without error.
inline bool rat_exact_double(const Rat& x, unsigned max_pow2 = 40) {
    Int den = denominator(x);
    if (rat_abs(x) > 2) return false;
    unsigned bits = 0;
    while (den % 2 == 0) {
        den /= 2;
        if (++bits > max_pow2) return false;
    }
    return den == 1;
}

// Parses "p/q" or "p"; accepts optional sign. Throws argument_error on junk.
inline Rat rat_parse(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw argument_error("zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw argument_error("not a fraction: " + s);
    }
}

inline std::string rat_str(const Rat& x) {
    std::string s = numerator(x).str();
    if (denominator(x) != 1) s += "/" + denominator(x).str();
    return s;
}

}  // namespace ndstk
