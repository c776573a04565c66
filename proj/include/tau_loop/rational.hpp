#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "tau_loop/errors.hpp"

namespace tauloop {

// Exact rational scalar. Always stored normalized (lowest terms, positive
// denominator); arithmetic never rounds.
using Scalar = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Scalar make_scalar(long long num, long long den = 1) {
    if (den == 0) throw InputError("rational with zero denominator");
    return Scalar(BigInt(num), BigInt(den));
}

// "p/q" with q omitted when 1; used for every serialized scalar.
inline std::string scalar_str(const Scalar& s) {
    if (denominator(s) == 1) return numerator(s).str();
    return numerator(s).str() + "/" + denominator(s).str();
}

inline Scalar parse_scalar(const std::string& text) {
    auto bad = [&]() -> InputError { return InputError("malformed rational '" + text + "'"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Scalar(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw bad();
        return Scalar(num, den);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

inline bool is_integer(const Scalar& s) { return denominator(s) == 1; }

inline bool is_nonneg_integer(const Scalar& s) { return is_integer(s) && s >= 0; }

} // namespace tauloop
