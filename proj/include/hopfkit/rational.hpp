#ifndef HOPFKIT_RATIONAL_HPP
#define HOPFKIT_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "hopfkit/errors.hpp"

namespace hopfkit {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

inline Rational abs_value(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// "p/q" or "p"; always canonical.
inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational parse_rational(const std::string& text) {
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0) {
        fail(ErrorCode::ParseError, "not a rational: '" + text + "'");
    }
    r.canonicalize();
    return r;
}

inline int sign_of(const Rational& r) { return sgn(r); }

}  // namespace hopfkit

#endif
