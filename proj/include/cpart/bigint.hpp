#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace cpart {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, unsigned long exp) {
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

inline BigInt pow2(unsigned long exp) { return BigInt(1) << exp; }

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const BigRat& v) {
    return boost::multiprecision::numerator(v).str() + "/" +
           boost::multiprecision::denominator(v).str();
}

// Exact conversion of a double (a dyadic rational) to BigRat.
BigRat rat_from_double(double x);

// Round a BigRat to double (for reporting only, never for decisions).
double rat_to_double(const BigRat& v);

}  // namespace cpart
