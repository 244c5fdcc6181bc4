#pragma once

#include "cpart/bigint.hpp"

#include <vector>

namespace cpart {

// Dense univariate polynomial with exact rational coefficients. coeffs[i] is
// the coefficient of x^i; the vector never ends in a zero, so the zero
// polynomial is the empty vector.
struct UniPoly {
    std::vector<BigRat> coeffs;

    UniPoly() = default;
    explicit UniPoly(std::vector<BigRat> c) : coeffs(std::move(c)) { trim(); }

    static UniPoly zero() { return UniPoly{}; }
    static UniPoly constant(const BigRat& c);
    // c * x^k
    static UniPoly monomial(const BigRat& c, int k);

    // Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }

    // Coefficient of x^k, zero outside the stored range.
    BigRat coeff(int k) const;

    BigRat eval(const BigRat& x) const;

    void trim();

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly& operator+=(const UniPoly& o);

    bool operator==(const UniPoly& o) const = default;
};

}  // namespace cpart
