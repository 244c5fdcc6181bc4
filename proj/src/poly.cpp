#include "cpart/poly.hpp"

#include <algorithm>

namespace cpart {

UniPoly UniPoly::constant(const BigRat& c) {
    UniPoly p;
    if (c != 0) p.coeffs.push_back(c);
    return p;
}

UniPoly UniPoly::monomial(const BigRat& c, int k) {
    UniPoly p;
    if (c != 0) {
        p.coeffs.assign(k + 1, BigRat(0));
        p.coeffs[k] = c;
    }
    return p;
}

BigRat UniPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs.size())) return BigRat(0);
    return coeffs[k];
}

BigRat UniPoly::eval(const BigRat& x) const {
    BigRat r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
    return r;
}

void UniPoly::trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    UniPoly r = *this;
    r += o;
    return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (o.coeffs.size() > coeffs.size()) coeffs.resize(o.coeffs.size(), BigRat(0));
    for (std::size_t i = 0; i < o.coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    trim();
    return *this;
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return zero();
    UniPoly r;
    r.coeffs.assign(coeffs.size() + o.coeffs.size() - 1, BigRat(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs.size(); ++j)
            r.coeffs[i + j] += coeffs[i] * o.coeffs[j];
    }
    r.trim();
    return r;
}

}  // namespace cpart
