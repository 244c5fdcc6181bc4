#include "cpart/bigint.hpp"

#include "cpart/errors.hpp"

#include <cmath>

namespace cpart {

BigRat rat_from_double(double x) {
    if (!std::isfinite(x)) throw precondition_error("rat_from_double: non-finite value");
    // Every finite double is a dyadic rational; this conversion is exact.
    return BigRat(x);
}

double rat_to_double(const BigRat& v) { return static_cast<double>(v); }

}  // namespace cpart
