#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace pcgl {

// mpq_class keeps values canonical (reduced, positive denominator) as long as
// every constructor path goes through make_rational / parse_rational.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& s); // "p", "-p/q"
std::string to_string(const Rational& r);
bool is_integer(const Rational& r);

// Rational gcd: gcd of numerators over lcm of denominators, always > 0.
Rational rational_gcd(const Rational& a, const Rational& b);

using RatVec = std::vector<Rational>;
using RatMatrix = std::vector<RatVec>;

RatMatrix zero_matrix(std::size_t rows, std::size_t cols);
RatMatrix transpose(const RatMatrix& a);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
bool is_skew_symmetric(const RatMatrix& a);

// Result of an exact Gauss-Jordan solve of A x = b.
struct LinearSolution {
    bool consistent = false;
    std::size_t rank = 0;
    RatVec particular;          // valid when consistent
    std::vector<RatVec> kernel; // basis of the null space of A
};

LinearSolution solve_linear(const RatMatrix& a, const RatVec& b);

} // namespace pcgl
