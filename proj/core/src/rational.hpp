#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace opsplit::detail {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction with arbitrary-precision integer parts, always normalized
/// (gcd 1, positive denominator).
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n, BigInt d);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(-num_, den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool is_zero() const { return num_ == 0; }

    double to_double() const;
    /// "p/q", or just "p" when q = 1.
    std::string to_string() const;

private:
    BigInt num_;
    BigInt den_;
};

/// Exact Gaussian elimination with partial (nonzero) pivoting. a is n×n
/// row-major, solved in place against b. Throws on a singular system.
std::vector<Rational> rational_solve(std::vector<Rational> a, std::vector<Rational> b,
                                     std::size_t n);

}  // namespace opsplit::detail
