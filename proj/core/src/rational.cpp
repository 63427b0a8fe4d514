#include "rational.hpp"

#include "opsplit/errors.hpp"

namespace opsplit::detail {

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw SingularMatrixError("rational: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw SingularMatrixError("rational: division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

double Rational::to_double() const {
    return static_cast<double>(boost::multiprecision::cpp_rational(num_, den_));
}

std::string Rational::to_string() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

std::vector<Rational> rational_solve(std::vector<Rational> a, std::vector<Rational> b,
                                     std::size_t n) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot * n + col].is_zero()) ++pivot;
        if (pivot == n)
            throw SingularMatrixError("rational_solve: singular system at column " +
                                      std::to_string(col));
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]);
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t row = col + 1; row < n; ++row) {
            if (a[row * n + col].is_zero()) continue;
            Rational factor = a[row * n + col] / a[col * n + col];
            for (std::size_t j = col; j < n; ++j)
                a[row * n + j] = a[row * n + j] - factor * a[col * n + j];
            b[row] = b[row] - factor * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s = s - a[i * n + j] * x[j];
        x[i] = s / a[i * n + i];
    }
    return x;
}

}  // namespace opsplit::detail
