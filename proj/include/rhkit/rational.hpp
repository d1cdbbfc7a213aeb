#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rhkit {
namespace qlinalg {

// Arbitrary-precision rational scalar. Always kept canonical:
// gcd(|num|, den) = 1 and den > 0. Backed by GMP's mpq.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(static_cast<long>(n)) {}
    Rational(int n) : v_(n) {}
    Rational(long num, long den);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Parses "p", "-p", or "p/q". Throws std::invalid_argument on junk.
    static Rational parse(const std::string& s);

    std::string str() const;
    std::string numerator_str() const { return v_.get_num().get_str(); }
    std::string denominator_str() const { return v_.get_den().get_str(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inverse() const;
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    const mpq_class& raw() const { return v_; }

  private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

using QVector = std::vector<Rational>;

// Deterministic generator of small rationals for sampling loops.
// splitmix64 core; numerators in [-9,9], denominators in [1,9].
class RationalSampler {
  public:
    explicit RationalSampler(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    Rational next();            // may be zero
    Rational next_nonzero();
    QVector next_vector(std::size_t len);
    QVector next_nonzero_vector(std::size_t len);

  private:
    std::uint64_t state_;
};

}  // namespace qlinalg

using qlinalg::Rational;
using qlinalg::QVector;
using qlinalg::RationalSampler;

}  // namespace rhkit
