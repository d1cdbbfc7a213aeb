#include "rhkit/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace rhkit {
namespace qlinalg {

Rational::Rational(long num, long den) {
    if (den == 0)
        throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero())
        throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero())
        throw std::domain_error("Rational: inverse of zero");
    return Rational(mpq_class(1) / v_);
}

Rational Rational::parse(const std::string& s) {
    if (s.empty())
        throw std::invalid_argument("Rational: empty literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("Rational: bad literal '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const {
    return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

std::uint64_t RationalSampler::next_u64() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rational RationalSampler::next() {
    long num = static_cast<long>(next_u64() % 19) - 9;
    long den = static_cast<long>(next_u64() % 9) + 1;
    return Rational(num, den);
}

Rational RationalSampler::next_nonzero() {
    for (;;) {
        Rational r = next();
        if (!r.is_zero())
            return r;
    }
}

QVector RationalSampler::next_vector(std::size_t len) {
    QVector v(len);
    for (auto& x : v)
        x = next();
    return v;
}

QVector RationalSampler::next_nonzero_vector(std::size_t len) {
    for (;;) {
        QVector v = next_vector(len);
        bool any = false;
        for (const auto& x : v)
            if (!x.is_zero())
                any = true;
        if (any || len == 0)
            return v;
    }
}

}  // namespace qlinalg
}  // namespace rhkit
