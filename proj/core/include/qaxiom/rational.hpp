// Exact rational arithmetic for expression constants.
#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qaxiom {

// Small exact rational: normalized so den > 0 and gcd(|num|, den) == 1.
// Intermediate products go through 128 bits to postpone overflow; the
// symbolic layer only ever folds desk-scale constants.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {} // NOLINT: implicit by design
    Rational(long long n, long long d) : num_(n), den_(d) {
        if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
        normalize();
    }

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_integer() const { return den_ == 1; }
    bool negative() const { return num_ < 0; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        long long g = std::gcd(a.den_, b.den_);
        long long lhs = checked(static_cast<__int128>(a.num_) * (b.den_ / g));
        long long rhs = checked(static_cast<__int128>(b.num_) * (a.den_ / g));
        long long den = checked(static_cast<__int128>(a.den_ / g) * b.den_);
        return Rational(lhs + rhs, den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        long long g1 = std::gcd(std::abs(a.num_), b.den_);
        long long g2 = std::gcd(std::abs(b.num_), a.den_);
        return Rational(checked(static_cast<__int128>(a.num_ / g1) * (b.num_ / g2)),
                        checked(static_cast<__int128>(a.den_ / g2) * (b.den_ / g1)));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::invalid_argument("rational division by zero");
        return a * Rational(b.den_, b.num_);
    }

    Rational pow(int e) const {
        if (e < 0) throw std::invalid_argument("negative rational exponent");
        Rational r(1);
        Rational base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(std::abs(num_), den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    static long long checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw std::overflow_error("rational constant overflow");
        return static_cast<long long>(v);
    }

    long long num_;
    long long den_;
};

} // namespace qaxiom
