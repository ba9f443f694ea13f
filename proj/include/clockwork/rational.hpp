#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace clockwork {

/// Exact rational number, always kept in lowest terms with positive
/// denominator. Probabilities are rationals everywhere in this library, so
/// every equality downstream is decidable without tolerances.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long numerator) : v_(numerator) {}
    Rational(long numerator, long denominator);

    /// Accepts "p/q" or a plain integer "p".
    static Rational parse(const std::string& text);

    std::string str() const;

    long numerator_long() const { return static_cast<long>(v_.get_num().get_si()); }
    long denominator_long() const { return static_cast<long>(v_.get_den().get_si()); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_negative() const { return sgn(v_) < 0; }
    bool is_one() const { return v_ == 1; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;
};

inline Rational operator-(const Rational& a) { return Rational(0) - a; }

} // namespace clockwork
