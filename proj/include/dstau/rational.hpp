#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dstau {

/// Library-wide error type. Every failure the engine reports (invalid input,
/// truncation exhaustion, failed structural validation) is thrown as this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact rational number in lowest terms with positive denominator. Values
/// that fit in 64-bit numerator/denominator stay inline; larger ones are
/// promoted to GMP.
class Rational {
public:
    Rational() = default;
    Rational(long n) : n_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(long n, long d);
    explicit Rational(const mpq_class& q) { assign(q); }
    Rational(const Rational& o) : n_(o.n_), d_(o.d_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            n_ = o.n_;
            d_ = o.d_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    /// Parses "p", "-p" or "p/q".
    static Rational parse(std::string_view text);

    bool is_zero() const { return !big_ && n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }
    int sign() const { return big_ ? sgn(*big_) : (n_ > 0) - (n_ < 0); }

    mpz_class numerator() const;
    mpz_class denominator() const;
    /// Numerator as a machine integer; throws if it does not fit.
    long to_long() const;
    mpq_class to_mpq() const;

    /// "p" when the denominator is 1, otherwise "p/q".
    std::string str() const;

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // big values never fit inline
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    void assign(const mpq_class& q);
    bool set_small(__int128 n, __int128 d);

    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
    std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational factorial(int n);
Rational binomial(int n, int k);
Rational pow(const Rational& base, int exponent);

}  // namespace dstau
