#include "dstau/rational.hpp"

#include <limits>
#include <ostream>

namespace dstau {

namespace {

using i128 = __int128;

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class to_mpz(std::int64_t v) {
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
    return z;
}

}  // namespace

// Stores n/d if both fit after reduction; d != 0 is assumed.
bool Rational::set_small(i128 n, i128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (d == 1) {
        if (n > kMax || n < -kMax) return false;
        n_ = static_cast<std::int64_t>(n);
        d_ = 1;
        big_.reset();
        return true;
    }
    if (n <= kMax && n >= -kMax && d <= kMax) {
        std::uint64_t un = static_cast<std::uint64_t>(n < 0 ? -n : n);
        std::uint64_t g = std::gcd(un, static_cast<std::uint64_t>(d));
        if (n == 0) g = static_cast<std::uint64_t>(d);
        n_ = static_cast<std::int64_t>(n / static_cast<i128>(g));
        d_ = static_cast<std::int64_t>(d / static_cast<i128>(g));
        big_.reset();
        return true;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n == 0) d = 1;
    if (n > kMax || n < -kMax || d > kMax) return false;
    n_ = static_cast<std::int64_t>(n);
    d_ = static_cast<std::int64_t>(d);
    big_.reset();
    return true;
}

void Rational::assign(const mpq_class& q0) {
    mpq_class q = q0;
    q.canonicalize();
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
        n_ = q.get_num().get_si();
        d_ = q.get_den().get_si();
        big_.reset();
    } else {
        n_ = 0;
        d_ = 1;
        big_ = std::make_unique<mpq_class>(q);
    }
}

Rational::Rational(long n, long d) {
    if (d == 0) throw Error("rational with zero denominator");
    if (!set_small(n, d)) assign(mpq_class(n, d));
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw Error("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw Error("malformed rational literal '" + s + "'");
    if (q.get_den() == 0) throw Error("rational with zero denominator");
    return Rational(q);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    mpq_class q(to_mpz(n_), to_mpz(d_));
    return q;
}

mpz_class Rational::numerator() const { return big_ ? mpz_class(big_->get_num()) : to_mpz(n_); }
mpz_class Rational::denominator() const { return big_ ? mpz_class(big_->get_den()) : to_mpz(d_); }

long Rational::to_long() const {
    if (!is_integer()) throw Error("rational " + str() + " is not an integer");
    if (big_) throw Error("integer " + str() + " out of range");
    return static_cast<long>(n_);
}

std::string Rational::str() const {
    if (big_) {
        if (big_->get_den() == 1) return big_->get_num().get_str();
        return big_->get_num().get_str() + "/" + big_->get_den().get_str();
    }
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
}

Rational& Rational::operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (d_ == o.d_) {
            if (set_small(static_cast<i128>(n_) + o.n_, d_)) return *this;
        } else if (set_small(static_cast<i128>(n_) * o.d_ + static_cast<i128>(o.n_) * d_,
                             static_cast<i128>(d_) * o.d_)) {
            return *this;
        }
    }
    assign(to_mpq() + o.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (n_ == 0 || o.n_ == 0) {
            n_ = 0;
            d_ = 1;
            return *this;
        }
        if (set_small(static_cast<i128>(n_) * o.n_, static_cast<i128>(d_) * o.d_)) return *this;
    }
    assign(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("division by zero");
    if (!big_ && !o.big_ && set_small(static_cast<i128>(n_) * o.d_, static_cast<i128>(d_) * o.n_)) return *this;
    assign(to_mpq() / o.to_mpq());
    return *this;
}

Rational Rational::operator-() const {
    Rational r;
    if (big_ || n_ == std::numeric_limits<std::int64_t>::min()) {
        r.assign(-to_mpq());
    } else {
        r.n_ = -n_;
        r.d_ = d_;
    }
    return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        i128 l = static_cast<i128>(a.n_) * b.d_;
        i128 r = static_cast<i128>(b.n_) * a.d_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational factorial(int n) {
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rational(mpq_class(f));
}

Rational binomial(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(mpq_class(b));
}

Rational pow(const Rational& base, int exponent) {
    if (exponent < 0) return Rational(1) / pow(base, -exponent);
    Rational r(1);
    Rational b = base;
    while (exponent > 0) {
        if (exponent & 1) r *= b;
        b *= b;
        exponent >>= 1;
    }
    return r;
}

}  // namespace dstau
