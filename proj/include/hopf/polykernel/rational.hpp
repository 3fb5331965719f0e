#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hopf {

/// Exact rational number, always reduced with a positive denominator.
///
/// Values whose numerator and denominator fit in int64 are stored inline;
/// anything larger is promoted to a GMP rational and demoted again when a
/// result becomes small.
class Rational {
public:
    Rational() = default;
    Rational(int v) : num_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(long v) { from_i128(v, 1); }  // NOLINT(google-explicit-constructor)
    Rational(long long v) { from_i128(v, 1); }  // NOLINT(google-explicit-constructor)

    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        from_i128(n, d);
    }

    explicit Rational(const mpq_class& q) { assign_big(mpq_class(q)); }

    static Rational from_string(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational: bad literal '" + s + "'");
        q.canonicalize();
        if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
        return Rational(q);
    }

    Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            num_ = o.num_;
            den_ = o.den_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    [[nodiscard]] bool is_small() const { return !big_; }
    [[nodiscard]] bool is_zero() const { return !big_ && num_ == 0; }
    [[nodiscard]] bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    [[nodiscard]] bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
    [[nodiscard]] int sign() const {
        if (big_) return sgn(*big_);
        return (num_ > 0) - (num_ < 0);
    }

    [[nodiscard]] mpq_class to_mpq() const {
        if (big_) return *big_;
        mpq_class q(mpz_from(num_), mpz_from(den_));
        return q;
    }
    [[nodiscard]] mpz_class numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_from(num_); }
    [[nodiscard]] mpz_class denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_from(den_); }

    [[nodiscard]] double to_double() const {
        if (big_) return big_->get_d();
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    [[nodiscard]] std::string str() const {
        if (big_) return big_->get_str();
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    Rational operator-() const {
        if (!big_ && num_ != std::numeric_limits<std::int64_t>::min()) return raw(-num_, den_);
        return Rational(mpq_class(-to_mpq()));
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                std::int64_t r;
                if (!__builtin_add_overflow(a.num_, b.num_, &r) && r != kMin) return raw(r, 1);
            }
            using I = __int128;
            Rational out;
            out.from_i128(I(a.num_) * b.den_ + I(b.num_) * a.den_, I(a.den_) * b.den_);
            return out;
        }
        return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                std::int64_t r;
                if (!__builtin_mul_overflow(a.num_, b.num_, &r) && r != kMin) return raw(r, 1);
            }
            using I = __int128;
            Rational out;
            out.from_i128(I(a.num_) * b.num_, I(a.den_) * b.den_);
            return out;
        }
        return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        if (!a.big_ && !b.big_) {
            using I = __int128;
            Rational out;
            out.from_i128(I(a.num_) * b.den_, I(a.den_) * b.num_);
            return out;
        }
        return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        // Canonical form guarantees a big value never equals a small one.
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            using I = __int128;
            return I(a.num_) * b.den_ < I(b.num_) * a.den_;
        }
        return a.to_mpq() < b.to_mpq();
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    static constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;

    static Rational raw(std::int64_t n, std::int64_t d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }

    static mpz_class mpz_from(std::int64_t v) { return mpz_class(static_cast<long>(v)); }

    static mpz_class mpz_from_i128(__int128 v) {
        bool neg = v < 0;
        unsigned __int128 mag = neg ? static_cast<unsigned __int128>(0) - static_cast<unsigned __int128>(v)
                                    : static_cast<unsigned __int128>(v);
        std::uint64_t words[2] = {static_cast<std::uint64_t>(mag >> 64), static_cast<std::uint64_t>(mag)};
        mpz_class z;
        mpz_import(z.get_mpz_t(), 2, 1, sizeof(std::uint64_t), 0, 0, words);
        return neg ? mpz_class(-z) : z;
    }

    static unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
        while (b != 0) {
            unsigned __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    void from_i128(__int128 n, __int128 d) {
        big_.reset();
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) {
            num_ = 0;
            den_ = 1;
            return;
        }
        unsigned __int128 an = n < 0 ? static_cast<unsigned __int128>(0) - static_cast<unsigned __int128>(n)
                                     : static_cast<unsigned __int128>(n);
        unsigned __int128 g = gcd_u128(an, static_cast<unsigned __int128>(d));
        n /= static_cast<__int128>(g);
        d /= static_cast<__int128>(g);
        constexpr __int128 lo = std::numeric_limits<std::int64_t>::min() + 1;
        constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
        if (n >= lo && n <= hi && d <= hi) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            return;
        }
        mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
        big_ = std::make_unique<mpq_class>(std::move(q));
        num_ = 0;
        den_ = 1;
    }

    void assign_big(mpq_class q) {
        q.canonicalize();
        const mpz_class& n = q.get_num();
        const mpz_class& d = q.get_den();
        if (mpz_fits_slong_p(n.get_mpz_t()) && mpz_fits_slong_p(d.get_mpz_t()) &&
            n != std::numeric_limits<long>::min()) {
            big_.reset();
            num_ = n.get_si();
            den_ = d.get_si();
            return;
        }
        big_ = std::make_unique<mpq_class>(std::move(q));
        num_ = 0;
        den_ = 1;
    }
};

}  // namespace hopf
