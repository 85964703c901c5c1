#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace frl {

// Exact rational number. All objective values, proportions and bounds are
// carried as Rationals; doubles appear only at display time.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t v) : q_(static_cast<long>(v)) {}  // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    // Accepts "7", "-0.25", "1e-6", "3.5E+2" and "p/q".
    static Rational parse(std::string_view text);
    // Exact value of a finite double.
    static Rational from_double(double v);

    double to_double() const { return q_.get_d(); }
    std::string str() const { return q_.get_str(); }  // "p/q" or "p"
    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    const mpq_class& raw() const { return q_; }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// ⌊x⌋₊ = max(x, 0)
inline Rational positive_part(const Rational& x) { return x.sign() > 0 ? x : Rational(0); }

// Largest multiple of 2^-64/den(x) not exceeding sqrt(x); x >= 0.
Rational sqrt_lower(const Rational& x);

// Decimal rendering rounded half-to-even, e.g. round_decimal(978/1509, 2) == "0.65".
std::string round_decimal(const Rational& x, int digits);

} // namespace frl
