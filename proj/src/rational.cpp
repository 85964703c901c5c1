#include "frl/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace frl {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    q_ /= o.q_;
    return *this;
}

Rational Rational::from_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("non-finite value has no rational form");
    return Rational(mpq_class(v));
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    auto bad = [&] { return std::invalid_argument("not a number: '" + std::string(text) + "'"); };
    if (s.empty()) throw bad();

    if (s.find('/') != std::string::npos) {
        mpq_class q;
        if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw bad();
        q.canonicalize();
        return Rational(q);
    }

    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
    mpz_class mantissa = 0;
    long scale = 0;  // value = mantissa * 10^scale
    bool digits = false, dot = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c >= '0' && c <= '9') {
            mantissa = mantissa * 10 + (c - '0');
            if (dot) --scale;
            digits = true;
        } else if (c == '.' && !dot) {
            dot = true;
        } else {
            break;
        }
    }
    if (!digits) throw bad();
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw bad();
        ++i;
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(s.substr(i), &used);
        } catch (const std::exception&) {
            throw bad();
        }
        if (i + used != s.size() || e > 4000 || e < -4000) throw bad();
        scale += e;
    }
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    mpq_class q = scale < 0 ? mpq_class(mantissa, p10) : mpq_class(mantissa * p10);
    q.canonicalize();
    if (negative) q = -q;
    return Rational(q);
}

Rational sqrt_lower(const Rational& x) {
    if (x.sign() < 0) throw std::domain_error("sqrt of negative rational");
    const mpz_class& num = x.raw().get_num();
    const mpz_class& den = x.raw().get_den();
    // sqrt(p/q) = sqrt(p*q)/q; scale by 2^64 before the integer floor sqrt.
    mpz_class scaled = num * den;
    scaled <<= 128;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    mpz_class denom = den;
    denom <<= 64;
    return Rational(mpq_class(root, denom));
}

std::string round_decimal(const Rational& x, int digits) {
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const mpq_class scaled = x.raw() * p10;
    const bool negative = sgn(scaled) < 0;
    const mpz_class num = abs(scaled.get_num());
    const mpz_class& den = scaled.get_den();
    mpz_class quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const int half = cmp(mpz_class(rem * 2), den);
    if (half > 0 || (half == 0 && mpz_odd_p(quot.get_mpz_t()))) quot += 1;

    std::string s = quot.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
        s.insert(s.size() - digits, ".");
    }
    if (negative && quot != 0) s.insert(0, "-");
    return s;
}

} // namespace frl
