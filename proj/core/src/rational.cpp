#include "divlab/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace divlab {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

mpz_class parse_integer(std::string_view s) {
    if (!is_integer_literal(s)) {
        throw std::invalid_argument("invalid integer literal '" + std::string(s) + "'");
    }
    std::string digits(s);
    if (digits[0] == '+') digits.erase(0, 1);
    return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(long num, long den) : value_(num, den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    value_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty rational literal");

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const mpz_class num = parse_integer(text.substr(0, slash));
        const mpz_class den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        return Rational(num, den);
    }
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        bool negative = false;
        if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
            negative = whole[0] == '-';
            whole.remove_prefix(1);
        }
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !is_integer_literal(whole)) ||
            (!frac.empty() && !is_integer_literal(frac)) || (!frac.empty() && (frac[0] == '-' || frac[0] == '+'))) {
            throw std::invalid_argument("invalid decimal literal '" + std::string(text) + "'");
        }
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class num = whole.empty() ? mpz_class(0) : parse_integer(whole);
        num = num * scale + (frac.empty() ? mpz_class(0) : parse_integer(frac));
        if (negative) num = -num;
        return Rational(num, scale);
    }
    return Rational(parse_integer(text), mpz_class(1));
}

std::string Rational::str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return Rational(value_.get_den(), value_.get_num());
}

mpz_class Rational::ceil() const {
    mpz_class out;
    mpz_cdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return out;
}

mpz_class Rational::floor() const {
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return out;
}

Rational Rational::pow(const Rational& base, int exponent) {
    const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -static_cast<long>(exponent) : exponent);
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), base.value_.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.value_.get_den_mpz_t(), e);
    Rational out(num, den);
    return exponent < 0 ? out.inverse() : out;
}

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("division by zero");
    value_ /= rhs.value_;
    return *this;
}

std::size_t RationalHash::operator()(const Rational& r) const {
    const std::size_t num = mpz_get_ui(r.raw().get_num_mpz_t());
    const std::size_t den = mpz_get_ui(r.raw().get_den_mpz_t());
    return (num * 0x9E3779B97F4A7C15ull) ^ (den + (num << 6) + (num >> 2)) ^ static_cast<std::size_t>(r.sign() < 0);
}

}  // namespace divlab
