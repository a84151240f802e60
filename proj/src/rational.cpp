#include "vb/rational.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace vb {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

void Rational::normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g != 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational& Rational::operator+=(const Rational& rhs) {
    if (den_ == rhs.den_) {
        num_ += rhs.num_;
    } else {
        num_ = num_ * rhs.den_ + rhs.num_ * den_;
        den_ *= rhs.den_;
    }
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    if (den_ == rhs.den_) {
        num_ -= rhs.num_;
    } else {
        num_ = num_ * rhs.den_ - rhs.num_ * den_;
        den_ *= rhs.den_;
    }
    normalize();
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    num_ *= rhs.num_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.num_ == 0) throw std::domain_error("rational division by zero");
    num_ *= rhs.den_;
    den_ *= rhs.num_;
    normalize();
    return *this;
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    BigInt lhs = a.num_ * b.den_;
    BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

double Rational::to_double() const {
    return num_.convert_to<double>() / den_.convert_to<double>();
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

BigInt floor(const Rational& x) {
    // cpp_int division truncates toward zero.
    BigInt q = x.num() / x.den();
    if (x.num() < 0 && q * x.den() != x.num()) q -= 1;
    return q;
}

BigInt ceil(const Rational& x) {
    BigInt q = x.num() / x.den();
    if (x.num() > 0 && q * x.den() != x.num()) q += 1;
    return q;
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    for (char c : digits) {
        if (c < '0' || c > '9') throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    BigInt v{std::string(digits)};
    return (!s.empty() && s.front() == '-') ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    std::string_view t = trim(text);
    auto slash = t.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(t, text));
    BigInt num = parse_integer(trim(t.substr(0, slash)), text);
    BigInt den = parse_integer(trim(t.substr(slash + 1)), text);
    if (den == 0) throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
    return Rational(std::move(num), std::move(den));
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

}  // namespace vb
