#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace vb {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;

    template <std::integral I>
    Rational(I value) : num_(value), den_(1) {}  // NOLINT: implicit by intent

    template <std::integral I, std::integral J>
    Rational(I num, J den) : num_(num), den_(den) { normalize(); }

    explicit Rational(BigInt num) : num_(std::move(num)), den_(1) {}
    Rational(BigInt num, BigInt den);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_.sign(); }

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;
    Rational operator+() const { return *this; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    // "p/q", or "p" when q = 1.
    std::string str() const;

    double to_double() const;

private:
    void normalize();

    BigInt num_{0};
    BigInt den_{1};
};

Rational abs(const Rational& x);
BigInt floor(const Rational& x);
BigInt ceil(const Rational& x);

// Accepts "p", "-p", "p/q"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Rational& x);

// Dense column vector of rationals; the common currency for intersection data.
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace vb

namespace Eigen {

template <>
struct NumTraits<vb::Rational> : GenericNumTraits<vb::Rational> {
    using Real = vb::Rational;
    using NonInteger = vb::Rational;
    using Nested = vb::Rational;
    using Literal = vb::Rational;

    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 50,
        MulCost = 50
    };

    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
