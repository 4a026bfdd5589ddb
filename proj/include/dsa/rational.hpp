// rational.hpp -- exact rational scalar used throughout the toolkit.
//
// A thin value wrapper over GMP's mpq_class. Construction canonicalizes, so a
// Rational is always in lowest terms with a positive denominator. The type is
// registered as an Eigen scalar below, which is what makes exact stochastic
// matrices (Eigen::Matrix<Rational, ...>) possible.

#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dsa {

/// Error type for all domain failures (bad dimensions, invalid inputs, ...).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(long num, long den);
    explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    /// Parses "p/q" or the integer shorthand "p". Throws Error on malformed
    /// input or a zero denominator.
    static Rational parse(std::string_view text);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    double to_double() const { return v_.get_d(); }

    /// "p/q", or just "p" when the denominator is 1.
    std::string str() const;

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
    mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r);

using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

}  // namespace dsa

namespace Eigen {

template <>
struct NumTraits<dsa::Rational> : GenericNumTraits<dsa::Rational> {
    typedef dsa::Rational Real;
    typedef dsa::Rational NonInteger;
    typedef dsa::Rational Nested;
    typedef dsa::Rational Literal;

    static inline Real epsilon() { return dsa::Rational(0); }
    static inline Real dummy_precision() { return dsa::Rational(0); }
    static inline int digits10() { return 0; }

    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 60,
        MulCost = 40,
    };
};

}  // namespace Eigen
