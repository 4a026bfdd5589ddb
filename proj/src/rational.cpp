#include "dsa/rational.hpp"

#include <ostream>

namespace dsa {

Rational::Rational(long num, long den) {
    if (den == 0) throw Error("rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    if (text.empty()) throw Error("rational: empty string");
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            mpq_class q(std::string(text), 10);
            q.canonicalize();
            return Rational(std::move(q));
        }
        const mpz_class num(std::string(text.substr(0, slash)), 10);
        const mpz_class den(std::string(text.substr(slash + 1)), 10);
        if (den == 0) throw Error("rational: zero denominator in \"" + std::string(text) + "\"");
        mpq_class q(num, den);
        q.canonicalize();
        return Rational(std::move(q));
    } catch (const std::invalid_argument&) {
        throw Error("rational: cannot parse \"" + std::string(text) + "\"");
    }
}

std::string Rational::str() const {
    if (den() == 1) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace dsa
