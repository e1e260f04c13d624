#pragma once

// Exact rational numbers. Arbitrary precision, always in lowest terms with a
// positive denominator. Backed by boost::multiprecision::cpp_rational.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dynsig {

class Rational {
public:
    using Integer = boost::multiprecision::cpp_int;

    Rational() = default;
    Rational(std::int64_t n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        Integer num(n), den(d);
        if (den < 0) {
            num = -num;
            den = -den;
        }
        v_ = Impl(num, den);
    }

    /// Parses "p/q" or "n" (optional leading '-').
    static Rational parse(std::string_view text) {
        auto bad = [&] { return std::invalid_argument("not a rational: \"" + std::string(text) + "\""); };
        if (text.empty()) throw bad();
        auto slash = text.find('/');
        auto parse_int = [&](std::string_view s, bool allow_sign) {
            std::size_t i = 0;
            if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
            if (i == s.size()) throw bad();
            for (std::size_t k = i; k < s.size(); ++k)
                if (s[k] < '0' || s[k] > '9') throw bad();
            return Integer(std::string(s));
        };
        Rational r;
        if (slash == std::string_view::npos) {
            r.v_ = Impl(parse_int(text, true));
        } else {
            Integer num = parse_int(text.substr(0, slash), true);
            Integer den = parse_int(text.substr(slash + 1), false);
            if (den == 0) throw bad();
            r.v_ = Impl(num, den);
        }
        return r;
    }

    Integer numerator() const { return boost::multiprecision::numerator(v_); }
    Integer denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_.is_zero(); }
    int sign() const { return v_.sign(); }

    std::string str() const {
        auto den = denominator();
        if (den == 1) return numerator().str();
        return numerator().str() + "/" + den.str();
    }

    double to_double() const { return v_.convert_to<double>(); }

    /// Fixed-point decimal approximation, for display only.
    std::string decimal(int places = 6) const {
        std::ostringstream os;
        os << std::fixed << std::setprecision(places) << to_double();
        return os.str();
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = a.v_.compare(b.v_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    std::size_t hash() const { return std::hash<std::string>{}(str()); }

private:
    using Impl = boost::multiprecision::cpp_rational;
    Impl v_;
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace dynsig
