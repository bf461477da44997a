#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <string>

namespace entrocover {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Complex number with exact rational real and imaginary parts.
// The exact scalar field for formal sums and certificates.
struct GaussianRational {
    BigRational re{0};
    BigRational im{0};

    GaussianRational() = default;
    GaussianRational(BigRational r) : re(std::move(r)) {}
    GaussianRational(BigRational r, BigRational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long long r) : re(r) {}
    GaussianRational(long long num, long long den) : re(BigRational(num, den)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {BigRational(a.re + b.re), BigRational(a.im + b.im)};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {BigRational(a.re - b.re), BigRational(a.im - b.im)};
    }
    GaussianRational operator-() const { return {BigRational(-re), BigRational(-im)}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {BigRational(a.re * b.re - a.im * b.im), BigRational(a.re * b.im + a.im * b.re)};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        BigRational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("GaussianRational: division by zero");
        return {BigRational((a.re * b.re + a.im * b.im) / n),
                BigRational((a.im * b.re - a.re * b.im) / n)};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

inline GaussianRational one_minus(const GaussianRational& x) {
    return GaussianRational{1} - x;
}

// Deterministic total order: (re num, re den, im num, im den), numerators and
// denominators compared as integers. Used to fix row order in the certificate solver.
inline int compare(const GaussianRational& a, const GaussianRational& b) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    auto cmp = [](const BigInt& x, const BigInt& y) { return x < y ? -1 : (y < x ? 1 : 0); };
    if (int c = cmp(numerator(a.re), numerator(b.re))) return c;
    if (int c = cmp(denominator(a.re), denominator(b.re))) return c;
    if (int c = cmp(numerator(a.im), numerator(b.im))) return c;
    return cmp(denominator(a.im), denominator(b.im));
}

inline bool operator<(const GaussianRational& a, const GaussianRational& b) {
    return compare(a, b) < 0;
}

inline std::string to_string(const BigRational& r) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

// Accepts "n" or "n/d", with optional sign; throws on anything else.
inline BigRational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
            throw std::invalid_argument("parse_rational: bad character in '" + s + "'");
    }
    try {
        return BigRational(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rational: cannot parse '" + s + "'");
    }
}

}  // namespace entrocover
