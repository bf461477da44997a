#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "entropy.hpp"
#include "rational.hpp"

// Stirling-side verification: log-factorial via recurrence shift plus the
// Stirling series (self-contained, no library gamma), the binomial asymptotic
// driven by the entropy function, exact multibinomial associativity, and the
// numeric 4-term functional equation of the entropy function itself.

namespace entrocover::asymptotics {

// log Gamma(m+1). Integer m up to 20 is summed exactly; otherwise the argument
// is shifted up until the Stirling series with terms through 1/z^5 is accurate
// at z = m+1, and the shift is removed with the recurrence.
inline double log_factorial(double m) {
    if (!(m > 0.0) || !std::isfinite(m)) throw std::domain_error("log_factorial requires m > 0");
    if (m <= 20.0 && m == std::floor(m)) {
        double s = 0.0;
        for (long long k = 2; k <= static_cast<long long>(m); ++k)
            s += std::log(static_cast<double>(k));
        return s;
    }
    double shift = 0.0;
    double x = m;
    while (x < 10.0) {
        x += 1.0;
        shift -= std::log(x);
    }
    const double z = x + 1.0;
    const double z2 = z * z;
    const double series = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) +
                          1.0 / (12.0 * z) - 1.0 / (360.0 * z * z2) +
                          1.0 / (1260.0 * z * z2 * z2);
    return series + shift;
}

struct AsymptoticReport {
    double a = 0.0;
    double b = 0.0;
    std::vector<long long> n_values;
    std::vector<double> exact_log;    // log binom(an, bn) through log-factorials
    std::vector<double> approx_log;   // n a Phi(b/a) + (1/2) log(a / (2 b (a-b) pi n))
    std::vector<double> scaled_error; // n * |exact - approx|
};

inline AsymptoticReport binomial_asymptotic_check(double a, double b,
                                                  const std::vector<long long>& n_values) {
    if (!(a > b && b > 0.0)) throw std::domain_error("binomial asymptotic requires a > b > 0");
    AsymptoticReport rep;
    rep.a = a;
    rep.b = b;
    const double phi_ba = entropy::real_regulator(b / a);
    for (long long n : n_values) {
        if (n < 10) throw std::domain_error("binomial asymptotic requires n >= 10");
        const double nd = static_cast<double>(n);
        const double exact =
            log_factorial(a * nd) - log_factorial(b * nd) - log_factorial((a - b) * nd);
        const double approx =
            nd * a * phi_ba +
            0.5 * std::log(a / (2.0 * b * (a - b) * std::numbers::pi * nd));
        rep.n_values.push_back(n);
        rep.exact_log.push_back(exact);
        rep.approx_log.push_back(approx);
        rep.scaled_error.push_back(nd * std::abs(exact - approx));
    }
    return rep;
}

inline BigInt factorial_exact(const BigInt& n) {
    if (n < 0) throw std::domain_error("factorial of a negative integer");
    BigInt acc = 1;
    for (BigInt k = 2; k <= n; ++k) acc *= k;
    return acc;
}

inline BigInt binomial_exact(const BigInt& n, const BigInt& k) {
    if (k < 0 || k > n) throw std::domain_error("binomial out of range");
    return factorial_exact(n) / (factorial_exact(k) * factorial_exact(BigInt(n - k)));
}

// binom((a+b+c)n, an) binom((b+c)n, bn) = binom((a+b+c)n, bn) binom((a+c)n, an)
// = ((a+b+c)n)! / ((an)! (bn)! (cn)!), all in exact integer arithmetic.
inline bool associativity_check(const BigRational& a, const BigRational& b, const BigRational& c,
                                long long n) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    auto part = [&](const BigRational& r) {
        BigRational v = r * n;
        if (denominator(v) != 1)
            throw std::domain_error("associativity check needs integral a*n, b*n, c*n");
        BigInt k = numerator(v);
        if (k <= 0) throw std::domain_error("associativity check needs positive parts");
        return k;
    };
    const BigInt an = part(a), bn = part(b), cn = part(c);
    const BigInt total = an + bn + cn;
    const BigInt first = binomial_exact(total, an) * binomial_exact(BigInt(bn + cn), bn);
    const BigInt second = binomial_exact(total, bn) * binomial_exact(BigInt(an + cn), an);
    const BigInt multinomial =
        factorial_exact(total) / (factorial_exact(an) * factorial_exact(bn) * factorial_exact(cn));
    return first == second && second == multinomial;
}

// |Phi(b) - Phi(a) + (1-b) Phi(a/(1-b)) - (1-a) Phi(b/(1-a))|, which is 0
// identically on the admissible region.
inline double entropy_4term_check(double a, double b) {
    if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0 && a + b < 1.0))
        throw std::domain_error("entropy 4-term check requires a, b, a+b in (0,1)");
    auto phi = [](double x) { return entropy::real_regulator(x); };
    const double lhs = phi(b) - phi(a) + (1.0 - b) * phi(a / (1.0 - b)) -
                       (1.0 - a) * phi(b / (1.0 - a));
    return std::abs(lhs);
}

}  // namespace entrocover::asymptotics
