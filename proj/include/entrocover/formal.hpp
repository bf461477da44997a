#pragma once

#include <complex>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>

#include "cover.hpp"
#include "entropy.hpp"
#include "fourterm.hpp"
#include "rational.hpp"

// Formal integer combinations of bracket generators for the three groups in
// play, their defining relation schemas, and the maps between them. Two scalar
// regimes exist and never mix: exact (GaussianRational) sums feed the
// certificate solver, approximate (complex<double>) sums exist for numeric
// spot checks.

namespace entrocover::formal {

using Complex = std::complex<double>;

enum class Group { beta2, tb2, ext_beta2 };

inline const char* group_name(Group g) {
    switch (g) {
        case Group::beta2: return "beta2";
        case Group::tb2: return "tb2";
        case Group::ext_beta2: return "ext";
    }
    throw std::logic_error("unknown group");
}

template <class K>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return GaussianRational{1}; }
    static GaussianRational from_int(long long n) { return GaussianRational{n}; }
    static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
    static bool is_one(const GaussianRational& x) { return x == one(); }
    static int compare(const GaussianRational& a, const GaussianRational& b) {
        return entrocover::compare(a, b);
    }
    static Complex to_complex(const GaussianRational& x) { return x.to_complex(); }
    static std::string str(const GaussianRational& x) {
        if (x.im == 0) return to_string(x.re);
        return to_string(x.re) + (x.im > 0 ? "+" : "") + to_string(x.im) + "i";
    }
};

template <>
struct ScalarTraits<Complex> {
    static Complex zero() { return {}; }
    static Complex one() { return {1.0, 0.0}; }
    static Complex from_int(long long n) { return {static_cast<double>(n), 0.0}; }
    static bool is_zero(const Complex& x) { return x == Complex{}; }
    static bool is_one(const Complex& x) { return x == one(); }
    static int compare(const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real() ? -1 : 1;
        if (a.imag() != b.imag()) return a.imag() < b.imag() ? -1 : 1;
        return 0;
    }
    static Complex to_complex(const Complex& x) { return x; }
    static std::string str(const Complex& x) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", x.real(), x.imag());
        return buf;
    }
};

// Bracket generator. weight is the multiplicative prefactor of the tb2 star
// action (1 elsewhere); p, q are branch data for ext_beta2 (0 elsewhere).
template <class K>
struct Generator {
    Group group = Group::beta2;
    K argument{};
    K weight{};
    long long p = 0;
    long long q = 0;
};

template <class K>
int compare(const Generator<K>& a, const Generator<K>& b) {
    using T = ScalarTraits<K>;
    if (a.group != b.group) return static_cast<int>(a.group) < static_cast<int>(b.group) ? -1 : 1;
    if (int c = T::compare(a.argument, b.argument)) return c;
    if (int c = T::compare(a.weight, b.weight)) return c;
    if (a.p != b.p) return a.p < b.p ? -1 : 1;
    return a.q < b.q ? -1 : (b.q < a.q ? 1 : 0);
}

template <class K>
struct GeneratorLess {
    bool operator()(const Generator<K>& a, const Generator<K>& b) const {
        return compare(a, b) < 0;
    }
};

template <class K>
bool operator==(const Generator<K>& a, const Generator<K>& b) {
    return compare(a, b) == 0;
}

namespace detail {

template <class K>
void require_doubly_punctured(const K& arg) {
    using T = ScalarTraits<K>;
    if (T::is_zero(arg) || T::is_one(arg))
        throw std::domain_error("bracket argument must avoid 0 and 1");
}

}  // namespace detail

template <class K>
Generator<K> gen_beta2(const K& arg) {
    detail::require_doubly_punctured(arg);
    return {Group::beta2, arg, ScalarTraits<K>::one(), 0, 0};
}

template <class K>
Generator<K> gen_tb2(const K& weight, const K& arg) {
    detail::require_doubly_punctured(arg);
    if (ScalarTraits<K>::is_zero(weight))
        throw std::domain_error("tb2 star weight must be nonzero");
    return {Group::tb2, arg, weight, 0, 0};
}

template <class K>
Generator<K> gen_ext(const K& arg, long long p, long long q) {
    detail::require_doubly_punctured(arg);
    if (p % 2 || q % 2) throw std::invalid_argument("branch data must be even");
    return {Group::ext_beta2, arg, ScalarTraits<K>::one(), p, q};
}

template <class K>
struct FormalSum {
    std::map<Generator<K>, K, GeneratorLess<K>> terms;

    void add_term(const Generator<K>& g, const K& c) {
        if (ScalarTraits<K>::is_zero(c)) return;
        auto [it, fresh] = terms.emplace(g, c);
        if (!fresh) {
            it->second += c;
            if (ScalarTraits<K>::is_zero(it->second)) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }

    FormalSum& operator+=(const FormalSum& o) {
        for (const auto& [g, c] : o.terms) add_term(g, c);
        return *this;
    }
    FormalSum& operator-=(const FormalSum& o) {
        for (const auto& [g, c] : o.terms) add_term(g, -c);
        return *this;
    }
    friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
    friend FormalSum operator-(FormalSum a, const FormalSum& b) { return a -= b; }
    FormalSum operator-() const {
        FormalSum out;
        for (const auto& [g, c] : terms) out.terms.emplace(g, -c);
        return out;
    }
    FormalSum scaled(const K& s) const {
        FormalSum out;
        if (ScalarTraits<K>::is_zero(s)) return out;
        for (const auto& [g, c] : terms) out.terms.emplace(g, K(c * s));
        return out;
    }
    friend bool operator==(const FormalSum& a, const FormalSum& b) {
        if (a.terms.size() != b.terms.size()) return false;
        auto ia = a.terms.begin();
        for (const auto& [g, c] : b.terms) {
            if (!(ia->first == g) || !(ia->second == c)) return false;
            ++ia;
        }
        return true;
    }
};

using FormalSumX = FormalSum<GaussianRational>;
using FormalSumA = FormalSum<Complex>;

template <class K>
FormalSum<K> singleton(const Generator<K>& g, const K& c) {
    FormalSum<K> s;
    s.add_term(g, c);
    return s;
}

enum class Schema { beta2_four_term, tb2_four_term, ext_four_term, transfer_p, transfer_q };

inline const char* schema_name(Schema s) {
    switch (s) {
        case Schema::beta2_four_term: return "beta2-4term";
        case Schema::tb2_four_term: return "tb2-4term";
        case Schema::ext_four_term: return "ext-4term";
        case Schema::transfer_p: return "transfer-p";
        case Schema::transfer_q: return "transfer-q";
    }
    throw std::logic_error("unknown schema");
}

template <class K>
struct RelationInstance {
    Schema schema;
    std::string label;  // deterministic human-readable parameter listing
    FormalSum<K> sum;
};

// <a> - <b> + a <b/a> + (1-a) <(1-b)/(1-a)> ; requires every argument in F**.
template <class K>
RelationInstance<K> beta2_four_term(const K& a, const K& b) {
    using T = ScalarTraits<K>;
    const K one = T::one();
    const K ba = b / a;
    const K cd = (one - b) / (one - a);
    FormalSum<K> s;
    s.add_term(gen_beta2(a), one);
    s.add_term(gen_beta2(b), -one);
    s.add_term(gen_beta2(ba), a);
    s.add_term(gen_beta2(cd), one - a);
    return {Schema::beta2_four_term, "b2(" + T::str(a) + "," + T::str(b) + ")", std::move(s)};
}

// Same shape with the scalar action moved into the star weight:
// <1*a> - <1*b> + <a * b/a> + <(1-a) * (1-b)/(1-a)>.
template <class K>
RelationInstance<K> tb2_four_term(const K& a, const K& b) {
    using T = ScalarTraits<K>;
    const K one = T::one();
    const K ba = b / a;
    const K cd = (one - b) / (one - a);
    FormalSum<K> s;
    s.add_term(gen_tb2(one, a), one);
    s.add_term(gen_tb2(one, b), -one);
    s.add_term(gen_tb2(a, ba), one);
    s.add_term(gen_tb2(one - a, cd), one);
    return {Schema::tb2_four_term, "t2(" + T::str(a) + "," + T::str(b) + ")", std::move(s)};
}

namespace detail {

template <class K>
bool positive_imag(const K& z);

template <>
inline bool positive_imag<GaussianRational>(const GaussianRational& z) {
    return z.im > 0;
}
template <>
inline bool positive_imag<Complex>(const Complex& z) {
    return z.imag() > 0.0;
}

template <class K>
bool is_real(const K& z);

template <>
inline bool is_real<GaussianRational>(const GaussianRational& z) {
    return z.im == 0;
}
template <>
inline bool is_real<Complex>(const Complex& z) {
    return z.imag() == 0.0;
}

template <class K>
bool real_ordered_region(const K& x0, const K& x1) {
    // 0 < x0 < x1 < x0 + x1 < 1, all real
    if (!is_real(x0) || !is_real(x1)) return false;
    using T = ScalarTraits<K>;
    const Complex a = T::to_complex(x0), b = T::to_complex(x1);
    return 0.0 < a.real() && a.real() < b.real() && a.real() + b.real() < 1.0;
}

template <class K>
bool real_ordered_region_exact(const K& x0, const K& x1);

template <>
inline bool real_ordered_region_exact<GaussianRational>(const GaussianRational& x0,
                                                        const GaussianRational& x1) {
    if (x0.im != 0 || x1.im != 0) return false;
    return 0 < x0.re && x0.re < x1.re && x0.re + x1.re < 1;
}
template <>
inline bool real_ordered_region_exact<Complex>(const Complex& x0, const Complex& x1) {
    return real_ordered_region(x0, x1);
}

}  // namespace detail

// Lifted four-term relation instance
//   <x0;p0,q0> - <x1;p1,q1> + (1-x0) <x2;.,.> - (1-x1) <x3;.,.>
// with branch data lattice_vector(v, variant). The base tuple must lie in the
// real ordered region (lifted from branch zero) or have all four coordinates
// in the upper half-plane; anything else is not a relation and is rejected.
template <class K>
RelationInstance<K> ext_four_term(const K& x0, const K& x1, const fourterm::LatticeParams& v,
                                  fourterm::BranchVariant variant = fourterm::kAnnihilatedVariant) {
    using T = ScalarTraits<K>;
    const K one = T::one();
    const K x2 = x1 / (one - x0);
    const K x3 = x0 / (one - x1);
    for (const K* z : {&x0, &x1, &x2, &x3}) detail::require_doubly_punctured(*z);

    const bool real_ok = detail::real_ordered_region_exact(x0, x1);
    const bool upper_ok = detail::positive_imag(x0) && detail::positive_imag(x1) &&
                          detail::positive_imag(x2) && detail::positive_imag(x3);
    if (!real_ok && !upper_ok)
        throw std::domain_error(
            "ext four-term tuple must lie in the real ordered region or the upper-half-plane region");

    const auto branch = fourterm::lattice_vector(v, variant);
    FormalSum<K> s;
    s.add_term(gen_ext(x0, branch[0].dp, branch[0].dq), one);
    s.add_term(gen_ext(x1, branch[1].dp, branch[1].dq), -one);
    s.add_term(gen_ext(x2, branch[2].dp, branch[2].dq), one - x0);
    s.add_term(gen_ext(x3, branch[3].dp, branch[3].dq), -(one - x1));

    char params[96];
    std::snprintf(params, sizeof params, ";%lld,%lld,%lld,%lld,%lld)", v.p0, v.q0, v.p1, v.q1,
                  v.r);
    return {Schema::ext_four_term, "ext(" + T::str(x0) + "," + T::str(x1) + params,
            std::move(s)};
}

// <x;p,q> - <x;p,q'> - <x;p,q-2> + <x;p,q'-2>
template <class K>
RelationInstance<K> transfer_q(const K& x, long long p, long long q, long long qp) {
    using T = ScalarTraits<K>;
    const K one = T::one();
    FormalSum<K> s;
    s.add_term(gen_ext(x, p, q), one);
    s.add_term(gen_ext(x, p, qp), -one);
    s.add_term(gen_ext(x, p, q - 2), -one);
    s.add_term(gen_ext(x, p, qp - 2), one);
    char params[64];
    std::snprintf(params, sizeof params, ";%lld,%lld,%lld)", p, q, qp);
    return {Schema::transfer_q, "tq(" + T::str(x) + params, std::move(s)};
}

// <x;p,q> - <x;p',q> - <x;p-2,q> + <x;p'-2,q>
template <class K>
RelationInstance<K> transfer_p(const K& x, long long p, long long pp, long long q) {
    using T = ScalarTraits<K>;
    const K one = T::one();
    FormalSum<K> s;
    s.add_term(gen_ext(x, p, q), one);
    s.add_term(gen_ext(x, pp, q), -one);
    s.add_term(gen_ext(x, p - 2, q), -one);
    s.add_term(gen_ext(x, pp - 2, q), one);
    char params[64];
    std::snprintf(params, sizeof params, ";%lld,%lld,%lld)", p, pp, q);
    return {Schema::transfer_p, "tp(" + T::str(x) + params, std::move(s)};
}

// Forgets branch data: <x;p,q> -> <x>.
template <class K>
FormalSum<K> pi_map(const FormalSum<K>& s) {
    FormalSum<K> out;
    for (const auto& [g, c] : s.terms) {
        if (g.group != Group::ext_beta2)
            throw std::domain_error("pi_map expects a sum over ext generators");
        out.add_term(gen_beta2(g.argument), c);
    }
    return out;
}

// z (<1/2;2,-2> - <1/2;0,0>); spans the kernel of pi composed with the section.
template <class K>
FormalSum<K> chi_map(const K& z) {
    using T = ScalarTraits<K>;
    const K half = T::one() / T::from_int(2);
    FormalSum<K> s;
    s.add_term(gen_ext(half, 2, -2), z);
    s.add_term(gen_ext(half, 0, 0), -z);
    return s;
}

// c = <x;2,-2> - <x;0,0>; its regulator is -2*pi*i independently of x.
template <class K>
FormalSum<K> kernel_constant(const K& x) {
    using T = ScalarTraits<K>;
    FormalSum<K> s;
    s.add_term(gen_ext(x, 2, -2), T::one());
    s.add_term(gen_ext(x, 0, 0), -T::one());
    return s;
}

// {x} = -1/(1-x) (<x;0,2> - <x;0,0>)
template <class K>
FormalSum<K> curly_bracket(const K& x) {
    using T = ScalarTraits<K>;
    const K c = -T::one() / (T::one() - x);
    FormalSum<K> s;
    s.add_term(gen_ext(x, 0, 2), c);
    s.add_term(gen_ext(x, 0, 0), -c);
    return s;
}

// Expansion of <x;p,q> over the four corner generators <x;{0,2}x{0,2}>:
// (1/4)(pq <x;2,2> - p(q-2) <x;2,0> - q(p-2) <x;0,2> + (pq-2p-2q+4) <x;0,0>).
template <class K>
FormalSum<K> corner_expansion(const K& x, long long p, long long q) {
    using T = ScalarTraits<K>;
    if (p % 2 || q % 2) throw std::invalid_argument("branch data must be even");
    const K quarter = T::one() / T::from_int(4);
    FormalSum<K> s;
    s.add_term(gen_ext(x, 2, 2), K(T::from_int(p * q) * quarter));
    s.add_term(gen_ext(x, 2, 0), K(T::from_int(-p * (q - 2)) * quarter));
    s.add_term(gen_ext(x, 0, 2), K(T::from_int(-q * (p - 2)) * quarter));
    s.add_term(gen_ext(x, 0, 0), K(T::from_int(p * q - 2 * p - 2 * q + 4) * quarter));
    return s;
}

// Numeric regulator of an ext sum; arguments on a cut use the limit from above.
template <class K>
Complex regulator(const FormalSum<K>& s) {
    Complex total{};
    for (const auto& [g, c] : s.terms) {
        if (g.group != Group::ext_beta2)
            throw std::domain_error("regulator expects a sum over ext generators");
        const Complex z = ScalarTraits<K>::to_complex(g.argument);
        const cover::CutSide side = cover::on_cut(z) ? cover::CutSide::above : cover::CutSide::none;
        total += ScalarTraits<K>::to_complex(c) *
                 entropy::entropy_cover(cover::make_cover_point(z, side, g.p, g.q));
    }
    return total;
}

}  // namespace entrocover::formal
