#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "formal.hpp"
#include "rational.hpp"

// Exact linear-algebra certificates: express a target formal sum as a
// rational combination of relation instances from a finite pool. Everything
// here runs over Gaussian rationals; NotFound means "not in the span of this
// pool", never "not provable".

namespace entrocover::certificates {

using formal::FormalSumX;
using formal::Generator;
using formal::GeneratorLess;
using ExactRelation = formal::RelationInstance<GaussianRational>;

struct Certificate {
    std::vector<GaussianRational> coefficients;  // one per pool entry
};

namespace detail {

inline void require_single_group(const FormalSumX& target, const std::vector<ExactRelation>& pool) {
    std::optional<formal::Group> seen;
    auto visit = [&](const FormalSumX& s) {
        for (const auto& [g, c] : s.terms) {
            if (!seen) seen = g.group;
            else if (*seen != g.group)
                throw std::domain_error("certificate target and pool must live in one group");
        }
    };
    visit(target);
    for (const auto& rel : pool) visit(rel.sum);
}

}  // namespace detail

// Gauss-Jordan over Gaussian rationals, generators as coordinates. Pivoting is
// first-nonzero in column order, free variables are set to zero, so the result
// is deterministic for a fixed pool order.
inline std::optional<Certificate> find_certificate(const FormalSumX& target,
                                                   const std::vector<ExactRelation>& pool) {
    detail::require_single_group(target, pool);

    std::map<Generator<GaussianRational>, std::size_t, GeneratorLess<GaussianRational>> row_of;
    auto index = [&](const FormalSumX& s) {
        for (const auto& [g, c] : s.terms) row_of.emplace(g, 0);
    };
    index(target);
    for (const auto& rel : pool) index(rel.sum);
    std::size_t n = 0;
    for (auto& [g, r] : row_of) r = n++;

    const std::size_t m = pool.size();
    std::vector<std::vector<GaussianRational>> a(n, std::vector<GaussianRational>(m + 1));
    for (std::size_t j = 0; j < m; ++j)
        for (const auto& [g, c] : pool[j].sum.terms) a[row_of.at(g)][j] = c;
    for (const auto& [g, c] : target.terms) a[row_of.at(g)][m] = c;

    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < n; ++col) {
        std::size_t piv = rank;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) continue;
        std::swap(a[rank], a[piv]);
        const GaussianRational inv = GaussianRational{1} / a[rank][col];
        for (std::size_t k = col; k <= m; ++k) a[rank][k] = a[rank][k] * inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == rank || a[i][col].is_zero()) continue;
            const GaussianRational f = a[i][col];
            for (std::size_t k = col; k <= m; ++k) a[i][k] = a[i][k] - f * a[rank][k];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t i = rank; i < n; ++i)
        if (!a[i][m].is_zero()) return std::nullopt;

    Certificate cert;
    cert.coefficients.assign(m, GaussianRational{});
    for (std::size_t r = 0; r < rank; ++r) cert.coefficients[pivot_col[r]] = a[r][m];
    return cert;
}

// Exact recomputation: sum of coefficient * relation minus target is the zero sum.
inline bool verify_certificate(const FormalSumX& target, const std::vector<ExactRelation>& pool,
                               const Certificate& cert) {
    if (cert.coefficients.size() != pool.size()) return false;
    FormalSumX acc;
    for (std::size_t j = 0; j < pool.size(); ++j)
        acc += pool[j].sum.scaled(cert.coefficients[j]);
    acc -= target;
    return acc.is_zero();
}

struct CertificateProblem {
    std::string name;
    FormalSumX target;
    std::vector<ExactRelation> pool;
};

inline std::optional<Certificate> find_certificate(const CertificateProblem& p) {
    return find_certificate(p.target, p.pool);
}
inline bool verify_certificate(const CertificateProblem& p, const Certificate& c) {
    return verify_certificate(p.target, p.pool, c);
}

namespace detail {

inline GaussianRational rat(long long num, long long den = 1) {
    return GaussianRational{BigRational(num, den)};
}

inline FormalSumX ext_singleton(const GaussianRational& x, long long p, long long q,
                                const GaussianRational& c) {
    return formal::singleton(formal::gen_ext(x, p, q), c);
}

// Second differences of the branch data, the workhorse transfer shapes.
inline ExactRelation sdp(const GaussianRational& x, long long p, long long q) {
    return formal::transfer_p(x, p, p - 2, q);
}
inline ExactRelation sdq(const GaussianRational& x, long long p, long long q) {
    return formal::transfer_q(x, p, q, q - 2);
}

}  // namespace detail

// Shifting all five lattice parameters by (−2,+2,−2,+2,+2) changes the first
// two terms of the lifted four-term relation and nothing else; the difference
// of the shifted and unshifted instances is exactly this target.
inline CertificateProblem branch_shift_problem(const GaussianRational& y,
                                               const GaussianRational& x, long long p0,
                                               long long q0, long long p1, long long q1) {
    using detail::ext_singleton;
    const GaussianRational one{1};
    FormalSumX target = ext_singleton(y, p0 - 2, q0 + 2, one);
    target -= ext_singleton(y, p0, q0, one);
    target -= ext_singleton(x, p1 - 2, q1 + 2, one);
    target += ext_singleton(x, p1, q1, one);

    std::vector<ExactRelation> pool;
    pool.push_back(formal::ext_four_term(y, x, {p0 - 2, q0 + 2, p1 - 2, q1 + 2, 2}));
    pool.push_back(formal::ext_four_term(y, x, {p0, q0, p1, q1, 0}));
    return {"branch-shift", std::move(target), std::move(pool)};
}

// Mixed second difference over the corner square {0,2} x {0,2} of branch data.
// The pool couples transfers at x with lifted four-term instances based at
// (y, x); the auxiliary base point y only has to keep (y, x) inside the real
// ordered region.
inline CertificateProblem corner_square_problem(const GaussianRational& y,
                                                const GaussianRational& x) {
    using detail::ext_singleton;
    const GaussianRational one{1};
    FormalSumX target = ext_singleton(x, 2, 2, one);
    target -= ext_singleton(x, 2, 0, one);
    target -= ext_singleton(x, 0, 2, one);
    target += ext_singleton(x, 0, 0, one);

    std::vector<ExactRelation> pool;
    const std::pair<long long, long long> heads[] = {{0, 0}, {-2, 2}};
    const std::pair<long long, long long> tails[] = {{2, 0}, {0, 0}, {0, 2}, {-2, 2}};
    for (auto [p0, q0] : heads)
        for (auto [p1, q1] : tails)
            for (long long r : {0LL, 2LL})
                pool.push_back(formal::ext_four_term(y, x, {p0, q0, p1, q1, r}));
    for (long long p = -2; p <= 4; p += 2)
        for (long long q = -2; q <= 4; q += 2) {
            pool.push_back(detail::sdp(x, p, q));
            pool.push_back(detail::sdq(x, p, q));
        }
    return {"corner-square", std::move(target), std::move(pool)};
}

// <x;p,q> minus its expansion over the corner square, killed by telescoping
// second-difference transfers with parameters in the given even box.
inline CertificateProblem corner_reduction_problem(const GaussianRational& x, long long p,
                                                   long long q, long long lo = -6,
                                                   long long hi = 8) {
    if (lo % 2 || hi % 2) throw std::invalid_argument("pool box bounds must be even");
    FormalSumX target = detail::ext_singleton(x, p, q, GaussianRational{1});
    target -= formal::corner_expansion(x, p, q);

    std::vector<ExactRelation> pool;
    for (long long a = lo; a <= hi; a += 2)
        for (long long b = lo; b <= hi; b += 2) {
            pool.push_back(detail::sdp(x, a, b));
            pool.push_back(detail::sdq(x, a, b));
        }
    return {"corner-reduction", std::move(target), std::move(pool)};
}

// Difference of the inverted bracket {x} and the kernel element c at the same
// argument. Basing the lifted instances at y = x(1-x) makes the fourth
// coordinate of the tuple equal x again, which is what lets a finite pool
// close up.
inline CertificateProblem kernel_problem(const GaussianRational& x) {
    const GaussianRational one{1};
    const GaussianRational y = x * (one - x);
    FormalSumX target = formal::curly_bracket(x) - formal::kernel_constant(x);

    std::vector<ExactRelation> pool;
    const std::pair<long long, long long> heads[] = {{-2, 0}, {0, 0}};
    const std::pair<long long, long long> tails[] = {{0, 2}, {0, 4}, {0, 0}};
    for (auto [p0, q0] : heads)
        for (auto [p1, q1] : tails)
            for (long long r : {0LL, 2LL})
                pool.push_back(formal::ext_four_term(y, x, {p0, q0, p1, q1, r}));
    pool.push_back(formal::transfer_q(x, 0, 4, 2));
    pool.push_back(formal::transfer_q(x, 0, 2, 0));
    return {"kernel-constant", std::move(target), std::move(pool)};
}

}  // namespace entrocover::certificates
