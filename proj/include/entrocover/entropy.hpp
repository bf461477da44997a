#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cover.hpp"

// The complex entropy function and its lift to the cover.
//
//   phi(z)            = -z Log z - (1-z) Log(1-z)          (principal branches)
//   phi(z; p, q)      = phi(z) - pi*i*p*z + pi*i*q*(1-z)
//   r(x)              = -x log|x| - (1-x) log|1-x|         (real regulator)
//
// continue_entropy transports phi along a path by stepping both logarithms to
// the nearest branch, which is the independent oracle for the crossing
// convention in cover.hpp.

namespace entrocover::entropy {

using cover::Complex;
using cover::CoverPoint;
using cover::CutPoint;
using cover::CutSide;
using cover::PolyPath;

inline constexpr double kPi = std::numbers::pi;

// Principal log z, disambiguated on the cut (-inf,0) by the side annotation.
inline Complex principal_log_z(const CutPoint& pt) {
    cover::validate_cut_point(pt);
    const double x = pt.z.real();
    if (pt.side != CutSide::none && x < 0.0)
        return {std::log(-x), pt.side == CutSide::above ? kPi : -kPi};
    if (pt.side != CutSide::none)  // x > 1: log z is unambiguous there
        return {std::log(x), 0.0};
    return std::log(pt.z);
}

// Principal log(1-z); the side of 1-z is the side of z flipped.
inline Complex principal_log_1mz(const CutPoint& pt) {
    cover::validate_cut_point(pt);
    const double x = pt.z.real();
    if (pt.side != CutSide::none && x > 1.0)
        return {std::log(x - 1.0), pt.side == CutSide::above ? -kPi : kPi};
    if (pt.side != CutSide::none)
        return {std::log1p(-x), 0.0};
    return std::log(1.0 - pt.z);
}

inline Complex entropy_principal(const CutPoint& pt) {
    return -pt.z * principal_log_z(pt) - (1.0 - pt.z) * principal_log_1mz(pt);
}

inline Complex entropy_principal(const Complex& z) {
    return entropy_principal(CutPoint{z, CutSide::none});
}

// The lifted entropy evaluated through the closed formula.
inline Complex entropy_cover(const CoverPoint& pt) {
    cover::validate_cover_point(pt);
    const Complex ipi(0.0, kPi);
    return entropy_principal(pt.point()) - ipi * static_cast<double>(pt.p) * pt.z +
           ipi * static_cast<double>(pt.q) * (1.0 - pt.z);
}

inline double real_regulator(double x) {
    if (std::abs(x) < cover::kPointGuard || std::abs(x - 1.0) < cover::kPointGuard)
        throw std::domain_error("real regulator undefined at 0 and 1");
    return -x * std::log(std::abs(x)) - (1.0 - x) * std::log(std::abs(1.0 - x));
}

struct Continuation {
    CoverPoint end;
    Complex value;     // continued entropy at the endpoint
    Complex log_z;     // continued branches at the endpoint
    Complex log_1mz;
    std::size_t samples = 0;
};

// Thrown when consecutive samples are too far apart to identify the branch.
struct StepTooCoarse : std::runtime_error {
    StepTooCoarse() : std::runtime_error("consecutive continuation samples jump by >= pi/2") {}
};

inline constexpr std::size_t kMaxContinuationSamples = std::size_t{1} << 20;

namespace detail {

inline void step_log(Complex& continued, const Complex& z) {
    const Complex cand = std::log(z);
    const double turns = std::round((continued.imag() - cand.imag()) / (2.0 * kPi));
    const Complex next = cand + Complex(0.0, 2.0 * kPi * turns);
    if (std::abs(next - continued) >= kPi / 2.0) throw StepTooCoarse{};
    continued = next;
}

inline long long branch_from_logs(const Complex& continued, const Complex& principal) {
    const double raw = (continued.imag() - principal.imag()) / kPi;
    const long long k = std::llround(raw);
    if (std::abs(raw - static_cast<double>(k)) > 1e-6 || k % 2 != 0)
        throw std::runtime_error("continued branch did not land on an even sheet");
    return k;
}

}  // namespace detail

// Core continuation along an explicit sample sequence. samples.front() must be
// the start position; throws StepTooCoarse when sampling is too sparse.
inline Continuation continue_entropy_samples(const CoverPoint& start,
                                             const std::vector<Complex>& samples) {
    cover::validate_cover_point(start);
    if (samples.empty()) throw std::invalid_argument("no continuation samples");
    if (std::abs(samples.front() - start.z) > cover::kPathGuard)
        throw std::invalid_argument("samples do not start at the given point");

    const Complex ipi(0.0, kPi);
    Complex lz = principal_log_z(start.point()) + ipi * static_cast<double>(start.p);
    Complex l1 = principal_log_1mz(start.point()) - ipi * static_cast<double>(start.q);

    double prev_im = start.z.imag();
    if (start.side == CutSide::above) prev_im = 1.0;
    if (start.side == CutSide::below) prev_im = -1.0;

    for (std::size_t i = 1; i < samples.size(); ++i) {
        const Complex& z = samples[i];
        if (std::abs(z) < cover::kPointGuard || std::abs(z - 1.0) < cover::kPointGuard)
            throw std::domain_error("continuation passes too close to a puncture");
        detail::step_log(lz, z);
        detail::step_log(l1, 1.0 - z);
        if (z.imag() != 0.0) prev_im = z.imag();
    }

    const Complex ze = samples.back();
    CutSide side = CutSide::none;
    if (cover::on_cut(ze)) side = prev_im > 0.0 ? CutSide::above : CutSide::below;
    const CutPoint end_pt{ze, side};

    const long long p = detail::branch_from_logs(lz, principal_log_z(end_pt));
    const long long q = -detail::branch_from_logs(l1, principal_log_1mz(end_pt));

    Continuation out;
    out.end = cover::make_cover_point(ze, side, p, q);
    out.log_z = lz;
    out.log_1mz = l1;
    out.value = -ze * lz - (1.0 - ze) * l1;
    out.samples = samples.size();
    return out;
}

namespace detail {

inline std::vector<Complex> sample_polyline(const PolyPath& path, std::size_t target) {
    const auto& v = path.vertices;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) total += std::abs(v[i + 1] - v[i]);

    std::vector<Complex> samples;
    samples.reserve(target + v.size());
    samples.push_back(v.front());
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const Complex a = v[i], b = v[i + 1];
        if (a == b) continue;
        const double len = std::abs(b - a);
        const std::size_t n = std::max<std::size_t>(
            1, total > 0.0 ? static_cast<std::size_t>(std::ceil(target * len / total)) : 1);
        for (std::size_t j = 1; j <= n; ++j)
            samples.push_back(a + (b - a) * (static_cast<double>(j) / static_cast<double>(n)));
    }
    return samples;
}

}  // namespace detail

// Continuation along a polygonal path. steps is the initial sample budget;
// sampling doubles until every log step stays below pi/2 or the sample cap is hit.
inline Continuation continue_entropy(const CoverPoint& start, const PolyPath& path,
                                     std::size_t steps = 4096) {
    if (path.vertices.empty()) throw std::invalid_argument("empty path");
    for (const Complex& v : path.vertices)
        if (std::abs(v) < cover::kPathGuard || std::abs(v - 1.0) < cover::kPathGuard)
            throw std::domain_error("path vertex too close to a puncture");

    std::size_t target = std::max<std::size_t>(std::max(steps, path.vertices.size()), 2);
    while (true) {
        try {
            return continue_entropy_samples(start, detail::sample_polyline(path, target));
        } catch (const StepTooCoarse&) {
            if (target >= kMaxContinuationSamples) throw;
            target = std::min(target * 2, kMaxContinuationSamples);
        }
    }
}

}  // namespace entrocover::entropy
