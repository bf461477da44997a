#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cover.hpp"
#include "entropy.hpp"
#include "fourterm.hpp"

// Concrete polygonal loops realizing prescribed windings, and the induced
// closed traces of all four coordinates of a four-term tuple when its first
// two coordinates travel those loops. This is what turns the closed-formula
// branch transport into something a numeric continuation can check.

namespace entrocover::loops {

using cover::Complex;
using cover::PolyPath;

inline constexpr int kCircleSegments = 64;

// Quarter of the distance from center to the nearest other marked point, so a
// circle of this radius encloses the center and nothing else.
inline double loop_radius(const Complex& center, const std::vector<Complex>& marked) {
    double best = 1.0;
    bool any = false;
    for (const Complex& m : marked) {
        const double d = std::abs(m - center);
        if (d < 1e-12) continue;
        best = any ? std::min(best, d) : d;
        any = true;
    }
    return 0.25 * best;
}

// Closed polygonal loop from base: travel to a circle of the given radius
// around center, wind |turns| full times (counterclockwise when turns > 0),
// come back the same way. The out-and-back stem contributes no net crossings.
// An off-axis base routes horizontally, then vertically down to the top of the
// circle; a real base with a real center runs along the axis and enters from
// the side facing the base. Circle vertices sit at half-step angles so none
// lands exactly on a cut.
inline PolyPath based_loop(const Complex& base, const Complex& center, int turns, double radius) {
    if (turns == 0) return PolyPath{{base}};
    if (!(radius > 0.0)) throw std::invalid_argument("loop radius must be positive");
    const double h = 2.0 * std::numbers::pi / kCircleSegments * (turns > 0 ? 1.0 : -1.0);
    const int steps = kCircleSegments * std::abs(turns);

    std::vector<Complex> stem{base};
    double alpha;
    if (base.imag() == 0.0 && center.imag() == 0.0) {
        alpha = base.real() >= center.real() ? 0.0 : std::numbers::pi;
    } else {
        stem.emplace_back(center.real(), base.imag());
        alpha = std::numbers::pi / 2.0;
    }
    const Complex entry = center + std::polar(radius, alpha);

    std::vector<Complex> vs(stem);
    vs.push_back(entry);
    for (int k = 0; k < steps; ++k)
        vs.push_back(center + std::polar(radius, alpha + h * (0.5 + k)));
    vs.push_back(entry);
    for (auto it = stem.rbegin(); it != stem.rend(); ++it) vs.push_back(*it);
    return PolyPath{std::move(vs)};
}

struct MonodromyTraces {
    PolyPath loop_x0;  // first phase: x0 travels, x1 rests
    PolyPath loop_x1;  // second phase: x1 travels, x0 rests
    std::array<std::vector<Complex>, 4> traces;  // induced closed sample loops per coordinate
};

// Realizes the lattice parameters as loops: x0 winds p0/2 times around 0,
// -q0/2 around 1 and -r/2 around 1-x1, then x1 winds p1/2 around 0 and -q1/2
// around 1. density controls polyline sampling of the induced traces.
inline MonodromyTraces monodromy_traces(const fourterm::FourTuple& t,
                                        const fourterm::LatticeParams& v, std::size_t density) {
    fourterm::validate_lattice_params(v);
    if (!(t.x0.imag() > 0.0 && t.x1.imag() > 0.0))
        throw std::domain_error("monodromy loops require an upper-half-plane base tuple");

    const Complex zero{0.0, 0.0}, one{1.0, 0.0};
    const Complex c0 = one - t.x1;  // winding here moves both derived coordinates around 1
    const std::vector<Complex> marked0{zero, one, c0};
    const std::vector<Complex> marked1{zero, one, one - t.x0};

    auto build = [](const Complex& base,
                    const std::vector<std::pair<Complex, long long>>& spec,
                    const std::vector<Complex>& marked) {
        PolyPath path{{base}};
        for (const auto& [center, turns] : spec) {
            if (turns == 0) continue;
            path = cover::concatenated(path, based_loop(base, center, static_cast<int>(turns),
                                                        loop_radius(center, marked)));
        }
        return path;
    };

    MonodromyTraces out;
    out.loop_x0 = build(t.x0, {{zero, v.p0 / 2}, {one, -v.q0 / 2}, {c0, -v.r / 2}}, marked0);
    out.loop_x1 = build(t.x1, {{zero, v.p1 / 2}, {one, -v.q1 / 2}}, marked1);

    const auto s0 = entropy::detail::sample_polyline(out.loop_x0, density);
    const auto s1 = entropy::detail::sample_polyline(out.loop_x1, density);

    auto& tr = out.traces;
    tr[0] = s0;
    tr[1] = s1;
    tr[2].reserve(s0.size() + s1.size());
    tr[3].reserve(s0.size() + s1.size());
    for (const Complex& s : s0) tr[2].push_back(t.x1 / (one - s));
    for (const Complex& s : s1) tr[2].push_back(s / (one - t.x0));
    for (const Complex& s : s0) tr[3].push_back(s / (one - t.x1));
    for (const Complex& s : s1) tr[3].push_back(t.x0 / (one - s));
    return out;
}

// Continues the entropy of every coordinate from branch (0,0) along its trace,
// doubling the sampling density until the branch stepping resolves.
inline std::array<entropy::Continuation, 4> continue_traces(const fourterm::FourTuple& t,
                                                            const fourterm::LatticeParams& v,
                                                            std::size_t density = 1 << 12) {
    while (true) {
        const MonodromyTraces mt = monodromy_traces(t, v, density);
        const Complex xs[4] = {t.x0, t.x1, t.x2(), t.x3()};
        std::array<entropy::Continuation, 4> out;
        try {
            for (int i = 0; i < 4; ++i) {
                const auto start = cover::make_cover_point(xs[i], cover::CutSide::none, 0, 0);
                out[i] = entropy::continue_entropy_samples(start, mt.traces[i]);
            }
            return out;
        } catch (const entropy::StepTooCoarse&) {
            if (density >= entropy::kMaxContinuationSamples) throw;
            density = std::min(density * 2, entropy::kMaxContinuationSamples);
        }
    }
}

}  // namespace entrocover::loops
