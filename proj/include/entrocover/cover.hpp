#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <vector>

// Points of the universal abelian cover of C \ {0,1}, polygonal paths in the
// base, and the crossing bookkeeping that transports branch data along them.
//
// Model: the base plane is cut along (-inf,0) and (1,inf); points on a cut are
// doubled (side = above/below). A cover point is (z, side, p, q) with p, q even;
// p fixes the branch of log z (= Log z + pi*i*p) and q the branch of log(1-z)
// (= Log(1-z) - pi*i*q). The glueing across the cuts:
//   x < 0:  (x above; p, q) == (x below; p+2, q)
//   x > 1:  (x above; p, q) == (x below; p, q+2)
// Consequently a transversal crossing of (-inf,0) from the upper half-plane to
// the lower one adds +2 to p, and an upper-to-lower crossing of (1,inf) adds
// +2 to q (opposite crossings subtract). The closed-formula evaluation in
// entropy.hpp and the step-by-step continuation oracle agree under exactly
// this convention; tests enforce that end to end.

namespace entrocover::cover {

using Complex = std::complex<double>;

inline constexpr double kPointGuard = 1e-10;  // cover points this close to 0 or 1 are rejected
inline constexpr double kPathGuard = 1e-12;   // path vertices / crossing abscissae guard

enum class CutSide { none, above, below };

inline bool on_real_axis(const Complex& z) { return z.imag() == 0.0; }
inline bool on_cut(const Complex& z) {
    return on_real_axis(z) && (z.real() < 0.0 || z.real() > 1.0);
}

// Base-plane point with cut-side disambiguation.
struct CutPoint {
    Complex z;
    CutSide side = CutSide::none;
};

inline void validate_cut_point(const CutPoint& pt) {
    if (std::abs(pt.z) < kPointGuard || std::abs(pt.z - 1.0) < kPointGuard)
        throw std::domain_error("cut point too close to a puncture");
    if (on_cut(pt.z)) {
        if (pt.side == CutSide::none)
            throw std::invalid_argument("point on a cut requires a side annotation");
    } else if (pt.side != CutSide::none) {
        throw std::invalid_argument("side annotation only allowed on a cut");
    }
}

struct CoverPoint {
    Complex z;
    CutSide side = CutSide::none;
    long long p = 0;
    long long q = 0;

    CutPoint point() const { return {z, side}; }
};

inline void validate_cover_point(const CoverPoint& pt) {
    validate_cut_point(pt.point());
    if (pt.p % 2 != 0 || pt.q % 2 != 0)
        throw std::invalid_argument("cover point branch data must be even");
}

inline CoverPoint make_cover_point(Complex z, CutSide side, long long p, long long q) {
    CoverPoint pt{z, side, p, q};
    validate_cover_point(pt);
    return pt;
}

// Canonical representative: below-side points rewritten through the glueing.
// (x below; p, q) is (x above; p-2, q) for x < 0 and (x above; p, q-2) for
// x > 1; the closed-formula values in entropy.hpp agree on glued pairs.
inline CoverPoint canonical(CoverPoint pt) {
    if (pt.side == CutSide::below) {
        if (pt.z.real() < 0.0)
            pt.p -= 2;
        else
            pt.q -= 2;
        pt.side = CutSide::above;
    }
    return pt;
}

// Exact equality on the cover (identifications included). Positions compare
// bitwise; this is an algebraic identity check, not a numeric closeness test.
inline bool cover_equal(const CoverPoint& a, const CoverPoint& b) {
    CoverPoint ca = canonical(a), cb = canonical(b);
    return ca.z == cb.z && ca.p == cb.p && ca.q == cb.q && ca.side == cb.side;
}

// Even lattice vector acting on branch data.
struct DeckVector {
    long long dp = 0;
    long long dq = 0;

    friend DeckVector operator+(DeckVector a, DeckVector b) { return {a.dp + b.dp, a.dq + b.dq}; }
    DeckVector operator-() const { return {-dp, -dq}; }
    friend bool operator==(DeckVector a, DeckVector b) { return a.dp == b.dp && a.dq == b.dq; }
};

inline void validate_deck_vector(const DeckVector& v) {
    if (v.dp % 2 != 0 || v.dq % 2 != 0)
        throw std::invalid_argument("deck vector entries must be even");
}

inline CoverPoint deck_translate(CoverPoint pt, DeckVector v) {
    validate_deck_vector(v);
    pt.p += v.dp;
    pt.q += v.dq;
    return pt;
}

// Polygonal path in the base plane, straight segments between vertices.
struct PolyPath {
    std::vector<Complex> vertices;
};

inline PolyPath reversed(const PolyPath& path) {
    return {std::vector<Complex>(path.vertices.rbegin(), path.vertices.rend())};
}

inline PolyPath concatenated(const PolyPath& a, const PolyPath& b) {
    if (a.vertices.empty() || b.vertices.empty())
        throw std::invalid_argument("cannot concatenate an empty path");
    if (a.vertices.back() != b.vertices.front())
        throw std::invalid_argument("paths do not share the junction vertex");
    PolyPath out = a;
    out.vertices.insert(out.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
    return out;
}

namespace detail {

inline void check_vertex_guard(const Complex& v) {
    if (std::abs(v) < kPathGuard || std::abs(v - 1.0) < kPathGuard)
        throw std::domain_error("path vertex too close to a puncture");
}

// Shared crossing scan. Walks the deduplicated vertex list, accumulating branch
// shifts; start_side disambiguates a first vertex sitting on a cut, and the
// side from which a final on-cut vertex is reached comes back in end_side.
// Throws on non-transversal cut contact; never perturbs the input.
struct ScanResult {
    long long dp = 0;
    long long dq = 0;
    CutSide end_side = CutSide::none;
};

inline ScanResult scan_path(const std::vector<Complex>& raw, CutSide start_side) {
    if (raw.empty()) throw std::invalid_argument("empty path");
    for (const Complex& v : raw) check_vertex_guard(v);

    std::vector<Complex> v;
    v.reserve(raw.size());
    for (const Complex& x : raw)
        if (v.empty() || x != v.back()) v.push_back(x);

    // interior vertices may touch the real axis only inside (0,1)
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (on_cut(v[i]))
            throw std::domain_error("interior path vertex lies on a cut");
    if (on_cut(v.front()) && start_side == CutSide::none)
        throw std::invalid_argument("path starts on a cut without a side annotation");

    ScanResult res;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const Complex a = v[i], b = v[i + 1];
        const double ya = a.imag(), yb = b.imag();

        if (ya == 0.0 && yb == 0.0) {
            const double lo = std::min(a.real(), b.real());
            const double hi = std::max(a.real(), b.real());
            if (lo < 0.0 || hi > 1.0)
                throw std::domain_error("segment runs along a cut (non-transversal)");
            continue;
        }
        if (ya == 0.0) {  // departing the real axis
            const double x = a.real();
            if (x > 0.0 && x < 1.0) continue;  // (0,1) is not a cut
            // departure from an on-cut start vertex; i == 0 guaranteed by the
            // interior-vertex check above
            const bool down = yb < 0.0;
            long long shift = 0;
            if (start_side == CutSide::above && down) shift = 2;
            if (start_side == CutSide::below && !down) shift = -2;
            (x < 0.0 ? res.dp : res.dq) += shift;
            continue;
        }
        if (yb == 0.0) {  // arriving at the real axis
            const double x = b.real();
            if (x > 0.0 && x < 1.0) continue;
            // arrival at a final on-cut vertex (interior ones were rejected)
            res.end_side = ya > 0.0 ? CutSide::above : CutSide::below;
            continue;
        }
        if ((ya > 0.0) == (yb > 0.0)) continue;

        // transversal crossing of the real axis
        const double x0 = (a.real() * yb - b.real() * ya) / (yb - ya);
        if (std::abs(x0) < kPathGuard || std::abs(x0 - 1.0) < kPathGuard)
            throw std::domain_error("path crosses the real axis at a puncture");
        if (x0 > 0.0 && x0 < 1.0) continue;
        const long long shift = ya > 0.0 ? 2 : -2;  // upper-to-lower adds +2
        (x0 < 0.0 ? res.dp : res.dq) += shift;
    }
    return res;
}

}  // namespace detail

// Total branch shift around a closed polygonal loop.
inline DeckVector winding_data(const PolyPath& path) {
    if (path.vertices.empty()) throw std::invalid_argument("empty path");
    const Complex first = path.vertices.front(), last = path.vertices.back();
    if (std::abs(first - last) > kPathGuard)
        throw std::invalid_argument("winding_data requires a closed path");
    if (on_cut(first) || on_cut(last))
        throw std::invalid_argument("winding_data basepoint may not lie on a cut");
    auto res = detail::scan_path(path.vertices, CutSide::none);
    return {res.dp, res.dq};
}

// Transport of a cover point along a path starting at its projection.
inline CoverPoint continue_point(const CoverPoint& start, const PolyPath& path) {
    validate_cover_point(start);
    if (path.vertices.empty()) throw std::invalid_argument("empty path");
    if (std::abs(path.vertices.front() - start.z) > kPathGuard)
        throw std::invalid_argument("path does not start at the given point");

    auto res = detail::scan_path(path.vertices, start.side);
    const Complex end = path.vertices.back();
    CutSide end_side = CutSide::none;
    if (on_cut(end)) {
        end_side = res.end_side;
        if (end_side == CutSide::none) end_side = start.side;  // path never left the cut vertex
        if (end_side == CutSide::none)
            throw std::domain_error("cannot determine the side of the final on-cut vertex");
    }
    return make_cover_point(end, end_side, start.p + res.dp, start.q + res.dq);
}

}  // namespace entrocover::cover
