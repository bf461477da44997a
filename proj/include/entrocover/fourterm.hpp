#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>

#include "cover.hpp"
#include "entropy.hpp"

// Four-term configurations (x0, x1, x1/(1-x0), x0/(1-x1)), their lifts to the
// cover, and the lattice of branch data reachable by monodromy.

namespace entrocover::fourterm {

using cover::Complex;
using cover::CoverPoint;
using cover::CutSide;
using cover::DeckVector;

// Derived coordinates are always recomputed, never stored.
struct FourTuple {
    Complex x0;
    Complex x1;

    Complex x2() const { return x1 / (1.0 - x0); }
    Complex x3() const { return x0 / (1.0 - x1); }
};

inline bool in_4T(const FourTuple& t) {
    const double g = cover::kPointGuard;
    auto clear = [g](const Complex& z) {
        return std::abs(z) >= g && std::abs(z - 1.0) >= g;
    };
    if (!clear(t.x0) || !clear(t.x1)) return false;
    if (std::abs(1.0 - t.x0 - t.x1) < g) return false;  // x2, x3 would hit 1
    return clear(t.x2()) && clear(t.x3());
}

inline bool in_4T0(const FourTuple& t) {
    if (t.x0.imag() != 0.0 || t.x1.imag() != 0.0) return false;
    const double a = t.x0.real(), b = t.x1.real();
    return 0.0 < a && a < b && b < a + b && a + b < 1.0;
}

inline bool in_4Tplus(const FourTuple& t) {
    return in_4T(t) && t.x0.imag() > 0.0 && t.x1.imag() > 0.0 && t.x2().imag() > 0.0 &&
           t.x3().imag() > 0.0;
}

struct LatticeParams {
    long long p0 = 0, q0 = 0, p1 = 0, q1 = 0, r = 0;
};

inline void validate_lattice_params(const LatticeParams& v) {
    if (v.p0 % 2 || v.q0 % 2 || v.p1 % 2 || v.q1 % 2 || v.r % 2)
        throw std::invalid_argument("lattice parameters must be even");
}

// Candidate sign conventions for the transported branch data. They differ in
// the sign of q0 inside the x2 entry and of q1 inside the x3 entry:
//   x2m_x3m: x2 = (p1-q0, r-q0), x3 = (p0-q1, r-q1)
//   x2m_x3p: x2 = (p1-q0, r-q0), x3 = (p0+q1, r-q1)
//   x2p_x3p: x2 = (p1+q0, r-q0), x3 = (p0+q1, r-q1)
// Only x2p_x3p matches step-by-step analytic continuation, and the regulator
// annihilates relation sums exactly for it; the others are kept so reports can
// demonstrate that adjudication (the verify-4term CLI evaluates all three).
enum class BranchVariant { x2m_x3m, x2m_x3p, x2p_x3p };

inline constexpr BranchVariant kAnnihilatedVariant = BranchVariant::x2p_x3p;

inline const char* variant_name(BranchVariant v) {
    switch (v) {
        case BranchVariant::x2m_x3m: return "x2minus-x3minus";
        case BranchVariant::x2m_x3p: return "x2minus-x3plus";
        case BranchVariant::x2p_x3p: return "x2plus-x3plus";
    }
    throw std::logic_error("unknown branch variant");
}

inline std::array<DeckVector, 4> lattice_vector(const LatticeParams& v,
                                                BranchVariant variant = kAnnihilatedVariant) {
    validate_lattice_params(v);
    const long long s2 = variant == BranchVariant::x2p_x3p ? 1 : -1;
    const long long s3 = variant == BranchVariant::x2m_x3m ? -1 : 1;
    return {DeckVector{v.p0, v.q0}, DeckVector{v.p1, v.q1},
            DeckVector{v.p1 + s2 * v.q0, v.r - v.q0}, DeckVector{v.p0 + s3 * v.q1, v.r - v.q1}};
}

// Inverse of lattice_vector: recovers parameters when the branch data lies in
// the lattice for the given variant.
inline std::optional<LatticeParams> lattice_params_of(const std::array<DeckVector, 4>& b,
                                                      BranchVariant variant = kAnnihilatedVariant) {
    LatticeParams v{b[0].dp, b[0].dq, b[1].dp, b[1].dq, b[2].dq + b[0].dq};
    for (const DeckVector& d : b)
        if (d.dp % 2 || d.dq % 2) return std::nullopt;
    auto expect = lattice_vector(v, variant);
    for (int i = 0; i < 4; ++i)
        if (!(expect[i] == b[i])) return std::nullopt;
    return v;
}

struct ExtendedFourTuple {
    FourTuple base;
    std::array<CoverPoint, 4> lifts;
};

inline ExtendedFourTuple extended_tuple(const FourTuple& t, const LatticeParams& v,
                                        BranchVariant variant = kAnnihilatedVariant) {
    if (!in_4Tplus(t))
        throw std::domain_error("extended_tuple requires a tuple with all coordinates in the upper half-plane");
    const auto branch = lattice_vector(v, variant);
    const Complex xs[4] = {t.x0, t.x1, t.x2(), t.x3()};
    ExtendedFourTuple out{t, {}};
    for (int i = 0; i < 4; ++i)
        out.lifts[i] = cover::make_cover_point(xs[i], CutSide::none, branch[i].dp, branch[i].dq);
    return out;
}

// phi(x0-lift) - phi(x1-lift) + (1-x0) phi(x2-lift) - (1-x1) phi(x3-lift).
// Vanishes (to rounding) exactly when the branch data lies in the monodromy
// lattice, i.e. for the x2p_x3p variant.
inline Complex relation_sum(const ExtendedFourTuple& e) {
    return entropy::entropy_cover(e.lifts[0]) - entropy::entropy_cover(e.lifts[1]) +
           (1.0 - e.base.x0) * entropy::entropy_cover(e.lifts[2]) -
           (1.0 - e.base.x1) * entropy::entropy_cover(e.lifts[3]);
}

// phi(x;p,q) - phi(x;p,q') - phi(x;p,q-2) + phi(x;p,q'-2); identically zero.
inline Complex transfer_q_sum(const cover::CutPoint& x, long long p, long long q, long long qp) {
    auto phi = [&x](long long pp, long long qq) {
        return entropy::entropy_cover(cover::make_cover_point(x.z, x.side, pp, qq));
    };
    return phi(p, q) - phi(p, qp) - phi(p, q - 2) + phi(p, qp - 2);
}

// phi(x;p,q) - phi(x;p',q) - phi(x;p-2,q) + phi(x;p'-2,q); identically zero.
inline Complex transfer_p_sum(const cover::CutPoint& x, long long p, long long pp, long long q) {
    auto phi = [&x](long long a, long long b) {
        return entropy::entropy_cover(cover::make_cover_point(x.z, x.side, a, b));
    };
    return phi(p, q) - phi(pp, q) - phi(p - 2, q) + phi(pp - 2, q);
}

// Endpoint of the lifted tuple after x0 winds p0/2 times around 0 (positive
// orientation), -q0/2 times around 1 and -r/2 times around 1-x1, followed by
// x1 winding p1/2 times around 0 and -q1/2 times around 1. The closed form for
// the resulting branch data is lattice_vector(v, variant); tests realise the
// loops and confirm the x2p_x3p form against numeric continuation.
inline ExtendedFourTuple monodromy_transport(const FourTuple& t, const LatticeParams& v,
                                             BranchVariant variant = kAnnihilatedVariant) {
    return extended_tuple(t, v, variant);
}

}  // namespace entrocover::fourterm
