#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "entrocover/cover.hpp"
#include "entrocover/entropy.hpp"
#include "entrocover/fourterm.hpp"
#include "entrocover/loops.hpp"

using namespace entrocover;
using cover::Complex;
using cover::CutSide;
using cover::DeckVector;
using fourterm::BranchVariant;
using fourterm::FourTuple;
using fourterm::LatticeParams;

namespace {

// all four coordinates in the upper half-plane
const FourTuple kTuple{{0.2, 0.2}, {0.3, 0.2}};

}  // namespace

TEST_CASE("tuple region predicates") {
    REQUIRE(fourterm::in_4T0({{0.2, 0.0}, {1.0 / 3.0, 0.0}}));
    REQUIRE_FALSE(fourterm::in_4T0({{1.0 / 3.0, 0.0}, {0.2, 0.0}}));    // unordered
    REQUIRE_FALSE(fourterm::in_4T0({{0.4, 0.0}, {0.7, 0.0}}));          // x0 + x1 > 1
    REQUIRE_FALSE(fourterm::in_4T0({{0.2, 0.1}, {0.3, 0.0}}));          // not real

    REQUIRE(fourterm::in_4T({{0.2, 0.0}, {1.0 / 3.0, 0.0}}));
    REQUIRE(fourterm::in_4T(kTuple));
    REQUIRE_FALSE(fourterm::in_4T({{0.3, 0.1}, {0.7, -0.1}}));  // x0 + x1 = 1 pole

    REQUIRE(fourterm::in_4Tplus(kTuple));
    REQUIRE_FALSE(fourterm::in_4Tplus({{0.2, 0.2}, {0.3, -0.2}}));
    REQUIRE_FALSE(fourterm::in_4Tplus({{0.2, 0.0}, {1.0 / 3.0, 0.0}}));

    REQUIRE(std::abs(kTuple.x2() - kTuple.x1 / (1.0 - kTuple.x0)) == 0.0);
    REQUIRE(std::abs(kTuple.x3() - kTuple.x0 / (1.0 - kTuple.x1)) == 0.0);
}

TEST_CASE("lattice vectors for the three sign variants") {
    // q0 = q1 = 0 makes all variants agree
    const LatticeParams diag{2, 0, 0, 0, -2};
    for (auto variant :
         {BranchVariant::x2m_x3m, BranchVariant::x2m_x3p, BranchVariant::x2p_x3p}) {
        const auto b = fourterm::lattice_vector(diag, variant);
        REQUIRE(b[0] == DeckVector{2, 0});
        REQUIRE(b[1] == DeckVector{0, 0});
        REQUIRE(b[2] == DeckVector{0, -2});
        REQUIRE(b[3] == DeckVector{2, -2});
    }

    // q0 = 2 separates the x2 entry
    const LatticeParams v{0, 2, 0, 0, 2};
    const auto bm = fourterm::lattice_vector(v, BranchVariant::x2m_x3m);
    REQUIRE(bm[0] == DeckVector{0, 2});
    REQUIRE(bm[1] == DeckVector{0, 0});
    REQUIRE(bm[2] == DeckVector{-2, 0});
    REQUIRE(bm[3] == DeckVector{0, 2});
    const auto bp = fourterm::lattice_vector(v, BranchVariant::x2p_x3p);
    REQUIRE(bp[2] == DeckVector{2, 0});
    REQUIRE(bp[3] == DeckVector{0, 2});

    // q1 = 2 separates the x3 entry
    const LatticeParams w{0, 0, 0, 2, 0};
    REQUIRE(fourterm::lattice_vector(w, BranchVariant::x2m_x3m)[3] == DeckVector{-2, -2});
    REQUIRE(fourterm::lattice_vector(w, BranchVariant::x2m_x3p)[3] == DeckVector{2, -2});

    REQUIRE_THROWS_AS(fourterm::lattice_vector({1, 0, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("lattice membership inverts the lattice vector") {
    const LatticeParams v{2, -2, 4, 2, -2};
    for (auto variant :
         {BranchVariant::x2m_x3m, BranchVariant::x2m_x3p, BranchVariant::x2p_x3p}) {
        const auto b = fourterm::lattice_vector(v, variant);
        const auto back = fourterm::lattice_params_of(b, variant);
        REQUIRE(back.has_value());
        REQUIRE(back->p0 == v.p0);
        REQUIRE(back->q0 == v.q0);
        REQUIRE(back->p1 == v.p1);
        REQUIRE(back->q1 == v.q1);
        REQUIRE(back->r == v.r);
    }

    // a vector from one variant is not in another variant's lattice once q0 != 0
    const auto bm = fourterm::lattice_vector({0, 2, 0, 0, 2}, BranchVariant::x2m_x3m);
    REQUIRE_FALSE(fourterm::lattice_params_of(bm, BranchVariant::x2p_x3p).has_value());
    // odd data is never in a lattice
    REQUIRE_FALSE(
        fourterm::lattice_params_of({DeckVector{1, 0}, {}, {}, {}}, BranchVariant::x2p_x3p)
            .has_value());
}

TEST_CASE("relation sum vanishes exactly for the continued sign variant") {
    const LatticeParams v{2, 4, -2, 6, 2};
    const auto plus = fourterm::extended_tuple(kTuple, v, BranchVariant::x2p_x3p);
    REQUIRE(std::abs(fourterm::relation_sum(plus)) < 1e-12);

    REQUIRE(std::abs(fourterm::relation_sum(
                fourterm::extended_tuple(kTuple, v, BranchVariant::x2m_x3m))) > 0.1);
    REQUIRE(std::abs(fourterm::relation_sum(
                fourterm::extended_tuple(kTuple, v, BranchVariant::x2m_x3p))) > 0.1);

    const LatticeParams more[] = {{0, 0, 0, 0, 0}, {2, 0, 0, 0, -2}, {-2, 2, 0, -4, 4}};
    for (const LatticeParams& u : more) {
        const auto e = fourterm::extended_tuple(kTuple, u);
        REQUIRE(std::abs(fourterm::relation_sum(e)) < 1e-12);
    }

    REQUIRE_THROWS_AS(fourterm::extended_tuple({{0.2, 0.0}, {1.0 / 3.0, 0.0}}, v),
                      std::domain_error);
}

TEST_CASE("transfer sums vanish on and off the cuts") {
    const cover::CutPoint xs[] = {{{0.3, 0.4}, CutSide::none},
                                  {{-0.5, 0.0}, CutSide::above},
                                  {{1.75, 0.0}, CutSide::below}};
    const long long trips[][3] = {{0, 2, -2}, {2, 4, 0}, {-2, 0, 6}};
    for (const auto& x : xs) {
        for (const auto& t : trips) {
            REQUIRE(std::abs(fourterm::transfer_q_sum(x, t[0], t[1], t[2])) < 1e-12);
            REQUIRE(std::abs(fourterm::transfer_p_sum(x, t[0], t[1], t[2])) < 1e-12);
        }
    }
}

TEST_CASE("monodromy transport lifts the tuple by the lattice vector") {
    const auto e = fourterm::monodromy_transport(kTuple, {2, 0, 0, 0, 0});
    REQUIRE(e.lifts[0].p == 2);
    REQUIRE(e.lifts[0].q == 0);
    REQUIRE(e.lifts[1].p == 0);
    REQUIRE(e.lifts[1].q == 0);
    REQUIRE(e.lifts[2].p == 0);
    REQUIRE(e.lifts[2].q == 0);
    REQUIRE(e.lifts[3].p == 2);
    REQUIRE(e.lifts[3].q == 0);
    REQUIRE(std::abs(fourterm::relation_sum(e)) < 1e-12);
}

TEST_CASE("realized loops wind as prescribed") {
    const LatticeParams v{2, -2, 4, 2, -2};
    const auto mt = loops::monodromy_traces(kTuple, v, 1 << 10);
    REQUIRE(cover::winding_data(mt.loop_x0) == DeckVector{v.p0, v.q0});
    REQUIRE(cover::winding_data(mt.loop_x1) == DeckVector{v.p1, v.q1});
    REQUIRE(std::abs(mt.traces[0].front() - kTuple.x0) < 1e-15);
    REQUIRE(std::abs(mt.traces[0].back() - kTuple.x0) < 1e-12);
    REQUIRE(std::abs(mt.traces[2].front() - kTuple.x2()) < 1e-15);

    REQUIRE_THROWS_AS(loops::monodromy_traces({{0.2, 0.0}, {1.0 / 3.0, 0.0}}, v, 64),
                      std::domain_error);
}

TEST_CASE("numeric continuation around realized loops matches the closed transport") {
    const LatticeParams cases[] = {
        {2, 0, 0, 0, 0}, {0, 2, 0, 0, 0}, {0, 0, 0, 2, 0}, {2, -2, 4, 2, -2}};
    for (const LatticeParams& v : cases) {
        const auto cont = loops::continue_traces(kTuple, v);
        const auto closed = fourterm::monodromy_transport(kTuple, v, BranchVariant::x2p_x3p);
        for (int i = 0; i < 4; ++i) {
            CAPTURE(v.p0, v.q0, v.p1, v.q1, v.r, i);
            REQUIRE(cont[i].end.p == closed.lifts[i].p);
            REQUIRE(cont[i].end.q == closed.lifts[i].q);
            REQUIRE(std::abs(cont[i].value - entropy::entropy_cover(closed.lifts[i])) < 1e-10);
        }
    }

    // the minus-sign variant predicts a different x2 branch once q0 != 0
    const LatticeParams v{0, 2, 0, 0, 0};
    const auto cont = loops::continue_traces(kTuple, v);
    const auto minus = fourterm::lattice_vector(v, BranchVariant::x2m_x3m);
    REQUIRE_FALSE(DeckVector{cont[2].end.p, cont[2].end.q} == minus[2]);
}
