#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "entrocover/cover.hpp"
#include "entrocover/loops.hpp"

using namespace entrocover;
using cover::Complex;
using cover::CoverPoint;
using cover::CutSide;
using cover::DeckVector;
using cover::PolyPath;

namespace {

// Independent winding oracle: angle accumulation around c. Valid as long as no
// single segment subtends an angle of pi or more as seen from c, which holds
// for every loop below.
int winding_number(const std::vector<Complex>& vs, Complex c) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i)
        total += std::arg((vs[i + 1] - c) / (vs[i] - c));
    return static_cast<int>(std::llround(total / (2.0 * std::numbers::pi)));
}

DeckVector predicted(const PolyPath& loop) {
    const int w0 = winding_number(loop.vertices, {0.0, 0.0});
    const int w1 = winding_number(loop.vertices, {1.0, 0.0});
    return {2LL * w0, -2LL * w1};
}

const PolyPath kCcwSquare{{{0.5, 0.0}, {0.5, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}, {0.5, -1.0}, {0.5, 0.0}}};
const PolyPath kCwSquare{{{0.5, 0.0}, {0.5, -1.0}, {-1.0, -1.0}, {-1.0, 1.0}, {0.5, 1.0}, {0.5, 0.0}}};

}  // namespace

TEST_CASE("winding data matches the angle-accumulation oracle") {
    REQUIRE(winding_number(kCcwSquare.vertices, {0.0, 0.0}) == 1);
    REQUIRE(cover::winding_data(kCcwSquare) == DeckVector{2, 0});
    REQUIRE(cover::winding_data(kCcwSquare) == predicted(kCcwSquare));

    REQUIRE(cover::winding_data(kCwSquare) == DeckVector{-2, 0});
    REQUIRE(cover::winding_data(kCwSquare) == predicted(kCwSquare));
    REQUIRE(cover::winding_data(cover::reversed(kCwSquare)) == DeckVector{2, 0});

    // ccw square around 1 only
    const PolyPath around1{
        {{0.5, 0.0}, {0.5, -1.0}, {2.0, -1.0}, {2.0, 1.0}, {0.5, 1.0}, {0.5, 0.0}}};
    REQUIRE(cover::winding_data(around1) == DeckVector{0, -2});
    REQUIRE(cover::winding_data(around1) == predicted(around1));

    // ccw square around both punctures
    const PolyPath both{{{0.5, -2.0},
                         {2.5, -2.0},
                         {2.5, 2.0},
                         {-1.5, 2.0},
                         {-1.5, -2.0},
                         {0.5, -2.0}}};
    REQUIRE(cover::winding_data(both) == DeckVector{2, -2});
    REQUIRE(cover::winding_data(both) == predicted(both));

    // multi-turn circles from based_loop, on-axis and off-axis basepoints
    for (int turns : {1, -1, 2, -3}) {
        const PolyPath c0 = loops::based_loop({0.5, 0.0}, {0.0, 0.0}, turns, 0.3);
        REQUIRE(cover::winding_data(c0) == DeckVector{2LL * turns, 0});
        REQUIRE(cover::winding_data(c0) == predicted(c0));
        const PolyPath c1 = loops::based_loop({0.5, 0.0}, {1.0, 0.0}, turns, 0.3);
        REQUIRE(cover::winding_data(c1) == DeckVector{0, -2LL * turns});
        REQUIRE(cover::winding_data(c1) == predicted(c1));
    }
    const PolyPath off = loops::based_loop({0.5, 0.5}, {0.0, 0.0}, 1, 0.25);
    REQUIRE(cover::winding_data(off) == DeckVector{2, 0});
    REQUIRE(cover::winding_data(off) == predicted(off));

    const PolyPath combo = cover::concatenated(loops::based_loop({0.5, 0.0}, {0.0, 0.0}, 1, 0.3),
                                               loops::based_loop({0.5, 0.0}, {1.0, 0.0}, 1, 0.3));
    REQUIRE(cover::winding_data(combo) == DeckVector{2, -2});
    REQUIRE(cover::winding_data(combo) == predicted(combo));

    // null homotopies
    REQUIRE(cover::winding_data(PolyPath{{{0.5, 0.0}}}) == DeckVector{0, 0});
    const PolyPath outback{{{0.5, 0.0}, {-1.0, 2.0}, {0.5, 0.0}}};
    REQUIRE(cover::winding_data(outback) == DeckVector{0, 0});
    // the segment (0,1) between the punctures is not a cut
    const PolyPath axis{{{0.5, 0.0}, {0.25, 0.0}, {0.75, 0.0}, {0.5, 0.0}}};
    REQUIRE(cover::winding_data(axis) == DeckVector{0, 0});
}

TEST_CASE("glueing identifications across the cuts") {
    // (x above; p, q) == (x below; p+2, q) for x < 0
    REQUIRE(cover::cover_equal(cover::make_cover_point({-0.5, 0.0}, CutSide::above, 0, 0),
                               cover::make_cover_point({-0.5, 0.0}, CutSide::below, 2, 0)));
    REQUIRE(cover::cover_equal(cover::make_cover_point({-0.5, 0.0}, CutSide::above, -4, 2),
                               cover::make_cover_point({-0.5, 0.0}, CutSide::below, -2, 2)));
    // (x above; p, q) == (x below; p, q+2) for x > 1
    REQUIRE(cover::cover_equal(cover::make_cover_point({1.5, 0.0}, CutSide::above, 0, 0),
                               cover::make_cover_point({1.5, 0.0}, CutSide::below, 0, 2)));
    REQUIRE(cover::cover_equal(cover::make_cover_point({1.5, 0.0}, CutSide::below, 6, -2),
                               cover::make_cover_point({1.5, 0.0}, CutSide::above, 6, -4)));

    REQUIRE_FALSE(cover::cover_equal(cover::make_cover_point({-0.5, 0.0}, CutSide::above, 0, 0),
                                     cover::make_cover_point({-0.5, 0.0}, CutSide::below, 0, 0)));
    REQUIRE_FALSE(cover::cover_equal(cover::make_cover_point({0.3, 0.1}, CutSide::none, 0, 0),
                                     cover::make_cover_point({0.3, 0.1}, CutSide::none, 2, 0)));

    const CoverPoint canon =
        cover::canonical(cover::make_cover_point({-0.5, 0.0}, CutSide::below, 2, 4));
    REQUIRE(canon.side == CutSide::above);
    REQUIRE(canon.p == 0);
    REQUIRE(canon.q == 4);
}

TEST_CASE("deck vectors act by translation") {
    const DeckVector a{2, -4}, b{-2, 6};
    REQUIRE(a + b == DeckVector{0, 2});
    REQUIRE(-a == DeckVector{-2, 4});

    const CoverPoint pt = cover::make_cover_point({0.3, 0.4}, CutSide::none, 2, 0);
    const CoverPoint moved = cover::deck_translate(pt, {-4, 6});
    REQUIRE(moved.p == -2);
    REQUIRE(moved.q == 6);
    REQUIRE(moved.z == pt.z);
    REQUIRE_THROWS_AS(cover::deck_translate(pt, {1, 0}), std::invalid_argument);
}

TEST_CASE("cover point validation") {
    REQUIRE_THROWS_AS(cover::make_cover_point({0.5, 0.0}, CutSide::none, 1, 0),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(cover::make_cover_point({0.5, 0.0}, CutSide::none, 0, -3),
                      std::invalid_argument);
    // on a cut a side is mandatory, off the cuts it is forbidden
    REQUIRE_THROWS_AS(cover::make_cover_point({-0.5, 0.0}, CutSide::none, 0, 0),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(cover::make_cover_point({0.5, 0.0}, CutSide::above, 0, 0),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(cover::make_cover_point({0.3, 0.7}, CutSide::below, 0, 0),
                      std::invalid_argument);
    // puncture guard
    REQUIRE_THROWS_AS(cover::make_cover_point({1e-12, 0.0}, CutSide::none, 0, 0),
                      std::domain_error);
    REQUIRE_THROWS_AS(cover::make_cover_point({1.0, 5e-11}, CutSide::none, 0, 0),
                      std::domain_error);
}

TEST_CASE("path transport across the cuts") {
    const CoverPoint base = cover::make_cover_point({0.5, 0.0}, CutSide::none, 0, 0);

    // same endpoint through the upper and the lower half-plane lands on
    // different boundary points of the cover
    const PolyPath upper{{{0.5, 0.0}, {0.5, 1.0}, {-0.5, 1.0}, {-0.5, 0.0}}};
    const PolyPath lower{{{0.5, 0.0}, {0.5, -1.0}, {-0.5, -1.0}, {-0.5, 0.0}}};
    const CoverPoint via_upper = cover::continue_point(base, upper);
    const CoverPoint via_lower = cover::continue_point(base, lower);
    REQUIRE(via_upper.side == CutSide::above);
    REQUIRE(via_upper.p == 0);
    REQUIRE(via_upper.q == 0);
    REQUIRE(via_lower.side == CutSide::below);
    REQUIRE(via_lower.p == 0);
    REQUIRE(via_lower.q == 0);
    REQUIRE_FALSE(cover::cover_equal(via_upper, via_lower));

    // crossing the cut and u-turning back to it reaches the glued point
    const PolyPath uturn{{{0.5, 0.0}, {0.5, 1.0}, {-0.5, 1.0}, {-0.5, -1.0}, {-0.5, 0.0}}};
    const CoverPoint crossed = cover::continue_point(base, uturn);
    REQUIRE(crossed.side == CutSide::below);
    REQUIRE(crossed.p == 2);
    REQUIRE(crossed.q == 0);
    REQUIRE(cover::cover_equal(crossed, via_upper));

    // departure from an on-cut start: above-to-down crosses, above-to-up does not
    const CoverPoint on_cut = cover::make_cover_point({-0.5, 0.0}, CutSide::above, 0, 0);
    const CoverPoint down =
        cover::continue_point(on_cut, PolyPath{{{-0.5, 0.0}, {-0.5, -1.0}, {0.5, -1.0}, {0.5, 0.0}}});
    REQUIRE(down.p == 2);
    REQUIRE(down.q == 0);
    const CoverPoint up = cover::continue_point(on_cut, PolyPath{{{-0.5, 0.0}, {-0.5, 1.0}}});
    REQUIRE(up.p == 0);

    const CoverPoint right_below = cover::make_cover_point({1.5, 0.0}, CutSide::below, 0, 0);
    const CoverPoint lifted = cover::continue_point(right_below, PolyPath{{{1.5, 0.0}, {1.5, 1.0}}});
    REQUIRE(lifted.p == 0);
    REQUIRE(lifted.q == -2);

    // closed loop transports by the winding deck vector
    const CoverPoint looped = cover::continue_point(base, kCcwSquare);
    REQUIRE(looped.p == 2);
    REQUIRE(looped.q == 0);
    REQUIRE(looped.side == CutSide::none);
}

TEST_CASE("path validation rejects degenerate cut contact") {
    const CoverPoint base = cover::make_cover_point({0.5, 0.0}, CutSide::none, 0, 0);

    // running along a cut
    REQUIRE_THROWS_AS(cover::continue_point(base, PolyPath{{{0.5, 0.0}, {-0.5, 0.0}}}),
                      std::domain_error);
    // crossing exactly at a puncture
    REQUIRE_THROWS_AS(
        cover::continue_point(base, PolyPath{{{0.5, 0.0}, {0.0, 1.0}, {0.0, -1.0}}}),
        std::domain_error);
    // interior vertex on a cut
    REQUIRE_THROWS_AS(cover::winding_data(PolyPath{
                          {{0.5, 0.0}, {0.5, 1.0}, {-1.0, 0.0}, {0.5, -1.0}, {0.5, 0.0}}}),
                      std::domain_error);
    // vertex too close to a puncture
    REQUIRE_THROWS_AS(cover::continue_point(base, PolyPath{{{0.5, 0.0}, {1e-13, 0.0}}}),
                      std::domain_error);
    // winding data needs a closed path based off the cuts
    REQUIRE_THROWS_AS(cover::winding_data(PolyPath{{{0.5, 0.0}, {0.5, 1.0}}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(cover::winding_data(PolyPath{{{-0.5, 0.0}, {-0.5, 1.0}, {-0.5, 0.0}}}),
                      std::invalid_argument);
    // path must start at the transported point
    REQUIRE_THROWS_AS(cover::continue_point(base, PolyPath{{{0.4, 0.0}, {0.4, 1.0}}}),
                      std::invalid_argument);
}

TEST_CASE("path composition") {
    const PolyPath a{{{0.5, 0.0}, {0.0, 1.0}}};
    const PolyPath b{{{0.0, 1.0}, {-1.0, 1.0}}};
    const PolyPath ab = cover::concatenated(a, b);
    REQUIRE(ab.vertices == std::vector<Complex>{{0.5, 0.0}, {0.0, 1.0}, {-1.0, 1.0}});
    REQUIRE(cover::reversed(ab).vertices ==
            std::vector<Complex>{{-1.0, 1.0}, {0.0, 1.0}, {0.5, 0.0}});
    REQUIRE_THROWS_AS(cover::concatenated(a, PolyPath{{{0.5, 1.0}, {0.0, 0.5}}}),
                      std::invalid_argument);

    // reversal inverts the transported deck vector
    const CoverPoint base = cover::make_cover_point({0.5, 0.0}, CutSide::none, 0, 0);
    const DeckVector w = cover::winding_data(kCwSquare);
    REQUIRE(cover::winding_data(cover::reversed(kCwSquare)) == -w);
    const CoverPoint there = cover::continue_point(base, kCwSquare);
    const CoverPoint back = cover::continue_point(there, cover::reversed(kCwSquare));
    REQUIRE(back.p == 0);
    REQUIRE(back.q == 0);
}
