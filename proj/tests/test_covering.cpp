#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wavediv/covering.hpp"
#include "wavediv/rng.hpp"

using namespace wavediv;

namespace {

DyadicCovering haar_covering() {
    auto haar = haar_system(1);
    CoveringSearchOptions opts;
    opts.max_depth = 1;
    opts.c0 = 1.0;
    opts.grid_per_cube = 8;
    auto result = find_dyadic_covering(haar, opts);
    REQUIRE(result.covering.has_value());
    return *result.covering;
}

/// Test-local Lipschitz system: tent 1 - |y| on [-1, 1], peak at 0, so the
/// dilated tents sit on the dyadic lattice and overlap.
WaveletSystem centered_tent() {
    auto eval = [](int, std::span<const double> y) {
        const double a = std::abs(y[0]);
        return a <= 1.0 ? 1.0 - a : 0.0;
    };
    return WaveletSystem("tent", 1, 1, eval, 1.0, 1.0, DecayBound{1.0, 4.0}, 1.0);
}

}  // namespace

TEST_CASE("haar covering: depth 1, two triplets, c0 = 1") {
    auto covering = haar_covering();
    CHECK(covering.depth() == 1);
    REQUIRE(covering.size() == 2);
    CHECK(covering.c0 == 1.0);
    CHECK(covering.certified == "grid-only");
    CHECK(covering.triplets[0].i == 1);
    CHECK(covering.triplets[0].j == 1);
    CHECK(covering.triplets[0].k == Pos{0});
    CHECK(covering.triplets[1].i == 1);
    CHECK(covering.triplets[1].j == 1);
    CHECK(covering.triplets[1].k == Pos{1});
}

TEST_CASE("schauder has no covering; witness is the origin") {
    auto tent = schauder_system();
    for (int depth : {1, 2, 3}) {
        CoveringSearchOptions opts;
        opts.max_depth = depth;
        opts.c0 = 0.01;
        opts.grid_per_cube = 4;
        auto result = find_dyadic_covering(tent, opts);
        CHECK_FALSE(result.covering.has_value());
        REQUIRE(result.witness.size() == 1);
        CHECK(result.witness[0] == 0.0);
    }
}

TEST_CASE("indicator system covering at depth 1") {
    auto ind = indicator_system(1, 1);
    CoveringSearchOptions opts;
    opts.max_depth = 1;
    opts.c0 = 1.0;
    opts.grid_per_cube = 4;
    auto result = find_dyadic_covering(ind, opts);
    REQUIRE(result.covering.has_value());
    CHECK(result.covering->depth() == 1);
    REQUIRE(result.covering->size() == 2);
    CHECK(result.covering->triplets[0].k == Pos{0});
    CHECK(result.covering->triplets[1].k == Pos{1});
    CHECK(result.best_c0 == 1.0);
}

TEST_CASE("invalid options are rejected") {
    auto haar = haar_system(1);
    CoveringSearchOptions opts;
    opts.c0 = 0.0;
    CHECK_THROWS_AS(find_dyadic_covering(haar, opts), std::invalid_argument);
    opts.c0 = 0.5;
    opts.grid_per_cube = 1;
    CHECK_THROWS_AS(find_dyadic_covering(haar, opts), std::invalid_argument);
    opts.grid_per_cube = 4;
    opts.max_depth = 0;
    CHECK_THROWS_AS(find_dyadic_covering(haar, opts), std::invalid_argument);
}

TEST_CASE("covering_map: stated examples and tree coherence") {
    auto covering = haar_covering();
    CHECK(covering_map(covering, 1, DyadicCube{2, {3}}) == DyadicCube{3, {6}});
    CHECK(covering_map(covering, 2, DyadicCube{1, {1}}) == DyadicCube{2, {3}});
    // the unit cube maps to the defining cube itself
    for (int l = 1; l <= covering.size(); ++l) {
        auto img = covering_map(covering, l, DyadicCube{0, {0}});
        CHECK(img.j == covering.triplets[static_cast<std::size_t>(l - 1)].j);
        CHECK(img.k == covering.triplets[static_cast<std::size_t>(l - 1)].k);
    }
    CHECK_THROWS_AS(covering_map(covering, 3, DyadicCube{0, {0}}), std::out_of_range);
}

TEST_CASE("covering_map raises the generation by exactly j_l and is injective") {
    auto covering = haar_covering();
    CounterRng rng(11);
    for (int l = 1; l <= covering.size(); ++l) {
        const int jl = covering.triplets[static_cast<std::size_t>(l - 1)].j;
        std::vector<DyadicCube> cubes;
        std::vector<DyadicCube> images;
        for (int n = 0; n < 50; ++n) {
            const int j = 1 + static_cast<int>(rng.uniform01({1, static_cast<std::uint64_t>(n)}) * 8);
            const auto k = static_cast<std::int64_t>(
                rng.uniform01({2, static_cast<std::uint64_t>(n)}) * (1 << j));
            DyadicCube cube{j, {k}};
            if (std::find(cubes.begin(), cubes.end(), cube) != cubes.end()) continue;
            cubes.push_back(cube);
            auto img = covering_map(covering, l, cube);
            CHECK(img.j - cube.j == jl);
            for (const auto& other : images) CHECK_FALSE(other == img);
            images.push_back(img);
        }
        CHECK(images.size() > 20);
    }
}

TEST_CASE("covering_lower_bound_at: haar reaches c0 everywhere incl. the origin") {
    auto haar = haar_system(1);
    auto covering = haar_covering();
    {
        std::vector<double> x{0.3};
        auto [l, v] = covering_lower_bound_at(haar, covering, x);
        CHECK(v == 1.0);
        CHECK(l >= 1);
    }
    {
        std::vector<double> x{0.0};
        auto [l, v] = covering_lower_bound_at(haar, covering, x);
        CHECK(l == 1);
        CHECK(v == 1.0);
    }
    auto ind = indicator_system(1, 1);
    CoveringSearchOptions opts;
    opts.max_depth = 1;
    opts.c0 = 1.0;
    opts.grid_per_cube = 4;
    auto ind_cov = find_dyadic_covering(ind, opts);
    REQUIRE(ind_cov.covering.has_value());
    for (double t : {0.0, 0.31, 0.5, 0.77, 0.999}) {
        std::vector<double> x{t};
        auto [l, v] = covering_lower_bound_at(ind, *ind_cov.covering, x);
        (void)l;
        CHECK(v == 1.0);
    }
}

TEST_CASE("re-verification at doubled grid resolution") {
    auto haar = haar_system(1);
    auto covering = haar_covering();
    CHECK(verify_covering(haar, covering, 32));

    // Lipschitz margin path: the covering certifies between grid points
    auto tent = centered_tent();
    CoveringSearchOptions opts;
    opts.max_depth = 2;
    opts.c0 = 0.25;
    opts.grid_per_cube = 16;
    auto result = find_dyadic_covering(tent, opts);
    REQUIRE(result.covering.has_value());
    CHECK(result.covering->certified == "lipschitz");
    CHECK(verify_covering(tent, *result.covering, 2 * 16 * 4));
}

TEST_CASE("cascade system admits a covering (grid-certified)") {
    auto db = daubechies4_system(12);
    CoveringSearchOptions opts;
    opts.max_depth = 3;
    opts.c0 = 0.05;
    opts.grid_per_cube = 8;
    auto result = find_dyadic_covering(db, opts);
    REQUIRE(result.covering.has_value());
    CHECK(result.covering->certified == "grid-only");
    CHECK(result.best_c0 >= 0.05);
    CHECK(result.covering->depth() <= 3);
}

TEST_CASE("covering JSON round trip") {
    auto covering = haar_covering();
    auto doc = covering_to_json(covering);
    CHECK(doc.at("M").get<int>() == 1);
    CHECK(doc.at("certified").get<std::string>() == "grid-only");
    auto back = covering_from_json(doc);
    CHECK(back.c0 == covering.c0);
    REQUIRE(back.size() == covering.size());
    for (int l = 0; l < back.size(); ++l) {
        CHECK(back.triplets[static_cast<std::size_t>(l)].i ==
              covering.triplets[static_cast<std::size_t>(l)].i);
        CHECK(back.triplets[static_cast<std::size_t>(l)].k ==
              covering.triplets[static_cast<std::size_t>(l)].k);
    }
}
