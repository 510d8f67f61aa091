#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "wavediv/dyadic.hpp"
#include "wavediv/rng.hpp"

using namespace wavediv;

namespace {

// Oracle: reduce k/2^j by brute-force repeated division by 2.
Irreducible reduce_by_division(int j, Pos k) {
    while (j > 0) {
        bool all_even = true;
        for (auto c : k)
            if (c % 2 != 0) all_even = false;
        if (!all_even) break;
        for (auto& c : k) c /= 2;
        --j;
    }
    return {j, k};
}

}  // namespace

TEST_CASE("irreducible: stated examples") {
    auto r = irreducible(3, {4});
    CHECK(r.J == 1);
    CHECK(r.k == Pos{1});

    r = irreducible(5, {7});
    CHECK(r.J == 5);
    CHECK(r.k == Pos{7});

    r = irreducible(3, {4, 6});
    CHECK(r.J == 2);
    CHECK(r.k == Pos{2, 3});

    // zero-vector convention
    r = irreducible(4, {0});
    CHECK(r.J == 0);
    CHECK(r.k == Pos{0});
}

TEST_CASE("irreducible matches the brute-force oracle over full ranges") {
    for (int j = 0; j <= 10; ++j) {
        for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
            auto got = irreducible(j, {k});
            auto want = reduce_by_division(j, {k});
            CHECK(got.J == want.J);
            CHECK(got.k == want.k);
        }
    }
    // d = 2 spot grid
    for (int j = 0; j <= 5; ++j)
        for (std::int64_t k1 = 0; k1 < (std::int64_t{1} << j); ++k1)
            for (std::int64_t k2 = 0; k2 < (std::int64_t{1} << j); ++k2) {
                auto got = irreducible(j, {k1, k2});
                auto want = reduce_by_division(j, {k1, k2});
                CHECK(got.J == want.J);
                CHECK(got.k == want.k);
            }
}

TEST_CASE("irreducible scale never decreases down the tree") {
    for (int j = 1; j <= 9; ++j) {
        for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
            DyadicCube cube{j, {k}};
            const int J = irreducible(cube).J;
            for (const auto& c : children(cube)) CHECK(irreducible(c).J >= J);
        }
    }
}

TEST_CASE("tree relations") {
    CHECK(parent(DyadicCube{3, {5}}) == DyadicCube{2, {2}});
    CHECK(ancestor_at(DyadicCube{4, {13}}, 0) == DyadicCube{0, {0}});

    auto kids = children(DyadicCube{0, {0, 0}});
    REQUIRE(kids.size() == 4);
    for (const auto& c : kids) {
        CHECK(c.j == 1);
        CHECK(c.k[0] >= 0);
        CHECK(c.k[0] <= 1);
        CHECK(c.k[1] >= 0);
        CHECK(c.k[1] <= 1);
        CHECK(parent(c) == DyadicCube{0, {0, 0}});
    }

    CHECK_THROWS_AS(ancestor_at(DyadicCube{2, {1}}, 3), std::invalid_argument);
}

TEST_CASE("parent(child(cube, m)) round trip in d = 3") {
    DyadicCube cube{2, {1, 3, 0}};
    for (std::uint32_t m = 0; m < 8; ++m) CHECK(parent(child(cube, m)) == cube);
}

TEST_CASE("containing_cube: stated examples") {
    {
        std::vector<double> x{0.3};
        CHECK(containing_cube(x, 2) == DyadicCube{2, {1}});
    }
    {
        std::vector<double> x{0.0};
        CHECK(containing_cube(x, 5) == DyadicCube{5, {0}});
    }
    {
        std::vector<double> x{0.5, 0.5};
        CHECK(containing_cube(x, 1) == DyadicCube{1, {1, 1}});
    }
}

TEST_CASE("containing_cube is consistent with ancestor_at across scales") {
    CounterRng rng(7);
    for (int n = 0; n < 200; ++n) {
        std::vector<double> x{2.0 * rng.uniform01({static_cast<std::uint64_t>(n), 0}) - 0.5};
        for (int j = 0; j < 12; ++j) {
            auto fine = containing_cube(x, j + 1);
            CHECK(containing_cube(x, j) == ancestor_at(fine, j));
            CHECK(contains(containing_cube(x, j), x));
        }
    }
}

TEST_CASE("half-open membership at cube boundaries") {
    DyadicCube cube{1, {1}};
    std::vector<double> left{0.5}, right{1.0};
    CHECK(contains(cube, left));
    CHECK_FALSE(contains(cube, right));
    CHECK(inside_unit_cube(cube));
    CHECK_FALSE(inside_unit_cube(DyadicCube{1, {2}}));
    CHECK_FALSE(inside_unit_cube(DyadicCube{1, {-1}}));
}
