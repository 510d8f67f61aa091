#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "wavediv/besov.hpp"
#include "wavediv/covering.hpp"
#include "wavediv/generators.hpp"

using namespace wavediv;

namespace {

CoefficientField single_entry(int d, int jmax, BesovParams params, int i, DyadicCube cube,
                              double v) {
    FieldBuilder b(d, jmax, params);
    b.add(i, cube, v);
    return std::move(b).build();
}

// Oracle: e value from the displayed formula with its own brute-force J.
double e_oracle(const BesovParams& params, int j, std::int64_t k) {
    int J = j;
    std::int64_t kk = k;
    while (J > 0 && kk % 2 == 0) {
        kk /= 2;
        --J;
    }
    const double dp = params.d_over_p();
    const double lg = std::log2(static_cast<double>(j));
    return std::pow(2.0, -lg * lg) * std::pow(2.0, (dp - params.s) * j) *
           std::pow(2.0, -dp * J);
}

DyadicCovering haar_covering_1d() {
    auto haar = haar_system(1);
    CoveringSearchOptions opts;
    opts.max_depth = 1;
    opts.c0 = 1.0;
    opts.grid_per_cube = 8;
    return *find_dyadic_covering(haar, opts).covering;
}

}  // namespace

TEST_CASE("scale_lp: stated examples") {
    BesovParams params{0.5, 2.0, 2.0, 1};  // s = d/p, so the j = 2 weight is 1
    auto f = single_entry(1, 4, params, 1, {2, {0}}, 1.0);
    CHECK(scale_lp(f, params, 2) == doctest::Approx(1.0));
    CHECK(scale_lp(f, params, 3) == 0.0);  // empty scale
}

TEST_CASE("scale_lp of the E-sequence at j = 4 equals the enumeration oracle") {
    // frozen from the by-hand enumeration: 2^-(log2 4)^2 * sqrt(3)
    const double expected = 0.10825317547305482;
    for (double s : {0.5, 0.1, 1.3}) {
        BesovParams params{s, 2.0, 2.0, 1};
        auto e = deterministic_e(params, 6);
        CHECK(scale_lp(e, params, 4) == doctest::Approx(expected).epsilon(1e-12));

        // independent double-check against the raw oracle sum
        double acc = 0.0;
        const double w = std::pow(2.0, (s - 0.5) * 4);
        for (std::int64_t k = 0; k < 16; ++k) acc += std::pow(e_oracle(params, 4, k) * w, 2.0);
        CHECK(scale_lp(e, params, 4) == doctest::Approx(std::sqrt(acc)).epsilon(1e-12));
    }
}

TEST_CASE("besov_norm: unit coefficient, homogeneity, E oracle") {
    BesovParams params{1.0, 1.0, 1.0, 1};  // s = d/p = 1
    auto f = single_entry(1, 2, params, 1, {0, {0}}, 1.0);
    CHECK(besov_norm(f, params) == doctest::Approx(1.0));

    // positive homogeneity |t|, including quasi-norm exponents below 1
    for (auto [p, q] : std::vector<std::pair<double, double>>{{2.0, 2.0}, {0.5, 0.7}, {3.0, 0.4}}) {
        BesovParams pr{0.3, p, q, 1};
        auto e = deterministic_e(pr, 6);
        const double base = besov_norm(e, pr);
        for (double t : {2.0, -3.5, 0.25}) {
            CHECK(besov_norm(scale_field(e, t), pr) ==
                  doctest::Approx(std::abs(t) * base).epsilon(1e-10));
        }
    }

    // E truncated at jmax = 12 against the direct double sum
    BesovParams pr{0.5, 2.0, 2.0, 1};
    auto e = deterministic_e(pr, 12);
    double acc = 0.0;
    for (int j = 1; j <= 12; ++j) {
        double sj = 0.0;
        const double w = std::pow(2.0, (pr.s - 0.5) * j);
        for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k)
            sj += std::pow(e_oracle(pr, j, k) * w, 2.0);
        acc += sj;  // q = p = 2 collapses the double sum
    }
    CHECK(besov_norm(e, pr) == doctest::Approx(std::sqrt(acc)).epsilon(1e-10));
}

TEST_CASE("scale profile bound with the enumerated constant") {
    BesovParams params{0.5, 2.0, 2.0, 1};
    auto e = deterministic_e(params, 12);
    for (int j = 1; j <= 12; ++j) {
        const double lg = std::log2(static_cast<double>(j));
        const double bound = std::sqrt(1.5 * j) * std::pow(2.0, -lg * lg);
        CHECK(scale_lp(e, params, j) <= bound * (1 + 1e-12));
    }
}

TEST_CASE("weighted_norm and compact membership") {
    BesovParams params{0.5, 2.0, 2.0, 1};
    auto zero = CoefficientField(1, 8, params, {});
    auto weights = default_compact_weights(8);
    CHECK(weighted_norm(zero, params, weights) == 0.0);
    CHECK(in_compact_subset(zero, params, weights));

    // saturating field with a_j = j: the functional is finite and its partial
    // sums plateau
    SaturatingConfig cfg{params, haar_covering_1d(), 14, 42, 1};
    auto c = saturating_random(cfg);
    std::vector<double> lin(15);
    for (int j = 0; j <= 14; ++j) lin[static_cast<std::size_t>(j)] = static_cast<double>(j + 1);
    const double total = weighted_norm(c, params, lin);
    CHECK(std::isfinite(total));
    // partial sums over scales plateau: the last scales contribute next to
    // nothing relative to the head (the log2-square damping dominates j)
    double upto_10 = 0.0;
    for (int j = 0; j <= 10; ++j)
        upto_10 += lin[static_cast<std::size_t>(j)] * std::pow(scale_lp(c, params, j), 2.0);
    CHECK(total - upto_10 < 1e-4 * total);

    // a coefficient outside the unit cube destroys membership regardless of size
    FieldBuilder b(1, 3, params);
    b.add(1, {2, {5}}, 1e-12);
    auto outside = std::move(b).build();
    CHECK_FALSE(in_compact_subset(outside, params, default_compact_weights(3)));
    CHECK(weighted_norm(outside, params, default_compact_weights(3)) <= 1.0);
}

TEST_CASE("sup_coefficient_bound") {
    BesovParams params{0.5, 2.0, 2.0, 1};
    auto e = deterministic_e(params, 10);
    CHECK(sup_coefficient_bound(e, params) == doctest::Approx(1.0));  // attained at j = 1, k = 0

    auto zero = CoefficientField(1, 4, params, {});
    CHECK(sup_coefficient_bound(zero, params) == 0.0);

    auto haar = haar_system(1);
    auto pd = point_divergent(params, haar, haar_covering_1d(), std::vector<double>{1.0 / 3.0}, 12);
    CHECK(sup_coefficient_bound(pd, params) == doctest::Approx(1.0));
}

TEST_CASE("count_large: examples, monotonicity, Chebyshev") {
    BesovParams params{0.0, 2.0, 2.0, 1};
    auto haar = haar_system(1);
    auto pd = point_divergent(params, haar, haar_covering_1d(), std::vector<double>{1.0 / 3.0}, 12);
    for (int j = 0; j <= 12; ++j)
        for (double gamma : {-1.0, -0.3, 0.0, 0.3})
            CHECK(count_large(pd, j, gamma) <= 1);

    auto zero = CoefficientField(1, 6, params, {});
    for (int j = 0; j <= 6; ++j) CHECK(count_large(zero, j, -2.0) == 0);

    BesovParams pr{0.5, 2.0, 2.0, 1};
    auto e = deterministic_e(pr, 12);
    for (int j = 1; j <= 12; ++j) {
        std::int64_t prev = count_large(e, j, -3.0);
        for (double gamma : {-2.0, -1.0, -0.5, -0.1}) {
            const auto c = count_large(e, j, gamma);
            CHECK(c <= prev);
            prev = c;
        }
        // Chebyshev: count * 2^{gamma p j} <= eps_j^p 2^{(d - sp) j}
        for (double gamma : {-1.5, -0.8}) {
            const double lhs = static_cast<double>(count_large(e, j, gamma)) *
                               std::pow(2.0, gamma * pr.p * j);
            const double rhs = std::pow(scale_lp(e, pr, j), pr.p) *
                               std::pow(2.0, (pr.d - pr.s * pr.p) * j);
            CHECK(lhs <= rhs * (1 + 1e-12));
        }
    }
}

TEST_CASE("p = q = inf reproduces the weighted sup norm") {
    BesovParams params{0.7, kInf, kInf, 1};
    FieldBuilder b(1, 5, params);
    b.add(1, {0, {0}}, 0.4);
    b.add(1, {3, {5}}, -0.2);
    b.add(1, {5, {17}}, 0.01);
    auto f = std::move(b).build();
    double sup = 0.0;
    f.for_each([&](int j, const FieldEntry& e) {
        sup = std::max(sup, std::abs(e.v) * std::pow(2.0, params.s * j));
    });
    CHECK(besov_norm(f, params) == doctest::Approx(sup));
    CHECK(sup_coefficient_bound(f, params) == doctest::Approx(sup));
}

TEST_CASE("scale-profile CSV emitter") {
    BesovParams params{0.5, 2.0, 2.0, 1};
    auto e = deterministic_e(params, 4);
    std::ostringstream os;
    std::vector<double> gammas{-0.5};
    write_scale_profile_csv(os, e, params, gammas);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line.rfind("j,eps_j,count_gamma_", 0) == 0);
    int rows = 0;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 5);  // j = 0..4
}
