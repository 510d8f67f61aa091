#include "wavediv/covering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace wavediv {

int DyadicCovering::depth() const {
    int m = 0;
    for (const auto& t : triplets) m = std::max(m, t.j);
    return m;
}

DyadicCube covering_map(const DyadicCovering& covering, int l, const DyadicCube& cube) {
    if (l < 1 || l > covering.size())
        throw std::out_of_range("covering_map: l out of range");
    const auto& t = covering.triplets[static_cast<std::size_t>(l - 1)];
    if (static_cast<int>(t.k.size()) != cube.dim())
        throw std::invalid_argument("covering_map: dimension mismatch");
    DyadicCube out;
    out.j = cube.j + t.j;
    out.k.resize(cube.k.size());
    for (std::size_t c = 0; c < cube.k.size(); ++c)
        out.k[c] = (cube.k[c] << t.j) + t.k[c];
    return out;
}

std::pair<int, double> covering_lower_bound_at(const WaveletSystem& system,
                                               const DyadicCovering& covering,
                                               std::span<const double> y) {
    int best_l = 1;
    double best = -1.0;
    std::vector<double> arg(y.size());
    for (int l = 1; l <= covering.size(); ++l) {
        const auto& t = covering.triplets[static_cast<std::size_t>(l - 1)];
        const double scale = std::exp2(static_cast<double>(t.j));
        for (std::size_t c = 0; c < y.size(); ++c)
            arg[c] = y[c] * scale - static_cast<double>(t.k[c]);
        const double v = std::abs(system.eval_raw(t.i, arg));
        if (v > best) {
            best = v;
            best_l = l;
        }
    }
    return {best_l, best};
}

namespace {

struct Grid {
    int d;
    std::int64_t per_side;
    double h;

    std::int64_t total() const {
        std::int64_t n = 1;
        for (int c = 0; c < d; ++c) n *= per_side;
        return n;
    }
    std::vector<double> point(std::int64_t idx) const {
        std::vector<double> x(static_cast<std::size_t>(d));
        for (int c = 0; c < d; ++c) {
            x[static_cast<std::size_t>(c)] = static_cast<double>(idx % per_side) * h;
            idx /= per_side;
        }
        return x;
    }
};

std::vector<CoveringTriplet> enumerate_candidates(const WaveletSystem& system,
                                                  const CoveringSearchOptions& options) {
    // reach: how far 2^j x - k may sit from the support/decay core while the
    // candidate can still clear c0 somewhere on [0,1)^d
    double reach;
    if (system.support_radius()) {
        reach = *system.support_radius();
    } else {
        const auto& dec = system.decay();
        reach = std::pow(dec.c / options.c0, 1.0 / dec.n);
    }
    const auto lo = static_cast<std::int64_t>(std::floor(-reach));
    std::vector<CoveringTriplet> cands;
    for (int i = 1; i <= system.n_gens(); ++i) {
        for (int j = 1; j <= options.max_depth; ++j) {
            const std::int64_t hi = (std::int64_t{1} << j) - 1 +
                                    static_cast<std::int64_t>(std::ceil(reach));
            const std::int64_t span = hi - lo + 1;
            std::int64_t count = 1;
            for (int c = 0; c < system.dim(); ++c) count *= span;
            for (std::int64_t m = 0; m < count; ++m) {
                Pos k(static_cast<std::size_t>(system.dim()));
                std::int64_t rem = m;
                // last coordinate varies fastest so enumeration is
                // lexicographic in k
                for (int c = system.dim() - 1; c >= 0; --c) {
                    k[static_cast<std::size_t>(c)] = lo + rem % span;
                    rem /= span;
                }
                cands.push_back({i, j, std::move(k)});
            }
        }
    }
    return cands;
}

}  // namespace

CoveringSearchResult find_dyadic_covering(const WaveletSystem& system,
                                          const CoveringSearchOptions& options) {
    if (options.max_depth < 1)
        throw std::invalid_argument("find_dyadic_covering: max_depth must be >= 1");
    if (!(options.c0 > 0.0))
        throw std::invalid_argument("find_dyadic_covering: c0 must be > 0");
    if (options.grid_per_cube < 2)
        throw std::invalid_argument("find_dyadic_covering: grid_per_cube must be >= 2");

    const int d = system.dim();
    Grid grid{d, options.grid_per_cube * (std::int64_t{1} << options.max_depth), 0.0};
    grid.h = 1.0 / static_cast<double>(grid.per_side);
    const std::int64_t n_points = grid.total();

    auto candidates = enumerate_candidates(system, options);
    const auto n_cand = static_cast<std::int64_t>(candidates.size());

    const bool with_margin = system.lipschitz().has_value();
    const double lip = with_margin ? *system.lipschitz() : 0.0;

    // coverage bitmap per candidate + per-point best value (for best_c0)
    const std::int64_t words = (n_points + 63) / 64;
    std::vector<std::uint64_t> cover(static_cast<std::size_t>(n_cand * words), 0);
    std::vector<double> point_best(static_cast<std::size_t>(n_points), 0.0);
    std::vector<double> cand_best(static_cast<std::size_t>(n_cand), 0.0);

    auto scan_candidate = [&](std::int64_t ci) {
        const auto& t = candidates[static_cast<std::size_t>(ci)];
        const double scale = std::exp2(static_cast<double>(t.j));
        const double threshold = options.c0 + (with_margin ? lip * scale * grid.h : 0.0);
        std::vector<double> arg(static_cast<std::size_t>(d));
        double best = 0.0;
        for (std::int64_t pi = 0; pi < n_points; ++pi) {
            std::int64_t rem = pi;
            for (int c = 0; c < d; ++c) {
                arg[static_cast<std::size_t>(c)] =
                    static_cast<double>(rem % grid.per_side) * grid.h * scale -
                    static_cast<double>(t.k[static_cast<std::size_t>(c)]);
                rem /= grid.per_side;
            }
            const double v = std::abs(system.eval_raw(t.i, arg));
            best = std::max(best, v);
            if (v >= threshold)
                cover[static_cast<std::size_t>(ci * words + pi / 64)] |=
                    (std::uint64_t{1} << (pi % 64));
        }
        cand_best[static_cast<std::size_t>(ci)] = best;
    };

    if (options.exec == ExecPolicy::OpenMP) {
#ifdef WAVEDIV_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::int64_t ci = 0; ci < n_cand; ++ci) scan_candidate(ci);
    } else {
        for (std::int64_t ci = 0; ci < n_cand; ++ci) scan_candidate(ci);
    }

    // per-point best over all candidates (margin-free) for best_c0
    {
        std::vector<double> arg(static_cast<std::size_t>(d));
        for (std::int64_t pi = 0; pi < n_points; ++pi) {
            double best = 0.0;
            auto x = grid.point(pi);
            for (std::int64_t ci = 0; ci < n_cand; ++ci) {
                const auto& t = candidates[static_cast<std::size_t>(ci)];
                if (cand_best[static_cast<std::size_t>(ci)] <= best) continue;
                const double scale = std::exp2(static_cast<double>(t.j));
                for (int c = 0; c < d; ++c)
                    arg[static_cast<std::size_t>(c)] =
                        x[static_cast<std::size_t>(c)] * scale -
                        static_cast<double>(t.k[static_cast<std::size_t>(c)]);
                best = std::max(best, std::abs(system.eval_raw(t.i, arg)));
            }
            point_best[static_cast<std::size_t>(pi)] = best;
        }
    }

    CoveringSearchResult result;
    result.best_c0 = n_points > 0 ? *std::min_element(point_best.begin(), point_best.end()) : 0.0;

    // greedy selection; any point with no covering candidate at all is a witness
    std::vector<std::uint64_t> uncovered(static_cast<std::size_t>(words), ~std::uint64_t{0});
    if (n_points % 64 != 0)
        uncovered.back() = (std::uint64_t{1} << (n_points % 64)) - 1;

    auto any_candidate_covers = [&](std::int64_t pi) {
        for (std::int64_t ci = 0; ci < n_cand; ++ci)
            if (cover[static_cast<std::size_t>(ci * words + pi / 64)] &
                (std::uint64_t{1} << (pi % 64)))
                return true;
        return false;
    };
    for (std::int64_t pi = 0; pi < n_points; ++pi) {
        if (!any_candidate_covers(pi)) {
            result.witness = grid.point(pi);
            return result;
        }
    }

    DyadicCovering covering;
    covering.c0 = options.c0;
    covering.certified = with_margin ? "lipschitz" : "grid-only";
    std::int64_t remaining = n_points;
    while (remaining > 0) {
        std::int64_t best_ci = -1;
        std::int64_t best_gain = 0;
        for (std::int64_t ci = 0; ci < n_cand; ++ci) {
            std::int64_t gain = 0;
            for (std::int64_t w = 0; w < words; ++w)
                gain += std::popcount(cover[static_cast<std::size_t>(ci * words + w)] &
                                      uncovered[static_cast<std::size_t>(w)]);
            if (gain > best_gain) {  // strict: ties keep the lexicographically first
                best_gain = gain;
                best_ci = ci;
            }
        }
        if (best_ci < 0) break;  // unreachable: full coverage was pre-checked
        const auto& t = candidates[static_cast<std::size_t>(best_ci)];
        covering.triplets.push_back(t);
        for (std::int64_t w = 0; w < words; ++w)
            uncovered[static_cast<std::size_t>(w)] &=
                ~cover[static_cast<std::size_t>(best_ci * words + w)];
        remaining = 0;
        for (auto w : uncovered) remaining += std::popcount(w);
    }

    result.covering = std::move(covering);
    return result;
}

bool verify_covering(const WaveletSystem& system, const DyadicCovering& covering,
                     int grid_per_side) {
    const int d = system.dim();
    Grid grid{d, grid_per_side, 1.0 / static_cast<double>(grid_per_side)};
    for (std::int64_t pi = 0; pi < grid.total(); ++pi) {
        auto x = grid.point(pi);
        auto [l, v] = covering_lower_bound_at(system, covering, x);
        (void)l;
        if (v < covering.c0) return false;
    }
    return true;
}

nlohmann::ordered_json covering_to_json(const DyadicCovering& covering) {
    nlohmann::ordered_json doc;
    doc["c0"] = covering.c0;
    doc["M"] = covering.depth();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& t : covering.triplets) {
        nlohmann::ordered_json item;
        item["i"] = t.i;
        item["j"] = t.j;
        item["k"] = t.k;
        arr.push_back(std::move(item));
    }
    doc["triplets"] = std::move(arr);
    doc["certified"] = covering.certified;
    return doc;
}

DyadicCovering covering_from_json(const nlohmann::json& doc) {
    DyadicCovering covering;
    covering.c0 = doc.at("c0").get<double>();
    covering.certified = doc.value("certified", "grid-only");
    for (const auto& item : doc.at("triplets")) {
        CoveringTriplet t;
        t.i = item.at("i").get<int>();
        t.j = item.at("j").get<int>();
        t.k = item.at("k").get<Pos>();
        if (t.j < 1) throw std::runtime_error("covering_from_json: triplet scale must be > 0");
        covering.triplets.push_back(std::move(t));
    }
    return covering;
}

}  // namespace wavediv
