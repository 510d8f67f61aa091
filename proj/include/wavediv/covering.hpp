#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wavediv/exec.hpp"
#include "wavediv/wavelet.hpp"

namespace wavediv {

struct CoveringTriplet {
    int i = 1;
    int j = 1;  // > 0
    Pos k;
};

/// Finitely many triplets (i_l, j_l, k_l) such that every x in [0,1)^d has
/// some l with |psi^(i_l)(2^{j_l} x - k_l)| >= c0. The depth M is the largest
/// j_l. "certified" records whether the verification grid carried a Lipschitz
/// margin ("lipschitz") or is grid-only.
struct DyadicCovering {
    std::vector<CoveringTriplet> triplets;
    double c0 = 0.0;
    std::string certified = "grid-only";

    int size() const { return static_cast<int>(triplets.size()); }
    int depth() const;  // M
};

/// The covering cube mu^l(lambda): lambda's own copy of the defining cube
/// (j_l, k_l), i.e. generation j + j_l at position 2^{j_l} k + k_l. Its scale
/// exceeds lambda's by j_l <= M; it need not be contained in lambda when k_l
/// lies outside [0, 2^{j_l})^d. l is 1-based.
DyadicCube covering_map(const DyadicCovering& covering, int l, const DyadicCube& cube);

/// Best triplet at a point y of the unit-cube frame: returns (l, |value|)
/// with l maximizing |psi^(i_l)(2^{j_l} y - k_l)| (first index wins ties).
/// A returned value below c0 signals a covering violation at y.
std::pair<int, double> covering_lower_bound_at(const WaveletSystem& system,
                                               const DyadicCovering& covering,
                                               std::span<const double> y);

struct CoveringSearchOptions {
    int max_depth = 2;
    double c0 = 0.5;
    int grid_per_cube = 4;  // verification grid points per smallest-cube side
    ExecPolicy exec = default_exec();
};

struct CoveringSearchResult {
    std::optional<DyadicCovering> covering;
    /// A grid point no candidate covers (set when covering is empty).
    std::vector<double> witness;
    /// min over grid points of max over candidates of |psi|: the best c0 any
    /// covering could certify at this depth on this grid.
    double best_c0 = 0.0;
};

/// Greedy set cover over candidate triplets (i, j <= max_depth, k with the
/// candidate cube within reach of [0,1)^d). A candidate covers a grid point x
/// when |psi^(i)(2^j x - k)| >= c0 + margin(j); the margin is Lip * 2^j * h
/// when the system carries a Lipschitz constant (h = grid step), else 0 and
/// the result is only grid-certified. Ties break lexicographically in
/// (i, j, k), so the result is deterministic under any execution policy.
CoveringSearchResult find_dyadic_covering(const WaveletSystem& system,
                                          const CoveringSearchOptions& options);

/// Re-check the covering property on a fresh grid (no margin), typically at
/// twice the resolution used by the search.
bool verify_covering(const WaveletSystem& system, const DyadicCovering& covering,
                     int grid_per_side);

nlohmann::ordered_json covering_to_json(const DyadicCovering& covering);
DyadicCovering covering_from_json(const nlohmann::json& doc);

}  // namespace wavediv
