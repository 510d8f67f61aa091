#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wavediv/covering.hpp"
#include "wavediv/divergence.hpp"
#include "wavediv/field.hpp"

namespace wavediv {

/// d - sp - gamma p on the admissible band gamma in [-s, -s + d/p]; nullopt
/// outside. For p = inf the band collapses to {-s} with value d.
std::optional<double> theoretical_spectrum(const BesovParams& params, double gamma);

/// gamma(alpha) = d/p - s - d/(p alpha).
double gamma_alpha(const BesovParams& params, double alpha);

/// Points dyadic-approximable at rate alpha: x = k/2^{floor(j/alpha)} +
/// u 2^{-j} with u uniform in [0,1)^d and k uniform at the coarse scale, j
/// cycling through `scales`. Each point records its generating (j, k).
struct AlphaSeed {
    double alpha = 1.0;
    std::vector<std::vector<double>> points;
    std::vector<std::pair<int, Pos>> generators;  // (j, coarse k) per point
    double gamma_target = 0.0;
};

AlphaSeed alpha_seeds(const BesovParams& params, double alpha, std::span<const int> scales,
                      int count, std::uint64_t seed);

struct SpectrumSettings {
    int grid_bits = 10;                // 2^{bits * d} evaluation points
    std::vector<double> gamma_grid;    // empty: default 9-point band grid
    std::vector<int> box_scales;       // empty: 2..grid_bits-2
    EstimatorSettings estimator{.j_min = 4, .mode = FitMode::CompRatio};
    ExecPolicy exec = default_exec();
};

/// Box-counting estimate of gamma -> dim {x : delta_hat(x) >= gamma}. dims
/// are NaN when fewer than 3 box scales have nonzero counts.
struct SpectrumEstimate {
    std::vector<double> gamma_grid;
    std::vector<double> dims;
    std::vector<double> ci_low, ci_high;
    std::vector<int> box_scales;
    int grid_bits = 0;
};

SpectrumEstimate estimate_spectrum(const CoefficientField& field, const WaveletSystem& system,
                                   const SpectrumSettings& settings);

std::vector<double> default_gamma_grid(const BesovParams& params, int n = 9);

/// Per-gamma least-squares slope of log2 Card{|c| >= threshold_j} vs j, a
/// purely coefficient-side dimension proxy. With compensate_log2sq the
/// thresholds are 2^{gamma j - (log2 j)^2}, matching the log2-square damping
/// of the explicit families; without it they are the plain 2^{gamma j}.
struct CountSpectrumRow {
    double gamma = 0.0;
    double slope = 0.0;
    double theory = 0.0;  // NaN when gamma is outside the admissible band
    bool defined = false;
};

std::vector<CountSpectrumRow> coefficient_count_spectrum(const CoefficientField& field,
                                                         const BesovParams& params,
                                                         std::span<const double> gammas,
                                                         bool compensate_log2sq = true);

/// Monte Carlo genericity run: per trial draws a fresh saturating field C and
/// checks, for each base field D, the maximal-divergence indicators of D + C.
struct ExperimentConfig {
    BesovParams params;
    DyadicCovering covering;
    int n_gens = 1;
    int jmax = 12;
    int trials = 5;
    std::uint64_t root_seed = 0;
    int n_test_points = 100;
    double tol_min = 0.30;     // min delta-hat >= -s - tol_min
    double tol_median = 0.20;  // |median delta-hat + s| <= tol_median
    double tol_slope = 0.35;   // counting-spectrum slope vs theory
    std::vector<double> gammas;  // empty: 3 interior band points
    EstimatorSettings estimator{.j_min = 4, .mode = FitMode::CompRatio};
};

struct TrialIndicators {
    bool min_ok = false;
    bool median_ok = false;
    bool slopes_ok = false;
    double min_delta = 0.0;
    double median_delta = 0.0;
    bool all() const { return min_ok && median_ok && slopes_ok; }
};

struct TrialResult {
    std::uint64_t seed = 0;
    std::vector<TrialIndicators> per_field;
};

struct ExperimentReport {
    std::vector<TrialResult> trials;
    std::vector<double> pass_rates;  // per base field
};

ExperimentReport genericity_experiment(std::span<const CoefficientField> base_fields,
                                       const WaveletSystem& system,
                                       const ExperimentConfig& config);

}  // namespace wavediv
