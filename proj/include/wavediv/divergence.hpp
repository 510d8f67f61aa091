#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavediv/exec.hpp"
#include "wavediv/field.hpp"
#include "wavediv/wavelet.hpp"

namespace wavediv {

/// Finite-scale surrogate modes for the divergence exponent
/// delta(x) = sup{gamma : |c psi(x)| >= C 2^{gamma j} along a subsequence}.
///
///  - MaxRatio:    max_j log2(M_j) / j. Conforms exactly to the
///                 coefficient-side upper bound (see upper_bound_for below).
///  - RecordSlope: least-squares slope of log2 M_j vs j over record scales,
///                 records detected iteratively against the current trend.
///  - CompRatio:   max_j [log2(M_j) + (log2 j)^2] / j. Divides out the
///                 log2-square damping every explicit family here carries,
///                 which otherwise biases finite-scale ratios down by
///                 (log2 jmax)^2 / jmax (about 1.0 at jmax = 16).
enum class FitMode { MaxRatio, RecordSlope, CompRatio };

std::string to_string(FitMode mode);
FitMode fit_mode_from_string(const std::string& name);

struct EstimatorSettings {
    int j_min = 4;
    /// Term inclusion cutoff: per-coordinate |2^j x - k| <= R. Defaults to
    /// the system support radius; for fast-decay systems, to the radius where
    /// the decay envelope falls below 2^-40.
    std::optional<double> window_radius;
    FitMode mode = FitMode::MaxRatio;
};

double resolve_window_radius(const WaveletSystem& system, const EstimatorSettings& settings);

/// Per-point record: per-scale maxima M_j(x) of |c psi^(i)_{j,k}(x)|, the
/// partial sums P_j(x), and the fitted exponents. delta_hat is -inf exactly
/// when every M_j with j >= j_min vanishes.
struct DivergenceProfile {
    std::vector<double> x;
    std::vector<double> scale_max;     // M_j, j = 0..jmax
    std::vector<double> partial_sums;  // P_j, j = 0..jmax
    double delta_hat = -kInf;          // estimate in `mode`
    double delta_max_ratio = -kInf;
    double delta_record_slope = -kInf;
    double delta_comp_ratio = -kInf;
    FitMode mode = FitMode::MaxRatio;
    std::vector<int> fit_scales;  // argmax scale / record scales of `mode`
    int max_window_terms = 0;     // largest per-scale term count encountered
};

double partial_sum(const CoefficientField& field, const WaveletSystem& system,
                   std::span<const double> x, int upto_j,
                   const EstimatorSettings& settings = {});

double scale_term_max(const CoefficientField& field, const WaveletSystem& system,
                      std::span<const double> x, int j,
                      const EstimatorSettings& settings = {});

DivergenceProfile divergence_profile(const CoefficientField& field, const WaveletSystem& system,
                                     std::span<const double> x,
                                     const EstimatorSettings& settings = {});

/// delta-hat per settings.mode; requires field.jmax() >= j_min + 4.
double divergence_exponent(const CoefficientField& field, const WaveletSystem& system,
                           std::span<const double> x, const EstimatorSettings& settings = {});

/// Batch kernel over many points (the hot loop); OpenMP parallelizes over
/// points, each profile being a pure function of shared read-only inputs.
std::vector<DivergenceProfile> divergence_profiles(const CoefficientField& field,
                                                   const WaveletSystem& system,
                                                   std::span<const std::vector<double>> points,
                                                   const EstimatorSettings& settings = {},
                                                   ExecPolicy exec = default_exec());

/// Plain-loop reference implementation kept for testing.
std::vector<DivergenceProfile> divergence_profiles_serial(
    const CoefficientField& field, const WaveletSystem& system,
    std::span<const std::vector<double>> points, const EstimatorSettings& settings = {});

/// Coefficient-side conformance bound for the MaxRatio estimate:
/// delta_hat <= d/p - s + log2(B sup|psi|)/j_min for any field whose
/// b^{s,inf}_p norm is B >= 1/sup|psi|.
double upper_bound_for(const BesovParams& params, double besov_sup_norm, double sup_psi,
                       int j_min);

/// Convergence-side check at a point: calibrates (or takes) the term bound
/// |c psi(x)| <= C1 2^{gamma j}, then reports the tail behaviour of P_J.
struct ConvergenceReport {
    bool premise_ok = true;
    int violated_scale = -1;   // first scale breaking a caller-supplied C1
    double c1 = 0.0;           // smallest valid constant (or the caller's)
    double fitted_rate = 0.0;  // LSQ slope of log2 |P_jmax - P_J| vs J
    double c2 = 0.0;           // max_J |P_jmax - P_J| 2^{-gamma J}
    std::vector<double> tails;  // |P_jmax - P_J|, J = 0..jmax-1
};

ConvergenceReport convergence_rate_check(const CoefficientField& field,
                                         const WaveletSystem& system, std::span<const double> x,
                                         double gamma, std::optional<double> c1 = std::nullopt,
                                         const EstimatorSettings& settings = {});

/// One-way transfer: if the partial sums diverge at rate gamma at x, the
/// per-scale term maxima must witness every sampled delta < gamma up to the
/// exact term-counting correction log2((j+1) W)/j_min. Returns true when the
/// implication holds (vacuously true when no P-side divergence is detected).
bool rate_transfer_check(const CoefficientField& field, const WaveletSystem& system,
                         std::span<const double> x, double gamma,
                         const EstimatorSettings& settings = {});

/// Least-squares slope of ys vs xs; slope_stderr optionally receives the
/// standard error of the slope estimate.
double least_squares_slope(std::span<const double> xs, std::span<const double> ys,
                           double* slope_stderr = nullptr);

}  // namespace wavediv
