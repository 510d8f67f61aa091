#include "wavediv/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "wavediv/besov.hpp"
#include "wavediv/generators.hpp"
#include "wavediv/rng.hpp"

namespace wavediv {

std::optional<double> theoretical_spectrum(const BesovParams& params, double gamma) {
    if (std::isinf(params.p)) {
        if (gamma == -params.s) return static_cast<double>(params.d);
        return std::nullopt;
    }
    const double lo = -params.s;
    const double hi = -params.s + static_cast<double>(params.d) / params.p;
    if (gamma < lo || gamma > hi) return std::nullopt;
    return static_cast<double>(params.d) - params.s * params.p - gamma * params.p;
}

double gamma_alpha(const BesovParams& params, double alpha) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("gamma_alpha: need alpha >= 1");
    const double dp = params.d_over_p();
    return dp - params.s - dp / alpha;
}

AlphaSeed alpha_seeds(const BesovParams& params, double alpha, std::span<const int> scales,
                      int count, std::uint64_t seed) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("alpha_seeds: need alpha >= 1");
    if (scales.empty()) throw std::invalid_argument("alpha_seeds: need at least one scale");
    AlphaSeed out;
    out.alpha = alpha;
    out.gamma_target = gamma_alpha(params, alpha);
    CounterRng rng(seed);
    for (int n = 0; n < count; ++n) {
        const int j = scales[static_cast<std::size_t>(n) % scales.size()];
        if (j < 1) throw std::invalid_argument("alpha_seeds: scales must be >= 1");
        const int coarse = static_cast<int>(std::floor(static_cast<double>(j) / alpha));
        const std::int64_t n_coarse = std::int64_t{1} << coarse;
        std::vector<double> x(static_cast<std::size_t>(params.d));
        Pos k(static_cast<std::size_t>(params.d));
        for (int c = 0; c < params.d; ++c) {
            const auto un = static_cast<std::uint64_t>(n);
            const auto uc = static_cast<std::uint64_t>(c);
            const double uk = rng.uniform01({0x6b00ull, un, uc});
            const double uu = rng.uniform01({0x7500ull, un, uc});
            k[static_cast<std::size_t>(c)] =
                std::min<std::int64_t>(static_cast<std::int64_t>(uk * static_cast<double>(n_coarse)),
                                       n_coarse - 1);
            x[static_cast<std::size_t>(c)] =
                static_cast<double>(k[static_cast<std::size_t>(c)]) /
                    static_cast<double>(n_coarse) +
                uu * std::exp2(-static_cast<double>(j));
        }
        out.points.push_back(std::move(x));
        out.generators.emplace_back(j, std::move(k));
    }
    return out;
}

std::vector<double> default_gamma_grid(const BesovParams& params, int n) {
    const double lo = -params.s;
    const double hi = -params.s + params.d_over_p();
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t)
        g[static_cast<std::size_t>(t)] =
            lo + (hi - lo) * static_cast<double>(t) / static_cast<double>(n - 1);
    return g;
}

SpectrumEstimate estimate_spectrum(const CoefficientField& field, const WaveletSystem& system,
                                   const SpectrumSettings& settings) {
    const int d = field.dim();
    const int bits = settings.grid_bits;
    if (bits < 3) throw std::invalid_argument("estimate_spectrum: grid_bits too small");
    if (static_cast<double>(bits) * d > 26)
        throw std::invalid_argument("estimate_spectrum: grid too large");

    SpectrumEstimate est;
    est.grid_bits = bits;
    est.gamma_grid = settings.gamma_grid.empty() ? default_gamma_grid(field.besov())
                                                 : settings.gamma_grid;
    est.box_scales = settings.box_scales;
    if (est.box_scales.empty())
        for (int b = 2; b <= bits - 2; ++b) est.box_scales.push_back(b);
    for (int b : est.box_scales)
        if (b < 0 || b > bits) throw std::invalid_argument("estimate_spectrum: box scale > grid bits");

    // evaluation points: cube left endpoints plus a half step, off the dyadic
    // boundaries
    const std::int64_t per_side = std::int64_t{1} << bits;
    const double h = std::exp2(-static_cast<double>(bits));
    std::int64_t n_points = 1;
    for (int c = 0; c < d; ++c) n_points *= per_side;
    std::vector<std::vector<double>> points(static_cast<std::size_t>(n_points));
    for (std::int64_t pi = 0; pi < n_points; ++pi) {
        std::vector<double> x(static_cast<std::size_t>(d));
        std::int64_t rem = pi;
        for (int c = 0; c < d; ++c) {
            x[static_cast<std::size_t>(c)] = (static_cast<double>(rem % per_side) + 0.5) * h;
            rem /= per_side;
        }
        points[static_cast<std::size_t>(pi)] = std::move(x);
    }

    auto profiles = divergence_profiles(field, system, points, settings.estimator, settings.exec);

    // box counting per gamma: a scale-b box counts when some grid point with
    // delta_hat >= gamma lies in it
    for (double gamma : est.gamma_grid) {
        std::vector<double> xs, ys;
        for (int b : est.box_scales) {
            std::set<Pos> boxes;
            for (std::int64_t pi = 0; pi < n_points; ++pi) {
                if (profiles[static_cast<std::size_t>(pi)].delta_hat < gamma) continue;
                boxes.insert(containing_cube(points[static_cast<std::size_t>(pi)], b).k);
            }
            if (!boxes.empty()) {
                xs.push_back(static_cast<double>(b));
                ys.push_back(std::log2(static_cast<double>(boxes.size())));
            }
        }
        if (xs.size() < 3) {
            est.dims.push_back(std::nan(""));
            est.ci_low.push_back(std::nan(""));
            est.ci_high.push_back(std::nan(""));
            continue;
        }
        double se = 0.0;
        const double slope = least_squares_slope(xs, ys, &se);
        est.dims.push_back(slope);
        est.ci_low.push_back(slope - 1.96 * se);
        est.ci_high.push_back(slope + 1.96 * se);
    }
    return est;
}

std::vector<CountSpectrumRow> coefficient_count_spectrum(const CoefficientField& field,
                                                         const BesovParams& params,
                                                         std::span<const double> gammas,
                                                         bool compensate_log2sq) {
    std::vector<double> offsets;
    if (compensate_log2sq) {
        offsets.resize(static_cast<std::size_t>(field.jmax()) + 1, 0.0);
        for (int j = 1; j <= field.jmax(); ++j) {
            const double lg = std::log2(static_cast<double>(j));
            offsets[static_cast<std::size_t>(j)] = -lg * lg;
        }
    }
    std::vector<CountSpectrumRow> rows;
    for (double gamma : gammas) {
        CountSpectrumRow row;
        row.gamma = gamma;
        auto theory = theoretical_spectrum(params, gamma);
        row.theory = theory ? *theory : std::nan("");
        auto counts = count_large_profile(field, gamma, offsets);
        std::vector<double> xs, ys;
        for (int j = 1; j <= field.jmax(); ++j) {
            const auto c = counts[static_cast<std::size_t>(j)];
            if (c <= 0) continue;
            xs.push_back(static_cast<double>(j));
            ys.push_back(std::log2(static_cast<double>(c)));
        }
        if (xs.size() >= 3) {
            row.defined = true;
            row.slope = least_squares_slope(xs, ys);
        } else {
            row.slope = std::nan("");
        }
        rows.push_back(row);
    }
    return rows;
}

ExperimentReport genericity_experiment(std::span<const CoefficientField> base_fields,
                                       const WaveletSystem& system,
                                       const ExperimentConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("genericity_experiment: trials must be >= 1");
    if (base_fields.empty())
        throw std::invalid_argument("genericity_experiment: need at least one base field");

    std::vector<double> gammas = config.gammas;
    if (gammas.empty()) {
        const double lo = -config.params.s;
        const double wid = config.params.d_over_p();
        gammas = {lo + 0.25 * wid, lo + 0.5 * wid, lo + 0.75 * wid};
    }

    // shared test points per run (seeded independently of the trials)
    CounterRng point_rng(CounterRng(config.root_seed).derive(0x706f696e74ull).seed());
    std::vector<std::vector<double>> points(static_cast<std::size_t>(config.n_test_points));
    for (int n = 0; n < config.n_test_points; ++n) {
        std::vector<double> x(static_cast<std::size_t>(config.params.d));
        for (int c = 0; c < config.params.d; ++c)
            x[static_cast<std::size_t>(c)] = point_rng.uniform01(
                {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(c)});
        points[static_cast<std::size_t>(n)] = std::move(x);
    }

    ExperimentReport report;
    report.pass_rates.assign(base_fields.size(), 0.0);
    for (int t = 0; t < config.trials; ++t) {
        TrialResult trial;
        trial.seed = CounterRng(config.root_seed).derive(static_cast<std::uint64_t>(t) + 1).seed();
        SaturatingConfig sat{config.params, config.covering, config.jmax, trial.seed,
                             config.n_gens};
        const auto noise = saturating_random(sat);

        for (std::size_t fi = 0; fi < base_fields.size(); ++fi) {
            const auto sum = add_fields(base_fields[fi], noise);
            auto profiles = divergence_profiles(sum, system, points, config.estimator);
            std::vector<double> deltas;
            deltas.reserve(profiles.size());
            for (const auto& p : profiles) deltas.push_back(p.delta_hat);
            std::sort(deltas.begin(), deltas.end());

            TrialIndicators ind;
            ind.min_delta = deltas.front();
            ind.median_delta = deltas[deltas.size() / 2];
            ind.min_ok = ind.min_delta >= -config.params.s - config.tol_min;
            ind.median_ok = std::abs(ind.median_delta + config.params.s) <= config.tol_median;

            auto rows = coefficient_count_spectrum(sum, config.params, gammas);
            ind.slopes_ok = true;
            bool any_defined = false;
            for (const auto& row : rows) {
                if (!row.defined || std::isnan(row.theory)) continue;
                any_defined = true;
                if (std::abs(row.slope - row.theory) > config.tol_slope) ind.slopes_ok = false;
            }
            if (!any_defined) ind.slopes_ok = false;
            trial.per_field.push_back(ind);
            if (ind.all()) report.pass_rates[fi] += 1.0;
        }
        report.trials.push_back(std::move(trial));
    }
    for (auto& r : report.pass_rates) r /= static_cast<double>(config.trials);
    return report;
}

}  // namespace wavediv
