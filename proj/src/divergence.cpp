#include "wavediv/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavediv {

std::string to_string(FitMode mode) {
    switch (mode) {
        case FitMode::MaxRatio: return "max-ratio";
        case FitMode::RecordSlope: return "record-slope";
        case FitMode::CompRatio: return "comp-ratio";
    }
    return "max-ratio";
}

FitMode fit_mode_from_string(const std::string& name) {
    if (name == "max-ratio") return FitMode::MaxRatio;
    if (name == "record-slope") return FitMode::RecordSlope;
    if (name == "comp-ratio") return FitMode::CompRatio;
    throw std::invalid_argument("unknown fit mode '" + name + "'");
}

double resolve_window_radius(const WaveletSystem& system, const EstimatorSettings& settings) {
    if (settings.window_radius) {
        if (system.support_radius() && *settings.window_radius < *system.support_radius())
            throw std::invalid_argument("window_radius below the system support radius");
        return *settings.window_radius;
    }
    if (system.support_radius()) return *system.support_radius();
    const auto& dec = system.decay();
    return std::pow(dec.c * std::exp2(40.0), 1.0 / dec.n) - 1.0;
}

double least_squares_slope(std::span<const double> xs, std::span<const double> ys,
                           double* slope_stderr) {
    const std::size_t n = xs.size();
    if (n < 2 || ys.size() != n)
        throw std::invalid_argument("least_squares_slope: need >= 2 paired samples");
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("least_squares_slope: degenerate abscissae");
    const double slope = sxy / sxx;
    if (slope_stderr != nullptr) {
        double ss_res = 0.0;
        const double intercept = my - slope * mx;
        for (std::size_t k = 0; k < n; ++k) {
            const double r = ys[k] - (intercept + slope * xs[k]);
            ss_res += r * r;
        }
        *slope_stderr = n > 2 ? std::sqrt(ss_res / (static_cast<double>(n) - 2.0) / sxx) : 0.0;
    }
    return slope;
}

namespace {

/// Visit every window term at scale j: all (i, k) with per-coordinate
/// |2^j x - k| <= R. Yields (i, k, psi_value) for candidates with a stored
/// coefficient looked up separately by the caller.
template <class F>
int for_each_window_term(const CoefficientField& field, const WaveletSystem& system,
                         std::span<const double> x, int j, double radius, F&& f) {
    const int d = system.dim();
    const double scale = std::exp2(static_cast<double>(j));
    std::vector<std::int64_t> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) {
        const double t = x[static_cast<std::size_t>(c)] * scale;
        lo[static_cast<std::size_t>(c)] = static_cast<std::int64_t>(std::ceil(t - radius));
        hi[static_cast<std::size_t>(c)] = static_cast<std::int64_t>(std::floor(t + radius));
    }
    Pos k(static_cast<std::size_t>(d));
    std::vector<double> arg(static_cast<std::size_t>(d));
    int terms = 0;
    auto visit = [&](auto&& self, int c) -> void {
        if (c == d) {
            DyadicCube cube{j, k};
            for (int i = 1; i <= system.n_gens(); ++i) {
                const double v = field.value(i, cube);
                if (v == 0.0) continue;
                for (int cc = 0; cc < d; ++cc)
                    arg[static_cast<std::size_t>(cc)] =
                        x[static_cast<std::size_t>(cc)] * scale -
                        static_cast<double>(k[static_cast<std::size_t>(cc)]);
                ++terms;
                f(i, v, system.eval_raw(i, arg));
            }
            return;
        }
        for (std::int64_t kk = lo[static_cast<std::size_t>(c)];
             kk <= hi[static_cast<std::size_t>(c)]; ++kk) {
            k[static_cast<std::size_t>(c)] = kk;
            self(self, c + 1);
        }
    };
    visit(visit, 0);
    return terms;
}

double estimate_max_ratio(std::span<const double> m, int j_min, bool compensate,
                          int* argmax_scale) {
    double best = -kInf;
    int best_j = -1;
    for (int j = j_min; j < static_cast<int>(m.size()); ++j) {
        const double mj = m[static_cast<std::size_t>(j)];
        if (mj <= 0.0) continue;
        double num = std::log2(mj);
        if (compensate) {
            const double lg = std::log2(static_cast<double>(j));
            num += lg * lg;
        }
        const double r = num / static_cast<double>(j);
        if (r > best) {
            best = r;
            best_j = j;
        }
    }
    if (argmax_scale != nullptr) *argmax_scale = best_j;
    return best;
}

double estimate_record_slope(std::span<const double> m, int j_min, std::vector<int>* records_out) {
    const double fallback = estimate_max_ratio(m, j_min, false, nullptr);
    std::vector<int> records;
    double trend = fallback;
    auto admits = [&](int j) {
        const double mj = m[static_cast<std::size_t>(j)];
        for (int jp : records) {
            const double need =
                m[static_cast<std::size_t>(jp)] * std::exp2(trend * static_cast<double>(j - jp));
            if (mj < need * (1.0 - 1e-12)) return false;  // tolerate rounding at equality
        }
        return true;
    };
    auto refit = [&]() {
        if (records.size() < 2) return;
        std::vector<double> xs, ys;
        for (int j : records) {
            xs.push_back(static_cast<double>(j));
            ys.push_back(std::log2(m[static_cast<std::size_t>(j)]));
        }
        trend = least_squares_slope(xs, ys);
    };
    for (int j = j_min; j < static_cast<int>(m.size()); ++j) {
        if (m[static_cast<std::size_t>(j)] <= 0.0) continue;
        if (records.empty() || admits(j)) {
            records.push_back(j);
            refit();
        }
    }
    if (records_out != nullptr) *records_out = records;
    if (records.size() < 2) return fallback;
    return trend;
}

}  // namespace

double partial_sum(const CoefficientField& field, const WaveletSystem& system,
                   std::span<const double> x, int upto_j, const EstimatorSettings& settings) {
    if (upto_j > field.jmax()) throw std::invalid_argument("partial_sum: J beyond field jmax");
    const double radius = resolve_window_radius(system, settings);
    double acc = 0.0;
    for (int j = 0; j <= upto_j; ++j)
        for_each_window_term(field, system, x, j, radius,
                             [&](int, double c, double psi) { acc += c * psi; });
    return acc;
}

double scale_term_max(const CoefficientField& field, const WaveletSystem& system,
                      std::span<const double> x, int j, const EstimatorSettings& settings) {
    if (j > field.jmax()) throw std::invalid_argument("scale_term_max: j beyond field jmax");
    const double radius = resolve_window_radius(system, settings);
    double best = 0.0;
    for_each_window_term(field, system, x, j, radius, [&](int, double c, double psi) {
        best = std::max(best, std::abs(c * psi));
    });
    return best;
}

DivergenceProfile divergence_profile(const CoefficientField& field, const WaveletSystem& system,
                                     std::span<const double> x,
                                     const EstimatorSettings& settings) {
    if (settings.j_min < 1) throw std::invalid_argument("EstimatorSettings: j_min must be >= 1");
    const double radius = resolve_window_radius(system, settings);
    const int jmax = field.jmax();

    DivergenceProfile prof;
    prof.x.assign(x.begin(), x.end());
    prof.scale_max.assign(static_cast<std::size_t>(jmax) + 1, 0.0);
    prof.partial_sums.assign(static_cast<std::size_t>(jmax) + 1, 0.0);
    prof.mode = settings.mode;

    double run = 0.0;
    for (int j = 0; j <= jmax; ++j) {
        double mj = 0.0;
        double qj = 0.0;
        const int terms =
            for_each_window_term(field, system, x, j, radius, [&](int, double c, double psi) {
                const double t = c * psi;
                qj += t;
                mj = std::max(mj, std::abs(t));
            });
        prof.max_window_terms = std::max(prof.max_window_terms, terms);
        run += qj;
        prof.scale_max[static_cast<std::size_t>(j)] = mj;
        prof.partial_sums[static_cast<std::size_t>(j)] = run;
    }

    int argmax = -1;
    prof.delta_max_ratio = estimate_max_ratio(prof.scale_max, settings.j_min, false, &argmax);
    int argmax_comp = -1;
    prof.delta_comp_ratio = estimate_max_ratio(prof.scale_max, settings.j_min, true, &argmax_comp);
    std::vector<int> records;
    prof.delta_record_slope = estimate_record_slope(prof.scale_max, settings.j_min, &records);

    switch (settings.mode) {
        case FitMode::MaxRatio:
            prof.delta_hat = prof.delta_max_ratio;
            if (argmax >= 0) prof.fit_scales = {argmax};
            break;
        case FitMode::CompRatio:
            prof.delta_hat = prof.delta_comp_ratio;
            if (argmax_comp >= 0) prof.fit_scales = {argmax_comp};
            break;
        case FitMode::RecordSlope:
            prof.delta_hat = prof.delta_record_slope;
            prof.fit_scales = records;
            break;
    }
    return prof;
}

double divergence_exponent(const CoefficientField& field, const WaveletSystem& system,
                           std::span<const double> x, const EstimatorSettings& settings) {
    if (field.jmax() < settings.j_min + 4)
        throw std::invalid_argument("divergence_exponent: need jmax >= j_min + 4");
    return divergence_profile(field, system, x, settings).delta_hat;
}

std::vector<DivergenceProfile> divergence_profiles(const CoefficientField& field,
                                                   const WaveletSystem& system,
                                                   std::span<const std::vector<double>> points,
                                                   const EstimatorSettings& settings,
                                                   ExecPolicy exec) {
    std::vector<DivergenceProfile> out(points.size());
    const auto n = static_cast<std::int64_t>(points.size());
    if (exec == ExecPolicy::OpenMP) {
#ifdef WAVEDIV_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
        for (std::int64_t k = 0; k < n; ++k)
            out[static_cast<std::size_t>(k)] =
                divergence_profile(field, system, points[static_cast<std::size_t>(k)], settings);
    } else {
        for (std::int64_t k = 0; k < n; ++k)
            out[static_cast<std::size_t>(k)] =
                divergence_profile(field, system, points[static_cast<std::size_t>(k)], settings);
    }
    return out;
}

std::vector<DivergenceProfile> divergence_profiles_serial(
    const CoefficientField& field, const WaveletSystem& system,
    std::span<const std::vector<double>> points, const EstimatorSettings& settings) {
    std::vector<DivergenceProfile> out;
    out.reserve(points.size());
    for (const auto& x : points)
        out.push_back(divergence_profile(field, system, x, settings));
    return out;
}

double upper_bound_for(const BesovParams& params, double besov_sup_norm, double sup_psi,
                       int j_min) {
    return params.d_over_p() - params.s +
           std::log2(besov_sup_norm * sup_psi) / static_cast<double>(j_min);
}

ConvergenceReport convergence_rate_check(const CoefficientField& field,
                                         const WaveletSystem& system, std::span<const double> x,
                                         double gamma, std::optional<double> c1,
                                         const EstimatorSettings& settings) {
    if (!(gamma < 0.0)) throw std::invalid_argument("convergence_rate_check: need gamma < 0");
    auto prof = divergence_profile(field, system, x, settings);
    const int jmax = field.jmax();

    ConvergenceReport rep;
    if (c1) {
        rep.c1 = *c1;
        for (int j = 0; j <= jmax; ++j) {
            const double bound = rep.c1 * std::exp2(gamma * static_cast<double>(j));
            if (prof.scale_max[static_cast<std::size_t>(j)] > bound * (1.0 + 1e-12)) {
                rep.premise_ok = false;
                rep.violated_scale = j;
                break;
            }
        }
    } else {
        double best = 0.0;
        for (int j = 0; j <= jmax; ++j)
            best = std::max(best, prof.scale_max[static_cast<std::size_t>(j)] *
                                      std::exp2(-gamma * static_cast<double>(j)));
        rep.c1 = best;
    }

    const double p_end = prof.partial_sums[static_cast<std::size_t>(jmax)];
    rep.tails.resize(static_cast<std::size_t>(jmax));
    std::vector<double> xs, ys;
    for (int j = 0; j < jmax; ++j) {
        const double t = std::abs(p_end - prof.partial_sums[static_cast<std::size_t>(j)]);
        rep.tails[static_cast<std::size_t>(j)] = t;
        rep.c2 = std::max(rep.c2, t * std::exp2(-gamma * static_cast<double>(j)));
        if (t > 0.0) {
            xs.push_back(static_cast<double>(j));
            ys.push_back(std::log2(t));
        }
    }
    rep.fitted_rate = xs.size() >= 2 ? least_squares_slope(xs, ys) : 0.0;
    return rep;
}

bool rate_transfer_check(const CoefficientField& field, const WaveletSystem& system,
                         std::span<const double> x, double gamma,
                         const EstimatorSettings& settings) {
    if (!(gamma > 0.0)) throw std::invalid_argument("rate_transfer_check: need gamma > 0");
    auto prof = divergence_profile(field, system, x, settings);

    double p_rate = -kInf;
    int j_hat = -1;
    for (int j = settings.j_min; j <= field.jmax(); ++j) {
        const double pj = std::abs(prof.partial_sums[static_cast<std::size_t>(j)]);
        if (pj <= 0.0) continue;
        const double r = std::log2(pj) / static_cast<double>(j);
        if (r > p_rate) {
            p_rate = r;
            j_hat = j;
        }
    }
    if (p_rate < gamma) return true;  // no P-side divergence at rate gamma observed

    // exact counting chain: |P_j| <= (j+1) * W * max_{j' <= j} M_{j'}
    double m_best = 0.0;
    for (int j = 0; j <= j_hat; ++j)
        m_best = std::max(m_best, prof.scale_max[static_cast<std::size_t>(j)]);
    const double w = std::max(1, prof.max_window_terms);
    const double p_at = std::abs(prof.partial_sums[static_cast<std::size_t>(j_hat)]);
    if (m_best * static_cast<double>(j_hat + 1) * w < p_at * (1.0 - 1e-12)) return false;

    const double correction =
        std::log2(static_cast<double>(j_hat + 1) * w) / static_cast<double>(settings.j_min);
    for (double f : {0.5, 0.75, 0.9}) {
        const double delta = f * gamma;
        if (prof.delta_max_ratio < delta - correction - 1e-12) return false;
    }
    return true;
}

}  // namespace wavediv
