#include "wavediv/besov.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "wavediv/csv.hpp"

namespace wavediv {

namespace {

/// Pairwise reduction: deterministic summation order independent of threading
/// and more accurate than running accumulation.
double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 16) {
        double acc = 0.0;
        for (double x : v) acc += x;
        return acc;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

double scale_weight(const BesovParams& params, int j) {
    return std::exp2((params.s - params.d_over_p()) * static_cast<double>(j));
}

}  // namespace

double scale_lp(const CoefficientField& field, const BesovParams& params, int j) {
    const auto entries = field.at_scale(j);
    if (entries.empty()) return 0.0;
    if (std::isinf(params.p)) {
        double sup = 0.0;
        const double w = std::exp2(params.s * static_cast<double>(j));
        for (const auto& e : entries) sup = std::max(sup, std::abs(e.v) * w);
        return sup;
    }
    const double w = scale_weight(params, j);
    std::vector<double> terms(entries.size());
    for (std::size_t n = 0; n < entries.size(); ++n)
        terms[n] = std::pow(std::abs(entries[n].v * w), params.p);
    return std::pow(pairwise_sum(terms), 1.0 / params.p);
}

double scale_lp_serial(const CoefficientField& field, const BesovParams& params, int j) {
    const auto entries = field.at_scale(j);
    if (entries.empty()) return 0.0;
    if (std::isinf(params.p)) {
        double sup = 0.0;
        const double w = std::exp2(params.s * static_cast<double>(j));
        for (const auto& e : entries) sup = std::max(sup, std::abs(e.v) * w);
        return sup;
    }
    const double w = scale_weight(params, j);
    double acc = 0.0;
    for (const auto& e : entries) acc += std::pow(std::abs(e.v * w), params.p);
    return std::pow(acc, 1.0 / params.p);
}

std::vector<double> scale_profile(const CoefficientField& field, const BesovParams& params,
                                  ExecPolicy exec) {
    std::vector<double> eps(static_cast<std::size_t>(field.jmax()) + 1, 0.0);
    const int n = field.jmax() + 1;
    if (exec == ExecPolicy::OpenMP) {
#ifdef WAVEDIV_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int j = 0; j < n; ++j) eps[static_cast<std::size_t>(j)] = scale_lp(field, params, j);
    } else {
        for (int j = 0; j < n; ++j) eps[static_cast<std::size_t>(j)] = scale_lp(field, params, j);
    }
    return eps;
}

namespace {

double lq_of_profile(std::span<const double> eps, double q) {
    if (std::isinf(q)) {
        double sup = 0.0;
        for (double e : eps) sup = std::max(sup, e);
        return sup;
    }
    std::vector<double> terms(eps.size());
    for (std::size_t j = 0; j < eps.size(); ++j) terms[j] = std::pow(eps[j], q);
    return std::pow(pairwise_sum(terms), 1.0 / q);
}

}  // namespace

double besov_norm(const CoefficientField& field, const BesovParams& params, ExecPolicy exec) {
    return lq_of_profile(scale_profile(field, params, exec), params.q);
}

double besov_norm_serial(const CoefficientField& field, const BesovParams& params) {
    if (std::isinf(params.q)) {
        double sup = 0.0;
        for (int j = 0; j <= field.jmax(); ++j)
            sup = std::max(sup, scale_lp_serial(field, params, j));
        return sup;
    }
    double acc = 0.0;
    for (int j = 0; j <= field.jmax(); ++j)
        acc += std::pow(scale_lp_serial(field, params, j), params.q);
    return std::pow(acc, 1.0 / params.q);
}

double weighted_norm(const CoefficientField& field, const BesovParams& params,
                     std::span<const double> weights, ExecPolicy exec) {
    if (static_cast<int>(weights.size()) < field.jmax() + 1)
        throw std::invalid_argument("weighted_norm: need a weight per scale");
    auto eps = scale_profile(field, params, exec);
    if (std::isinf(params.q)) {
        double sup = 0.0;
        for (std::size_t j = 0; j < eps.size(); ++j) sup = std::max(sup, weights[j] * eps[j]);
        return sup;
    }
    std::vector<double> terms(eps.size());
    for (std::size_t j = 0; j < eps.size(); ++j)
        terms[j] = weights[j] * std::pow(eps[j], params.q);
    return pairwise_sum(terms);
}

std::vector<double> default_compact_weights(int jmax) {
    std::vector<double> a(static_cast<std::size_t>(jmax) + 1);
    for (int j = 0; j <= jmax; ++j)
        a[static_cast<std::size_t>(j)] = 1.0 + std::log2(1.0 + static_cast<double>(j));
    return a;
}

bool in_compact_subset(const CoefficientField& field, const BesovParams& params,
                       std::span<const double> weights) {
    if (!field.supported_in_unit_cube()) return false;
    return weighted_norm(field, params, weights) <= 1.0;
}

double sup_coefficient_bound(const CoefficientField& field, const BesovParams& params) {
    double sup = 0.0;
    field.for_each([&](int j, const FieldEntry& e) {
        sup = std::max(sup, std::abs(e.v) * scale_weight(params, j));
    });
    return sup;
}

std::int64_t count_large(const CoefficientField& field, int j, double gamma) {
    const double threshold = std::exp2(gamma * static_cast<double>(j));
    std::int64_t count = 0;
    for (const auto& e : field.at_scale(j))
        if (std::abs(e.v) >= threshold) ++count;
    return count;
}

std::vector<std::int64_t> count_large_profile(const CoefficientField& field, double gamma,
                                              std::span<const double> log2_offsets) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(field.jmax()) + 1, 0);
    for (int j = 0; j <= field.jmax(); ++j) {
        double expo = gamma * static_cast<double>(j);
        if (!log2_offsets.empty()) expo += log2_offsets[static_cast<std::size_t>(j)];
        const double threshold = std::exp2(expo);
        std::int64_t c = 0;
        for (const auto& e : field.at_scale(j))
            if (std::abs(e.v) >= threshold) ++c;
        counts[static_cast<std::size_t>(j)] = c;
    }
    return counts;
}

void write_scale_profile_csv(std::ostream& os, const CoefficientField& field,
                             const BesovParams& params, std::span<const double> gammas) {
    os << "j,eps_j";
    for (double g : gammas) os << ",count_gamma_" << fmt17(g);
    os << '\n';
    auto eps = scale_profile(field, params);
    std::vector<std::vector<std::int64_t>> counts;
    counts.reserve(gammas.size());
    for (double g : gammas) counts.push_back(count_large_profile(field, g));
    for (int j = 0; j <= field.jmax(); ++j) {
        os << j << ',' << fmt17(eps[static_cast<std::size_t>(j)]);
        for (const auto& cg : counts) os << ',' << cg[static_cast<std::size_t>(j)];
        os << '\n';
    }
}

}  // namespace wavediv
