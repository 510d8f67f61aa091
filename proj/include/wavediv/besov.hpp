#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "wavediv/exec.hpp"
#include "wavediv/field.hpp"

namespace wavediv {

/// eps_j = (sum over scale-j entries of |c * 2^{(s - d/p) j}|^p)^{1/p};
/// for p = inf, sup over the scale of |c| 2^{sj}. Sums use pairwise (tree)
/// reduction so results do not depend on the execution policy.
double scale_lp(const CoefficientField& field, const BesovParams& params, int j);

/// Naive left-to-right accumulation, kept as the reference implementation.
double scale_lp_serial(const CoefficientField& field, const BesovParams& params, int j);

/// All eps_j for j = 0..jmax; OpenMP parallelizes over scales.
std::vector<double> scale_profile(const CoefficientField& field, const BesovParams& params,
                                  ExecPolicy exec = default_exec());

/// l^q norm of (eps_j)_{j <= jmax}; sup over j when q = inf. For p or q < 1
/// this is the usual quasi-norm (positively homogeneous, no triangle
/// inequality assumed anywhere).
double besov_norm(const CoefficientField& field, const BesovParams& params,
                  ExecPolicy exec = default_exec());
double besov_norm_serial(const CoefficientField& field, const BesovParams& params);

/// Compactness functional sum_j a_j eps_j^q (sup_j a_j eps_j when q = inf)
/// for caller-supplied positive weights a_j, indexed by scale.
double weighted_norm(const CoefficientField& field, const BesovParams& params,
                     std::span<const double> weights, ExecPolicy exec = default_exec());

/// Default weights 1 + log2(1 + j), j = 0..jmax.
std::vector<double> default_compact_weights(int jmax);

/// Membership in the compact set: functional value <= 1 and support inside
/// [0,1)^d.
bool in_compact_subset(const CoefficientField& field, const BesovParams& params,
                       std::span<const double> weights);

/// Smallest C with |c| <= C 2^{(d/p - s) j} over all stored entries.
double sup_coefficient_bound(const CoefficientField& field, const BesovParams& params);

/// Exact count of scale-j entries with |c| >= 2^{gamma j}.
std::int64_t count_large(const CoefficientField& field, int j, double gamma);

/// Counts for every scale in one pass; optional per-scale threshold offsets
/// (log2 of a multiplicative factor) used by the compensated counting
/// spectrum.
std::vector<std::int64_t> count_large_profile(const CoefficientField& field, double gamma,
                                              std::span<const double> log2_offsets = {});

/// CSV emitter: columns j, eps_j, count at each gamma in `gammas`.
void write_scale_profile_csv(std::ostream& os, const CoefficientField& field,
                             const BesovParams& params, std::span<const double> gammas);

}  // namespace wavediv
