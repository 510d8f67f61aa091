#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "wavediv/covering.hpp"
#include "wavediv/field.hpp"
#include "wavediv/wavelet.hpp"

namespace wavediv {

/// Hierarchical weight e^(i)_{j,k} = 2^{-(log2 j)^2} 2^{(d/p - s) j} 2^{-(d/p) J}
/// with J the irreducible scale of k/2^j. Defined for j >= 1; all logs are
/// base 2 throughout the generators.
double e_weight(const BesovParams& params, int j, int irreducible_scale);

/// The deterministic sequence E on [0,1)^d: every generator carries the same
/// value e_{j,k}, scales 1..jmax.
CoefficientField deterministic_e(const BesovParams& params, int jmax, int n_gens = 1);

/// True iff 2^{beta j} * value is nonincreasing along every parent->child
/// edge present in the field (both endpoints stored, same generator).
/// Intended for nonnegative families; compares stored values directly.
bool hierarchy_check(const CoefficientField& field, double beta);

struct SaturatingConfig {
    BesovParams besov;
    DyadicCovering covering;
    int jmax = 8;
    std::uint64_t seed = 0;
    int n_gens = 1;
};

/// The random saturating sequence: for each block m >= 1 and each cube nu of
/// scale mM inside [0,1)^d, every covering image mu^l(nu) receives
/// f = sup of e_nu over its preimages, and the coefficient is xi * f with xi
/// uniform on [-1,1] drawn from the counter-based stream keyed by
/// (seed, i, j, k). Cubes that are no covering image stay zero. Blocks whose
/// upper scale exceeds jmax are dropped entirely; jmax < 2M (no full block)
/// is rejected.
CoefficientField saturating_random(const SaturatingConfig& config);

CoefficientField add_fields(const CoefficientField& a, const CoefficientField& b);
CoefficientField scale_field(const CoefficientField& a, double t);

/// Lineability basis element E_a: entries j^{-a} * e. Requires a > 0.
CoefficientField lineability_basis(const BesovParams& params, double a, int jmax,
                                   int n_gens = 1);

/// Finite combination sum_i coeffs[i] * E_{exponents[i]}.
CoefficientField lineability_combination(const BesovParams& params,
                                         std::span<const double> exponents,
                                         std::span<const double> coeffs, int jmax,
                                         int n_gens = 1);

/// Scalar ratio r_j = sum_i coeffs[i] j^{-exponents[i]}; the combination's
/// entries are exactly r_j * e_{j,k}, so two-sided envelope checks reduce to
/// this function of the scale alone.
double lineability_ratio(std::span<const double> exponents, std::span<const double> coeffs,
                         int j);

/// One coefficient per covering block: at block scale mM the covering cube of
/// containing_cube(x0, mM) with the best generator receives
/// 2^{-(log2 j)^2} 2^{-(s - d/p) j} at its own scale j; everything else is 0.
/// Works for any x0 in R^d (the covering acts in the containing cube's own
/// frame).
CoefficientField point_divergent(const BesovParams& params, const WaveletSystem& system,
                                 const DyadicCovering& covering, std::span<const double> x0,
                                 int jmax);

/// Scale cutoff for the n-th dense-sequence element: N_n = n (M + 1).
int residual_cutoff(int n, int covering_depth);

/// Ball radius r_n = 1/(2 N_n) 2^{-(log2 (N_n + M))^2} 2^{-d (N_n + M)/p}.
double residual_radius(const BesovParams& params, int covering_depth, int n_cutoff);

struct ResidualWitness {
    CoefficientField center;  // F_n + (1/N_n) E
    double radius = 0.0;      // r_n
    int n = 0;
    int n_cutoff = 0;  // N_n
};

/// Residual-ball witness around the n-th dense element. F_n must vanish at
/// scales >= N_n; p, q must be finite.
ResidualWitness residual_witness(const BesovParams& params, int covering_depth,
                                 const CoefficientField& f_n, int n, int jmax);

/// Deterministic n-th finite field with dyadic-rational values u/2^b,
/// |u| <= 2^b <= 2^n, entries only at scales < N_n = n (M + 1).
CoefficientField canonical_finite_field(const BesovParams& params, int n, int covering_depth);

/// Quantization onto the lattice of non-vanishing multiples of 2^{-sj-n}:
/// entry = 2^{-sj-n} floor(2^{sj+n} source) when the floor is nonzero, else
/// 2^{-sj-n}, over the full index lattice up to jmax. Output is within 2^{-n}
/// of source in the sup-norm of 2^{sj}-weighted coefficients and every entry
/// has magnitude >= 2^{-n-sj}.
CoefficientField holder_residual_field(double s, int n, int jmax,
                                       const CoefficientField& source, int n_gens = 1);

/// sum over window elements of e^{-|k|_1} * (field translated by k). Every
/// field must be supported in [0,1)^d; translated supports are disjoint.
CoefficientField full_space_extension(
    std::span<const std::pair<Pos, CoefficientField>> window);

}  // namespace wavediv
