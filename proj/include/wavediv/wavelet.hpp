#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavediv/field.hpp"

namespace wavediv {

/// Fast-decay envelope |psi(y)| <= c / (1 + |y|)^n.
struct DecayBound {
    double c = 1.0;
    double n = 1.0;
};

/// A finite family of bounded generators psi^(i) on R^d, evaluated pointwise.
/// The dilated/translated family is psi^(i)_{j,k}(x) = psi^(i)(2^j x - k);
/// no orthogonality or vanishing moments are assumed.
class WaveletSystem {
  public:
    using EvalFn = std::function<double(int i, std::span<const double> y)>;

    WaveletSystem(std::string name, int d, int n_gens, EvalFn eval,
                  std::optional<double> support_radius, double sup_abs,
                  DecayBound decay, std::optional<double> lipschitz,
                  bool approximate = false);

    const std::string& name() const { return name_; }
    int dim() const { return d_; }
    int n_gens() const { return n_; }

    /// psi^(i)(y), 1-based generator index.
    double eval_raw(int i, std::span<const double> y) const;

    /// psi^(i)(2^j x - k) for the coefficient index (i, lambda).
    double eval(const CoeffIndex& idx, std::span<const double> x) const;

    /// Half-width R of a box [-R, R]^d outside of which every generator
    /// vanishes; unset for fast-decay-only systems.
    std::optional<double> support_radius() const { return support_radius_; }
    double sup_abs() const { return sup_abs_; }
    const DecayBound& decay() const { return decay_; }
    /// Common Lipschitz constant of the generators, when one exists.
    std::optional<double> lipschitz() const { return lipschitz_; }
    /// True for cascade-evaluated systems (values are grid-interpolated).
    bool approximate() const { return approximate_; }

  private:
    std::string name_;
    int d_;
    int n_;
    EvalFn eval_;
    std::optional<double> support_radius_;
    double sup_abs_;
    DecayBound decay_;
    std::optional<double> lipschitz_;
    bool approximate_;
};

/// Haar system: in d = 1 the single generator 1_[0,1/2) - 1_[1/2,1); in
/// d > 1 the standard 2^d - 1 tensor products of the Haar generator and the
/// box indicator.
WaveletSystem haar_system(int d);

/// Tent generator min(x, 1-x) on [0,1], 0 elsewhere (d = 1). Vanishes at all
/// integers, which is exactly why no dyadic covering exists for it.
WaveletSystem schauder_system();

/// n_gens copies of the box indicator 1_{[0,1)^d}.
WaveletSystem indicator_system(int n_gens, int d);

/// Compactly-supported orthogonal generator with 4 scaling taps, evaluated by
/// dyadic cascade refinement at resolution 2^-levels with linear
/// interpolation between cascade points (d = 1, approximate).
WaveletSystem daubechies4_system(int cascade_levels = 14);

/// Build one of the named systems ("haar", "schauder", "indicator", "db4").
WaveletSystem make_system(const std::string& name, int d, int n_gens);

}  // namespace wavediv
