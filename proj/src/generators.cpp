#include "wavediv/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "wavediv/rng.hpp"

namespace wavediv {

namespace {

/// Irreducible scale of k/2^j via trailing zeros: J = j - t where t is the
/// largest power of two dividing every component (the zero vector reduces to
/// J = 0, matching the convention).
int irreducible_scale(int j, const Pos& k) {
    int t = j;
    for (auto c : k) {
        if (c != 0)
            t = std::min(t, std::countr_zero(static_cast<std::uint64_t>(std::abs(c))));
        if (t == 0) break;
    }
    return j - t;
}

/// Enumerate k in [0, 2^j)^d, lexicographic, calling f(k, J(k)). The
/// irreducible scale is updated incrementally from the trailing-zero count.
template <class F>
void for_each_unit_position(int d, int j, F&& f) {
    const std::int64_t n = std::int64_t{1} << j;
    Pos k(static_cast<std::size_t>(d), 0);
    while (true) {
        f(k, irreducible_scale(j, k));
        int c = d - 1;
        while (c >= 0) {
            if (++k[static_cast<std::size_t>(c)] < n) break;
            k[static_cast<std::size_t>(c)] = 0;
            --c;
        }
        if (c < 0) break;
    }
}

double log2_sq(int j) {
    const double lg = std::log2(static_cast<double>(j));
    return lg * lg;
}

}  // namespace

double e_weight(const BesovParams& params, int j, int irreducible_scale) {
    if (j < 1) throw std::invalid_argument("e_weight: defined for j >= 1");
    const double dp = params.d_over_p();
    return std::exp2(-log2_sq(j) + (dp - params.s) * static_cast<double>(j) -
                     dp * static_cast<double>(irreducible_scale));
}

CoefficientField deterministic_e(const BesovParams& params, int jmax, int n_gens) {
    if (jmax < 1) throw std::invalid_argument("deterministic_e: jmax must be >= 1");
    if (n_gens < 1) throw std::invalid_argument("deterministic_e: n_gens must be >= 1");
    FieldBuilder builder(params.d, jmax, params);
    for (int j = 1; j <= jmax; ++j) {
        for_each_unit_position(params.d, j, [&](const Pos& k, int J) {
            const double v = e_weight(params, j, J);
            for (int i = 1; i <= n_gens; ++i) builder.add(i, DyadicCube{j, k}, v);
        });
    }
    return std::move(builder).build();
}

bool hierarchy_check(const CoefficientField& field, double beta) {
    for (int j = 1; j <= field.jmax(); ++j) {
        const double wc = std::exp2(beta * static_cast<double>(j));
        const double wp = std::exp2(beta * static_cast<double>(j - 1));
        for (const auto& e : field.at_scale(j)) {
            const double pv = field.value(e.i, parent(DyadicCube{j, e.k}));
            if (pv == 0.0) continue;  // edge not present
            if (wc * e.v > wp * pv * (1.0 + 1e-12)) return false;
        }
    }
    return true;
}

CoefficientField saturating_random(const SaturatingConfig& config) {
    const auto& params = config.besov;
    const int m_depth = config.covering.depth();
    if (m_depth < 1) throw std::invalid_argument("saturating_random: covering has depth 0");
    if (config.jmax < 2 * m_depth)
        throw std::invalid_argument(
            "saturating_random: jmax too small to hold one full block (need >= 2M)");
    for (const auto& t : config.covering.triplets) {
        if (static_cast<int>(t.k.size()) != params.d)
            throw std::invalid_argument("saturating_random: covering dimension mismatch");
        if (t.i > config.n_gens)
            throw std::invalid_argument(
                "saturating_random: covering references a generator beyond n_gens");
    }

    CounterRng rng(config.seed);
    FieldBuilder builder(params.d, config.jmax, params);

    // f-profile per block: max of e over covering preimages, keyed by the
    // image cube. Blocks with (m+1)M > jmax are dropped entirely.
    for (int m = 1; (m + 1) * m_depth <= config.jmax; ++m) {
        const int nu_scale = m * m_depth;
        std::map<std::pair<int, Pos>, double> f;
        for_each_unit_position(params.d, nu_scale, [&](const Pos& k, int J) {
            const double e = e_weight(params, nu_scale, J);
            const DyadicCube nu{nu_scale, k};
            for (int l = 1; l <= config.covering.size(); ++l) {
                const DyadicCube lam = covering_map(config.covering, l, nu);
                auto& slot = f[{lam.j, lam.k}];
                slot = std::max(slot, e);
            }
        });
        for (const auto& [key, fv] : f) {
            const DyadicCube lam{key.first, key.second};
            for (int i = 1; i <= config.n_gens; ++i)
                builder.add(i, lam, rng.xi(i, lam) * fv);
        }
    }
    return std::move(builder).build();
}

CoefficientField add_fields(const CoefficientField& a, const CoefficientField& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("add_fields: dimension mismatch");
    FieldBuilder builder(a.dim(), std::max(a.jmax(), b.jmax()), a.besov());
    a.for_each([&](int j, const FieldEntry& e) { builder.add(e.i, DyadicCube{j, e.k}, e.v); });
    b.for_each([&](int j, const FieldEntry& e) { builder.add(e.i, DyadicCube{j, e.k}, e.v); });
    return std::move(builder).build();
}

CoefficientField scale_field(const CoefficientField& a, double t) {
    FieldBuilder builder(a.dim(), a.jmax(), a.besov());
    a.for_each([&](int j, const FieldEntry& e) { builder.add(e.i, DyadicCube{j, e.k}, t * e.v); });
    return std::move(builder).build();
}

CoefficientField lineability_basis(const BesovParams& params, double a, int jmax, int n_gens) {
    if (!(a > 0.0)) throw std::invalid_argument("lineability_basis: need a > 0");
    FieldBuilder builder(params.d, jmax, params);
    for (int j = 1; j <= jmax; ++j) {
        const double damp = std::pow(static_cast<double>(j), -a);
        for_each_unit_position(params.d, j, [&](const Pos& k, int J) {
            const double v = damp * e_weight(params, j, J);
            for (int i = 1; i <= n_gens; ++i) builder.add(i, DyadicCube{j, k}, v);
        });
    }
    return std::move(builder).build();
}

double lineability_ratio(std::span<const double> exponents, std::span<const double> coeffs,
                         int j) {
    double r = 0.0;
    for (std::size_t t = 0; t < exponents.size(); ++t)
        r += coeffs[t] * std::pow(static_cast<double>(j), -exponents[t]);
    return r;
}

CoefficientField lineability_combination(const BesovParams& params,
                                         std::span<const double> exponents,
                                         std::span<const double> coeffs, int jmax, int n_gens) {
    if (exponents.size() != coeffs.size() || exponents.empty())
        throw std::invalid_argument("lineability_combination: mismatched exponents/coeffs");
    for (double a : exponents)
        if (!(a > 0.0)) throw std::invalid_argument("lineability_combination: need a > 0");
    FieldBuilder builder(params.d, jmax, params);
    for (int j = 1; j <= jmax; ++j) {
        const double r = lineability_ratio(exponents, coeffs, j);
        for_each_unit_position(params.d, j, [&](const Pos& k, int J) {
            const double v = r * e_weight(params, j, J);
            for (int i = 1; i <= n_gens; ++i) builder.add(i, DyadicCube{j, k}, v);
        });
    }
    return std::move(builder).build();
}

CoefficientField point_divergent(const BesovParams& params, const WaveletSystem& system,
                                 const DyadicCovering& covering, std::span<const double> x0,
                                 int jmax) {
    if (static_cast<int>(x0.size()) != params.d)
        throw std::invalid_argument("point_divergent: x0 dimension mismatch");
    const int m_depth = covering.depth();
    if (m_depth < 1) throw std::invalid_argument("point_divergent: covering has depth 0");

    FieldBuilder builder(params.d, jmax, params);
    const double dp = params.d_over_p();
    std::vector<double> frame(x0.size());
    for (int m = 0; (m + 1) * m_depth <= jmax; ++m) {
        const int nu_scale = m * m_depth;
        const DyadicCube nu = containing_cube(x0, nu_scale);
        const double scale = std::exp2(static_cast<double>(nu_scale));
        for (std::size_t c = 0; c < x0.size(); ++c)
            frame[c] = x0[c] * scale - static_cast<double>(nu.k[c]);
        auto [l, value] = covering_lower_bound_at(system, covering, frame);
        (void)value;
        const DyadicCube lam = covering_map(covering, l, nu);
        const int j = lam.j;  // in (mM, (m+1)M]
        const double v = std::exp2(-log2_sq(j) - (params.s - dp) * static_cast<double>(j));
        builder.add(covering.triplets[static_cast<std::size_t>(l - 1)].i, lam, v);
    }
    return std::move(builder).build();
}

int residual_cutoff(int n, int covering_depth) { return n * (covering_depth + 1); }

double residual_radius(const BesovParams& params, int covering_depth, int n_cutoff) {
    const int nm = n_cutoff + covering_depth;
    return 0.5 / static_cast<double>(n_cutoff) *
           std::exp2(-log2_sq(nm) - params.d_over_p() * static_cast<double>(nm));
}

ResidualWitness residual_witness(const BesovParams& params, int covering_depth,
                                 const CoefficientField& f_n, int n, int jmax) {
    if (std::isinf(params.p) || std::isinf(params.q))
        throw std::invalid_argument("residual_witness: finite p, q required");
    if (f_n.dim() != params.d)
        throw std::invalid_argument("residual_witness: F_n dimension mismatch");
    const int n_cut = residual_cutoff(n, covering_depth);
    for (int j = n_cut; j <= f_n.jmax(); ++j)
        if (!f_n.at_scale(j).empty())
            throw std::invalid_argument("residual_witness: F_n has entries at scales >= N_n");
    if (jmax < n_cut) throw std::invalid_argument("residual_witness: jmax below N_n");

    auto e = deterministic_e(params, jmax);
    auto center = add_fields(f_n, scale_field(e, 1.0 / static_cast<double>(n_cut)));
    return ResidualWitness{std::move(center), residual_radius(params, covering_depth, n_cut), n,
                           n_cut};
}

CoefficientField canonical_finite_field(const BesovParams& params, int n, int covering_depth) {
    if (n < 1) throw std::invalid_argument("canonical_finite_field: n must be >= 1");
    const int n_cut = residual_cutoff(n, covering_depth);
    const int top = std::min(n_cut - 1, 3);
    const int b = std::min(n, 4);
    const double denom = std::exp2(static_cast<double>(b));
    CounterRng rng(0x46696e69ull);  // fixed stream; n keys the draws
    FieldBuilder builder(params.d, std::max(top, 0), params);
    for (int j = 0; j <= top; ++j) {
        for_each_unit_position(params.d, j, [&](const Pos& k, int) {
            const DyadicCube cube{j, k};
            const double u01 = CounterRng::to_unit(
                rng.hash_indexed(static_cast<std::uint64_t>(n), 1, cube));
            // integer u in [-2^b, 2^b]
            const auto u = static_cast<std::int64_t>(
                std::floor(u01 * (2.0 * denom + 1.0)) - denom);
            builder.add(1, cube, static_cast<double>(u) / denom);
        });
    }
    return std::move(builder).build();
}

CoefficientField holder_residual_field(double s, int n, int jmax,
                                       const CoefficientField& source, int n_gens) {
    BesovParams params{s, kInf, kInf, source.dim()};
    FieldBuilder builder(source.dim(), jmax, params);
    for (int j = 0; j <= jmax; ++j) {
        const double lattice = std::exp2(-s * static_cast<double>(j) - static_cast<double>(n));
        for_each_unit_position(source.dim(), j, [&](const Pos& k, int) {
            const DyadicCube cube{j, k};
            for (int i = 1; i <= n_gens; ++i) {
                const double b = source.value(i, cube);
                const double q = std::floor(b / lattice);
                builder.add(i, cube, q != 0.0 ? lattice * q : lattice);
            }
        });
    }
    return std::move(builder).build();
}

CoefficientField full_space_extension(
    std::span<const std::pair<Pos, CoefficientField>> window) {
    if (window.empty()) throw std::invalid_argument("full_space_extension: empty window");
    const int d = window.front().second.dim();
    int jmax = 0;
    for (const auto& [k, field] : window) {
        if (field.dim() != d || static_cast<int>(k.size()) != d)
            throw std::invalid_argument("full_space_extension: dimension mismatch");
        if (!field.supported_in_unit_cube())
            throw std::invalid_argument("full_space_extension: field not supported in [0,1)^d");
        jmax = std::max(jmax, field.jmax());
    }
    FieldBuilder builder(d, jmax, window.front().second.besov());
    for (const auto& [t, field] : window) {
        double l1 = 0.0;
        for (auto c : t) l1 += static_cast<double>(std::abs(c));
        const double w = std::exp(-l1);
        field.for_each([&](int j, const FieldEntry& e) {
            Pos k = e.k;
            for (std::size_t c = 0; c < k.size(); ++c) k[c] += t[c] << j;
            builder.add(e.i, DyadicCube{j, std::move(k)}, w * e.v);
        });
    }
    return std::move(builder).build();
}

}  // namespace wavediv
