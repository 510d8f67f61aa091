#include "wavediv/wavelet.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace wavediv {

WaveletSystem::WaveletSystem(std::string name, int d, int n_gens, EvalFn eval,
                             std::optional<double> support_radius, double sup_abs,
                             DecayBound decay, std::optional<double> lipschitz,
                             bool approximate)
    : name_(std::move(name)),
      d_(d),
      n_(n_gens),
      eval_(std::move(eval)),
      support_radius_(support_radius),
      sup_abs_(sup_abs),
      decay_(decay),
      lipschitz_(lipschitz),
      approximate_(approximate) {
    if (d_ < 1) throw std::invalid_argument("WaveletSystem: d must be >= 1");
    if (n_ < 1) throw std::invalid_argument("WaveletSystem: need at least one generator");
}

double WaveletSystem::eval_raw(int i, std::span<const double> y) const {
    if (i < 1 || i > n_) throw std::out_of_range("WaveletSystem: generator index out of range");
    if (static_cast<int>(y.size()) != d_)
        throw std::invalid_argument("WaveletSystem: point dimension mismatch");
    if (support_radius_) {
        for (double c : y)
            if (std::abs(c) > *support_radius_) return 0.0;
    }
    return eval_(i, y);
}

double WaveletSystem::eval(const CoeffIndex& idx, std::span<const double> x) const {
    const double scale = std::exp2(static_cast<double>(idx.cube.j));
    std::vector<double> y(x.size());
    for (std::size_t c = 0; c < x.size(); ++c)
        y[c] = x[c] * scale - static_cast<double>(idx.cube.k[c]);
    return eval_raw(idx.i, y);
}

namespace {

double haar_1d(double y) {
    if (y >= 0.0 && y < 0.5) return 1.0;
    if (y >= 0.5 && y < 1.0) return -1.0;
    return 0.0;
}

double box_1d(double y) { return (y >= 0.0 && y < 1.0) ? 1.0 : 0.0; }

}  // namespace

WaveletSystem haar_system(int d) {
    if (d < 1) throw std::invalid_argument("haar_system: d must be >= 1");
    if (d > 20) throw std::invalid_argument("haar_system: d too large for tensor construction");
    const int n = (1 << d) - 1;
    auto eval = [d](int i, std::span<const double> y) {
        // bit c of i selects the Haar factor along coordinate c, else the box
        double v = 1.0;
        for (int c = 0; c < d; ++c) {
            v *= ((i >> c) & 1) ? haar_1d(y[c]) : box_1d(y[c]);
            if (v == 0.0) return 0.0;
        }
        return v;
    };
    return WaveletSystem("haar", d, n, eval, /*support_radius=*/1.0, /*sup_abs=*/1.0,
                         DecayBound{2.0, 4.0}, /*lipschitz=*/std::nullopt);
}

WaveletSystem schauder_system() {
    auto eval = [](int, std::span<const double> y) {
        const double t = y[0];
        if (t < 0.0 || t > 1.0) return 0.0;
        return std::min(t, 1.0 - t);
    };
    return WaveletSystem("schauder", 1, 1, eval, 1.0, 0.5, DecayBound{1.0, 4.0},
                         /*lipschitz=*/1.0);
}

WaveletSystem indicator_system(int n_gens, int d) {
    if (n_gens < 1) throw std::invalid_argument("indicator_system: need n_gens >= 1");
    auto eval = [d](int, std::span<const double> y) {
        for (int c = 0; c < d; ++c)
            if (!(y[c] >= 0.0 && y[c] < 1.0)) return 0.0;
        return 1.0;
    };
    return WaveletSystem("indicator", d, n_gens, eval, 1.0, 1.0, DecayBound{2.0, 4.0},
                         std::nullopt);
}

namespace {

/// Cascade table for the 4-tap orthogonal generator pair on [0,3]: values of
/// the scaling function phi on the grid m 2^-levels, refined level by level
/// from the exact integer values phi(1) = (1+sqrt 3)/2, phi(2) = (1-sqrt 3)/2.
struct CascadeTable {
    int levels;
    double step;
    std::vector<double> phi;  // phi(m * step), m = 0..3*2^levels
    std::vector<double> psi;  // psi on the same grid
    double sup_abs;

    explicit CascadeTable(int lv) : levels(lv), step(std::exp2(-static_cast<double>(lv))) {
        const double s3 = std::sqrt(3.0);
        const double r2 = std::sqrt(2.0);
        const double h[4] = {(1 + s3) / (4 * r2), (3 + s3) / (4 * r2), (3 - s3) / (4 * r2),
                             (1 - s3) / (4 * r2)};

        std::vector<double> cur = {0.0, (1 + s3) / 2.0, (1 - s3) / 2.0, 0.0};
        for (int r = 1; r <= levels; ++r) {
            // refine: phi(x) = sqrt(2) sum_k h_k phi(2x - k), with 2x - k on
            // the previous grid when x is on the new one
            const std::int64_t n_prev = 3 * (std::int64_t{1} << (r - 1));
            const std::int64_t n_new = 3 * (std::int64_t{1} << r);
            std::vector<double> next(static_cast<std::size_t>(n_new) + 1, 0.0);
            for (std::int64_t m = 0; m <= n_new; ++m) {
                double acc = 0.0;
                for (int k = 0; k < 4; ++k) {
                    const std::int64_t arg = m - (std::int64_t{k} << (r - 1));
                    if (arg >= 0 && arg <= n_prev) acc += h[k] * cur[static_cast<std::size_t>(arg)];
                }
                next[static_cast<std::size_t>(m)] = r2 * acc;
            }
            cur = std::move(next);
        }
        phi = std::move(cur);

        // psi(x) = sqrt(2) sum_k g_k phi(2x - k), g_k = (-1)^k h_{3-k}
        const double g[4] = {h[3], -h[2], h[1], -h[0]};
        const std::int64_t n = 3 * (std::int64_t{1} << levels);
        psi.assign(static_cast<std::size_t>(n) + 1, 0.0);
        sup_abs = 0.0;
        for (std::int64_t m = 0; m <= n; ++m) {
            double acc = 0.0;
            for (int k = 0; k < 4; ++k) {
                // 2x - k at grid position 2m - k*2^levels (one level finer is
                // the same grid here since phi is already at full resolution;
                // use linear interpolation at half-steps)
                const double arg = 2.0 * static_cast<double>(m) * step - k;
                if (arg >= 0.0 && arg <= 3.0) {
                    const double u = arg / step;
                    const auto lo = static_cast<std::int64_t>(std::floor(u));
                    const double frac = u - static_cast<double>(lo);
                    const double v0 = phi[static_cast<std::size_t>(lo)];
                    const double v1 = lo < n ? phi[static_cast<std::size_t>(lo + 1)] : 0.0;
                    acc += g[k] * (v0 + frac * (v1 - v0));
                }
            }
            psi[static_cast<std::size_t>(m)] = std::sqrt(2.0) * acc;
            sup_abs = std::max(sup_abs, std::abs(psi[static_cast<std::size_t>(m)]));
        }
    }

    double eval_psi(double y) const {
        if (y < 0.0 || y > 3.0) return 0.0;
        const double u = y / step;
        const auto lo = static_cast<std::int64_t>(std::floor(u));
        const auto n = static_cast<std::int64_t>(psi.size()) - 1;
        if (lo >= n) return psi.back();
        const double frac = u - static_cast<double>(lo);
        return psi[static_cast<std::size_t>(lo)] +
               frac * (psi[static_cast<std::size_t>(lo + 1)] - psi[static_cast<std::size_t>(lo)]);
    }
};

}  // namespace

WaveletSystem daubechies4_system(int cascade_levels) {
    if (cascade_levels < 4 || cascade_levels > 24)
        throw std::invalid_argument("daubechies4_system: cascade_levels out of [4, 24]");
    auto table = std::make_shared<CascadeTable>(cascade_levels);
    const double sup = table->sup_abs;
    auto eval = [table](int, std::span<const double> y) { return table->eval_psi(y[0]); };
    return WaveletSystem("db4", 1, 1, eval, /*support_radius=*/3.0, sup, DecayBound{sup, 4.0},
                         /*lipschitz=*/std::nullopt, /*approximate=*/true);
}

WaveletSystem make_system(const std::string& name, int d, int n_gens) {
    if (name == "haar") return haar_system(d);
    if (name == "schauder") return schauder_system();
    if (name == "indicator") return indicator_system(n_gens, d);
    if (name == "db4") return daubechies4_system();
    throw std::invalid_argument("make_system: unknown system '" + name + "'");
}

}  // namespace wavediv
