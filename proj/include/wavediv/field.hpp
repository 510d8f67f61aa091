#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "wavediv/dyadic.hpp"

namespace wavediv {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Parameters of the discrete sequence space b^{s,q}_p: per-scale weighted
/// l^p sums whose sequence over scales lies in l^q. p and q live in (0, inf];
/// p = q = inf is the Holder-type sup-norm convention (weight 2^{sj}).
struct BesovParams {
    double s = 0.0;
    double p = 2.0;
    double q = 2.0;
    int d = 1;

    /// d/p with the convention d/inf = 0.
    double d_over_p() const { return std::isinf(p) ? 0.0 : static_cast<double>(d) / p; }
};

/// Index of one coefficient: generator number i (1-based) and dyadic cube.
struct CoeffIndex {
    int i = 1;
    DyadicCube cube;
};

/// One stored coefficient at a fixed scale.
struct FieldEntry {
    int i = 1;
    Pos k;
    double v = 0.0;
};

/// A finite sparse coefficient family {c^(i)_{j,k}} for 0 <= j <= jmax with
/// the intended ambient-space parameters attached. Immutable after
/// construction; absent entries mean value 0. Enumeration within a scale is
/// lexicographic in (i, k).
class CoefficientField {
  public:
    CoefficientField() = default;
    CoefficientField(int d, int jmax, BesovParams besov,
                     std::vector<std::vector<FieldEntry>> scales);

    int dim() const { return d_; }
    int jmax() const { return jmax_; }
    const BesovParams& besov() const { return besov_; }

    std::span<const FieldEntry> at_scale(int j) const;

    /// Stored value at (i, cube); 0 when absent.
    double value(int i, const DyadicCube& cube) const;

    std::size_t size() const;

    /// Calls f(j, entry) over every stored entry, scales ascending, entries
    /// in the deterministic (i, k) order.
    template <class F>
    void for_each(F&& f) const {
        for (int j = 0; j < static_cast<int>(scales_.size()); ++j)
            for (const auto& e : scales_[j]) f(j, e);
    }

    /// True when every stored cube lies inside [0,1)^d.
    bool supported_in_unit_cube() const;

  private:
    int d_ = 1;
    int jmax_ = 0;
    BesovParams besov_;
    std::vector<std::vector<FieldEntry>> scales_;  // index j = 0..jmax
};

/// Accumulating builder. add() sums duplicate (i, cube) contributions at
/// build time; exact zeros are dropped.
class FieldBuilder {
  public:
    FieldBuilder(int d, int jmax, BesovParams besov);

    void add(int i, const DyadicCube& cube, double v);

    int jmax() const { return jmax_; }

    CoefficientField build() &&;

  private:
    int d_;
    int jmax_;
    BesovParams besov_;
    std::vector<std::vector<FieldEntry>> scales_;
};

}  // namespace wavediv
