#include "wavediv/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace wavediv {

namespace {
bool entry_less(const FieldEntry& a, const FieldEntry& b) {
    if (a.i != b.i) return a.i < b.i;
    return lex_less(a.k, b.k);
}
}  // namespace

CoefficientField::CoefficientField(int d, int jmax, BesovParams besov,
                                   std::vector<std::vector<FieldEntry>> scales)
    : d_(d), jmax_(jmax), besov_(besov), scales_(std::move(scales)) {
    scales_.resize(static_cast<std::size_t>(jmax_) + 1);
}

std::span<const FieldEntry> CoefficientField::at_scale(int j) const {
    if (j < 0 || j > jmax_) return {};
    return scales_[static_cast<std::size_t>(j)];
}

double CoefficientField::value(int i, const DyadicCube& cube) const {
    if (cube.j < 0 || cube.j > jmax_) return 0.0;
    const auto& sc = scales_[static_cast<std::size_t>(cube.j)];
    FieldEntry probe{i, cube.k, 0.0};
    auto it = std::lower_bound(sc.begin(), sc.end(), probe, entry_less);
    if (it != sc.end() && it->i == i && it->k == cube.k) return it->v;
    return 0.0;
}

std::size_t CoefficientField::size() const {
    std::size_t n = 0;
    for (const auto& sc : scales_) n += sc.size();
    return n;
}

bool CoefficientField::supported_in_unit_cube() const {
    for (int j = 0; j <= jmax_; ++j) {
        const std::int64_t lim = std::int64_t{1} << j;
        for (const auto& e : scales_[static_cast<std::size_t>(j)])
            for (auto c : e.k)
                if (c < 0 || c >= lim) return false;
    }
    return true;
}

FieldBuilder::FieldBuilder(int d, int jmax, BesovParams besov)
    : d_(d), jmax_(jmax), besov_(besov) {
    if (d < 1) throw std::invalid_argument("FieldBuilder: d must be >= 1");
    if (jmax < 0) throw std::invalid_argument("FieldBuilder: jmax must be >= 0");
    scales_.resize(static_cast<std::size_t>(jmax) + 1);
}

void FieldBuilder::add(int i, const DyadicCube& cube, double v) {
    if (i < 1) throw std::invalid_argument("FieldBuilder: generator index must be >= 1");
    if (cube.j < 0 || cube.j > jmax_)
        throw std::out_of_range("FieldBuilder: cube scale outside [0, jmax]");
    if (cube.dim() != d_) throw std::invalid_argument("FieldBuilder: dimension mismatch");
    scales_[static_cast<std::size_t>(cube.j)].push_back({i, cube.k, v});
}

CoefficientField FieldBuilder::build() && {
    for (auto& sc : scales_) {
        std::sort(sc.begin(), sc.end(), entry_less);
        std::vector<FieldEntry> merged;
        merged.reserve(sc.size());
        for (auto& e : sc) {
            if (!merged.empty() && merged.back().i == e.i && merged.back().k == e.k)
                merged.back().v += e.v;
            else
                merged.push_back(std::move(e));
        }
        std::erase_if(merged, [](const FieldEntry& e) { return e.v == 0.0; });
        sc = std::move(merged);
    }
    return CoefficientField(d_, jmax_, besov_, std::move(scales_));
}

}  // namespace wavediv
