#include "wavediv/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavediv {

bool lex_less(const Pos& a, const Pos& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Irreducible irreducible(int j, const Pos& k) {
    if (j < 0) throw std::invalid_argument("irreducible: j must be >= 0");
    Irreducible r{j, k};
    auto all_even = [](const Pos& p) {
        for (auto c : p)
            if (c % 2 != 0) return false;
        return true;
    };
    while (r.J > 0 && all_even(r.k)) {
        for (auto& c : r.k) c /= 2;
        --r.J;
    }
    return r;
}

Irreducible irreducible(const DyadicCube& cube) { return irreducible(cube.j, cube.k); }

DyadicCube child(const DyadicCube& cube, std::uint32_t m) {
    DyadicCube c;
    c.j = cube.j + 1;
    c.k.resize(cube.k.size());
    for (std::size_t i = 0; i < cube.k.size(); ++i)
        c.k[i] = 2 * cube.k[i] + ((m >> i) & 1u);
    return c;
}

std::vector<DyadicCube> children(const DyadicCube& cube) {
    const std::uint32_t n = 1u << cube.dim();
    std::vector<DyadicCube> out;
    out.reserve(n);
    for (std::uint32_t m = 0; m < n; ++m) out.push_back(child(cube, m));
    return out;
}

DyadicCube parent(const DyadicCube& cube) {
    if (cube.j < 1) throw std::invalid_argument("parent: cube has no parent at j = 0");
    DyadicCube p;
    p.j = cube.j - 1;
    p.k.resize(cube.k.size());
    for (std::size_t i = 0; i < cube.k.size(); ++i)
        // floor division by 2 (positions may be negative for covering images)
        p.k[i] = (cube.k[i] >= 0) ? cube.k[i] / 2 : (cube.k[i] - 1) / 2;
    return p;
}

DyadicCube ancestor_at(const DyadicCube& cube, int j0) {
    if (j0 < 0 || j0 > cube.j) throw std::invalid_argument("ancestor_at: need 0 <= j0 <= j");
    DyadicCube a = cube;
    while (a.j > j0) a = parent(a);
    return a;
}

DyadicCube containing_cube(std::span<const double> x, int j) {
    if (j < 0) throw std::invalid_argument("containing_cube: j must be >= 0");
    DyadicCube c;
    c.j = j;
    c.k.resize(x.size());
    const double scale = std::exp2(static_cast<double>(j));
    for (std::size_t i = 0; i < x.size(); ++i)
        c.k[i] = static_cast<std::int64_t>(std::floor(x[i] * scale));
    return c;
}

bool contains(const DyadicCube& cube, std::span<const double> x) {
    if (static_cast<int>(x.size()) != cube.dim()) return false;
    const double scale = std::exp2(static_cast<double>(cube.j));
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double y = x[i] * scale - static_cast<double>(cube.k[i]);
        if (!(y >= 0.0 && y < 1.0)) return false;
    }
    return true;
}

bool inside_unit_cube(const DyadicCube& cube) {
    const std::int64_t n = std::int64_t{1} << cube.j;
    for (auto c : cube.k)
        if (c < 0 || c >= n) return false;
    return true;
}

}  // namespace wavediv
