#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace wavediv {

/// Integer position of a dyadic cube, one entry per space dimension.
using Pos = std::vector<std::int64_t>;

/// Half-open dyadic cube of generation j:
/// [k1/2^j, (k1+1)/2^j) x ... x [kd/2^j, (kd+1)/2^j).
/// Containment tests use half-open semantics so every point of R^d lies in
/// exactly one cube per generation.
struct DyadicCube {
    int j = 0;
    Pos k;

    int dim() const { return static_cast<int>(k.size()); }
    bool operator==(const DyadicCube&) const = default;
};

/// Lexicographic order on positions (used for the deterministic enumeration
/// of coefficient indices).
bool lex_less(const Pos& a, const Pos& b);

/// Result of reducing k/2^j to lowest terms k'/2^J.
struct Irreducible {
    int J = 0;
    Pos k;
};

/// Reduce k/2^j to k'/2^J with J minimal, i.e. divide out common factors of 2
/// until some component of k' is odd. Convention: the zero vector reduces all
/// the way to (J=0, k'=0).
Irreducible irreducible(int j, const Pos& k);
Irreducible irreducible(const DyadicCube& cube);

/// The 2^d children of a cube, in order of the binary expansion of the child
/// index (bit c of m selects the upper half along coordinate c).
std::vector<DyadicCube> children(const DyadicCube& cube);
DyadicCube child(const DyadicCube& cube, std::uint32_t m);

/// Parent of a generation-(j>=1) cube. Throws on j == 0.
DyadicCube parent(const DyadicCube& cube);

/// Unique generation-j0 cube containing `cube`; requires 0 <= j0 <= cube.j.
DyadicCube ancestor_at(const DyadicCube& cube, int j0);

/// Unique generation-j cube containing x (half-open semantics; works for any
/// x in R^d, positions may be negative or >= 2^j).
DyadicCube containing_cube(std::span<const double> x, int j);

bool contains(const DyadicCube& cube, std::span<const double> x);

/// True when the cube is a subset of [0,1)^d.
bool inside_unit_cube(const DyadicCube& cube);

}  // namespace wavediv
