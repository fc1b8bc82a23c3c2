// Exact integer linear algebra on small dense matrices: rank, determinant,
// kernel lattice bases, saturated span lattices, rational solves.  Everything
// here is fraction-free (Bareiss / integer column reduction); no floating
// point anywhere.
#pragma once

#include <optional>
#include <vector>

#include "toriflow/common.hpp"

namespace toriflow {

// Row-major dense matrix of Coord. rows() may be 0.
struct IMat {
    int nrows = 0;
    int ncols = 0;
    std::vector<Coord> a;  // nrows * ncols

    IMat() = default;
    IMat(int r, int c) : nrows(r), ncols(c), a(static_cast<size_t>(r) * c, 0) {}
    Coord& at(int i, int j) { return a[static_cast<size_t>(i) * ncols + j]; }
    Coord at(int i, int j) const { return a[static_cast<size_t>(i) * ncols + j]; }
};

IMat from_rows(const std::vector<Vec>& rows);

// Rank over Q (fraction-free elimination).
int rank(IMat m);

// Determinant of a square matrix (Bareiss). Throws on non-square.
Coord det(IMat m);

// Basis of the integer kernel {x in Z^ncols : m x = 0}. The returned rows
// generate the full kernel lattice (it is saturated by construction).
std::vector<Vec> kernel_basis(const IMat& m);

// Basis of the saturation of the lattice spanned by `rows`:
// span_Q(rows) ∩ Z^n. Implemented as kernel(kernel(rows)).
std::vector<Vec> saturated_span_basis(const std::vector<Vec>& rows, int n);

// Solve x * B = v exactly where B's rows form a basis (full row rank).
// Returns nullopt if v is not in the integer row span.
std::optional<Vec> solve_in_basis(const std::vector<Vec>& basis, const Vec& v);

// Exact rational solution of A x = b: returns (numerators, denominator>0)
// with x_i = num_i / den, or nullopt if inconsistent. A need not be square;
// when the system is underdetermined an arbitrary solution is returned.
struct RationalVec {
    Vec num;
    Coord den = 1;
};
std::optional<RationalVec> solve_rational(const IMat& A, const Vec& b);

// Affine dimension of a point set (rank of differences). Empty set: -1.
int affine_dim(const std::vector<Vec>& pts);

}  // namespace toriflow
