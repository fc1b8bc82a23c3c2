#include "toriflow/intlinalg.hpp"

#include <algorithm>
#include <numeric>

namespace toriflow {

namespace {

using I128 = __int128;

Coord narrow(I128 v) {
    check(v <= I128(9223372036854775807LL) && v >= -I128(9223372036854775807LL) - 1,
          "integer overflow in exact linear algebra");
    return static_cast<Coord>(v);
}

Coord gcd_ll(Coord a, Coord b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// Minimal exact rational for back-substitution.
struct Rat {
    Coord n = 0, d = 1;
    void reduce() {
        if (d < 0) { n = -n; d = -d; }
        Coord g = gcd_ll(n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n == 0) d = 1;
    }
};

Rat rat_add(Rat a, Rat b) {
    Rat r;
    r.n = narrow(I128(a.n) * b.d + I128(b.n) * a.d);
    r.d = narrow(I128(a.d) * b.d);
    r.reduce();
    return r;
}

Rat rat_mul(Rat a, Rat b) {
    Rat r;
    r.n = narrow(I128(a.n) * b.n);
    r.d = narrow(I128(a.d) * b.d);
    r.reduce();
    return r;
}

Rat rat_div(Rat a, Rat b) {
    check(b.n != 0, "division by zero rational");
    Rat r;
    r.n = narrow(I128(a.n) * b.d);
    r.d = narrow(I128(a.d) * b.n);
    r.reduce();
    return r;
}

// Fraction-free (Bareiss) forward elimination in place. Returns pivot column
// per pivot row. Rows are swapped as needed; `sign` tracks row swaps.
struct Echelon {
    IMat m;
    std::vector<int> pivot_cols;
    int sign = 1;
};

Echelon bareiss(IMat m) {
    Echelon e;
    int r = 0;
    Coord prev = 1;
    std::vector<int> pcols;
    for (int c = 0; c < m.ncols && r < m.nrows; ++c) {
        int piv = -1;
        for (int i = r; i < m.nrows; ++i)
            if (m.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j < m.ncols; ++j) std::swap(m.at(piv, j), m.at(r, j));
            e.sign = -e.sign;
        }
        for (int i = r + 1; i < m.nrows; ++i) {
            for (int j = c + 1; j < m.ncols; ++j) {
                I128 v = I128(m.at(r, c)) * m.at(i, j) - I128(m.at(i, c)) * m.at(r, j);
                check(v % prev == 0, "Bareiss exact division failed");
                m.at(i, j) = narrow(v / prev);
            }
            m.at(i, c) = 0;
        }
        prev = m.at(r, c);
        pcols.push_back(c);
        ++r;
    }
    e.m = std::move(m);
    e.pivot_cols = std::move(pcols);
    return e;
}

}  // namespace

IMat from_rows(const std::vector<Vec>& rows) {
    IMat m;
    m.nrows = static_cast<int>(rows.size());
    m.ncols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    m.a.reserve(static_cast<size_t>(m.nrows) * m.ncols);
    for (const auto& r : rows) {
        check(static_cast<int>(r.size()) == m.ncols, "ragged matrix rows");
        m.a.insert(m.a.end(), r.begin(), r.end());
    }
    return m;
}

int rank(IMat m) {
    if (m.nrows == 0 || m.ncols == 0) return 0;
    return static_cast<int>(bareiss(std::move(m)).pivot_cols.size());
}

Coord det(IMat m) {
    check(m.nrows == m.ncols, "det of non-square matrix");
    if (m.nrows == 0) return 1;
    Echelon e = bareiss(std::move(m));
    if (static_cast<int>(e.pivot_cols.size()) < e.m.nrows) return 0;
    // Bareiss leaves det in the last pivot entry (up to row-swap sign).
    return e.sign * e.m.at(e.m.nrows - 1, e.m.ncols - 1);
}

std::vector<Vec> kernel_basis(const IMat& m) {
    int n = m.ncols;
    // Column reduction with a tracked unimodular transform U: columns of m
    // are combined by integer operations until each row has at most one
    // unprocessed nonzero; U's columns over the zeroed m-columns generate
    // the full kernel lattice.
    std::vector<Vec> col(n), u(n);
    for (int j = 0; j < n; ++j) {
        col[j].assign(m.nrows, 0);
        for (int i = 0; i < m.nrows; ++i) col[j][i] = m.at(i, j);
        u[j].assign(n, 0);
        u[j][j] = 1;
    }
    std::vector<bool> pivoted(n, false);
    for (int r = 0; r < m.nrows; ++r) {
        for (;;) {
            int best = -1;
            for (int j = 0; j < n; ++j) {
                if (pivoted[j] || col[j][r] == 0) continue;
                if (best < 0 ||
                    std::abs(col[j][r]) < std::abs(col[best][r]))
                    best = j;
            }
            if (best < 0) break;  // row all zero among active columns
            bool others = false;
            for (int j = 0; j < n; ++j) {
                if (j == best || pivoted[j] || col[j][r] == 0) continue;
                others = true;
                Coord q = col[j][r] / col[best][r];
                if (q != 0) {
                    for (int i = 0; i < m.nrows; ++i)
                        col[j][i] = narrow(I128(col[j][i]) - I128(q) * col[best][i]);
                    for (int i = 0; i < n; ++i)
                        u[j][i] = narrow(I128(u[j][i]) - I128(q) * u[best][i]);
                }
            }
            if (!others) { pivoted[best] = true; break; }
            // loop again: remainders may still be nonzero (gcd steps)
        }
    }
    std::vector<Vec> out;
    for (int j = 0; j < n; ++j) {
        if (pivoted[j]) continue;
        bool zero = true;
        for (int i = 0; i < m.nrows; ++i)
            if (col[j][i] != 0) { zero = false; break; }
        if (zero) out.push_back(u[j]);
    }
    return out;
}

std::vector<Vec> saturated_span_basis(const std::vector<Vec>& rows, int n) {
    IMat m = rows.empty() ? IMat(0, n) : from_rows(rows);
    check(m.ncols == n, "saturated_span_basis dimension mismatch");
    std::vector<Vec> orth = kernel_basis(m);
    IMat k = orth.empty() ? IMat(0, n) : from_rows(orth);
    return kernel_basis(k);
}

std::optional<RationalVec> solve_rational(const IMat& A, const Vec& b) {
    check(static_cast<int>(b.size()) == A.nrows, "solve_rational shape mismatch");
    IMat aug(A.nrows, A.ncols + 1);
    for (int i = 0; i < A.nrows; ++i) {
        for (int j = 0; j < A.ncols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.ncols) = b[static_cast<size_t>(i)];
    }
    Echelon e = bareiss(std::move(aug));
    int nr = static_cast<int>(e.pivot_cols.size());
    // Inconsistent iff a pivot lands in the augmented column.
    if (nr > 0 && e.pivot_cols[nr - 1] == A.ncols) return std::nullopt;

    std::vector<Rat> x(A.ncols, Rat{0, 1});
    for (int p = nr - 1; p >= 0; --p) {
        int pc = e.pivot_cols[p];
        Rat acc{e.m.at(p, A.ncols), 1};
        for (int j = pc + 1; j < A.ncols; ++j) {
            if (e.m.at(p, j) == 0 || x[j].n == 0) continue;
            acc = rat_add(acc, rat_mul(Rat{-e.m.at(p, j), 1}, x[j]));
        }
        x[pc] = rat_div(acc, Rat{e.m.at(p, pc), 1});
    }
    RationalVec rv;
    Coord den = 1;
    for (const Rat& r : x) den = narrow(I128(den) / gcd_ll(den, r.d) * r.d);
    rv.den = den;
    rv.num.resize(A.ncols);
    for (int j = 0; j < A.ncols; ++j)
        rv.num[j] = narrow(I128(x[j].n) * (den / x[j].d));
    // Verify exactly (guards the underdetermined free-variable choice).
    for (int i = 0; i < A.nrows; ++i) {
        I128 s = 0;
        for (int j = 0; j < A.ncols; ++j) s += I128(A.at(i, j)) * rv.num[j];
        if (s != I128(b[static_cast<size_t>(i)]) * den) return std::nullopt;
    }
    return rv;
}

std::optional<Vec> solve_in_basis(const std::vector<Vec>& basis, const Vec& v) {
    int d = static_cast<int>(basis.size());
    int n = static_cast<int>(v.size());
    IMat bt(n, d);  // columns are basis vectors
    for (int j = 0; j < d; ++j) {
        check(static_cast<int>(basis[j].size()) == n, "basis dimension mismatch");
        for (int i = 0; i < n; ++i) bt.at(i, j) = basis[j][static_cast<size_t>(i)];
    }
    auto sol = solve_rational(bt, v);
    if (!sol || sol->den != 1) return std::nullopt;
    return sol->num;
}

int affine_dim(const std::vector<Vec>& pts) {
    if (pts.empty()) return -1;
    std::vector<Vec> diffs;
    for (size_t i = 1; i < pts.size(); ++i) {
        Vec d(pts[i].size());
        for (size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
        diffs.push_back(std::move(d));
    }
    if (diffs.empty()) return 0;
    return rank(from_rows(diffs));
}

}  // namespace toriflow
