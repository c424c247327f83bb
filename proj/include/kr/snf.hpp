#pragma once

#include "kr/matrix.hpp"

#include <optional>

namespace kr {

// Smith normal form S = U * M * V with U, V unimodular, S diagonal,
// S[i,i] >= 0 and S[i,i] | S[i+1,i+1].
struct SmithForm {
    IntMat S, U, V;

    long diag_len() const { return std::min(S.rows(), S.cols()); }
    const Int& d(long i) const { return S.at(i, i); }
    long rank() const {
        long r = 0;
        for (long i = 0; i < diag_len(); ++i)
            if (S.at(i, i) != 0) ++r;
        return r;
    }
};

// Pivot: smallest nonzero absolute value in the trailing submatrix,
// ties broken by lowest (row, col). Keeps coefficient growth tame and
// makes the output deterministic.
inline SmithForm smith_normal_form(const IntMat& M) {
    SmithForm f{M, IntMat::identity(M.rows()), IntMat::identity(M.cols())};
    IntMat& S = f.S;
    IntMat& U = f.U;
    IntMat& V = f.V;
    const long r = S.rows(), c = S.cols();
    const long d = std::min(r, c);

    for (long t = 0; t < d;) {
        long pi = -1, pj = -1;
        Int best = 0;
        for (long i = t; i < r; ++i)
            for (long j = t; j < c; ++j) {
                const Int& v = S.at(i, j);
                if (v == 0) continue;
                Int a = abs_int(v);
                if (pi < 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break; // trailing submatrix zero

        if (pi != t) { S.swap_rows(t, pi); U.swap_rows(t, pi); }
        if (pj != t) { S.swap_cols(t, pj); V.swap_cols(t, pj); }
        if (S.at(t, t) < 0) { S.negate_row(t); U.negate_row(t); }

        bool residue = false;
        for (long i = t + 1; i < r; ++i) {
            if (S.at(i, t) == 0) continue;
            Int q = S.at(i, t) / S.at(t, t);
            S.addmul_row(i, t, -q);
            U.addmul_row(i, t, -q);
            if (S.at(i, t) != 0) residue = true;
        }
        for (long j = t + 1; j < c; ++j) {
            if (S.at(t, j) == 0) continue;
            Int q = S.at(t, j) / S.at(t, t);
            S.addmul_col(j, t, -q);
            V.addmul_col(j, t, -q);
            if (S.at(t, j) != 0) residue = true;
        }
        if (residue) continue; // smaller remainders exist; re-pivot

        bool cleared = true;
        for (long i = t + 1; i < r && cleared; ++i)
            if (S.at(i, t) != 0) cleared = false;
        for (long j = t + 1; j < c && cleared; ++j)
            if (S.at(t, j) != 0) cleared = false;
        if (!cleared) continue;

        // divisibility repair: pull a bad entry into the pivot row
        long bi = -1;
        for (long i = t + 1; i < r && bi < 0; ++i)
            for (long j = t + 1; j < c; ++j)
                if (S.at(i, j) % S.at(t, t) != 0) { bi = i; break; }
        if (bi >= 0) {
            S.addmul_row(t, bi, 1);
            U.addmul_row(t, bi, 1);
            continue;
        }
        ++t;
    }
    return f;
}

// Basis of the integer kernel lattice of M, as columns.
inline IntMat kernel_lattice(const IntMat& M) {
    SmithForm f = smith_normal_form(M);
    std::vector<long> idx;
    for (long j = 0; j < M.cols(); ++j)
        if (j >= f.diag_len() || f.d(j) == 0) idx.push_back(j);
    return f.V.columns(idx);
}

// Solve M * X = B over the integers, all columns at once.
inline std::optional<IntMat> solve_integer(const IntMat& M, const IntMat& B) {
    if (M.rows() != B.rows()) fail(ErrorCode::BadInput, "solve shape mismatch");
    SmithForm f = smith_normal_form(M);
    IntMat UB = f.U * B;
    IntMat Y(M.cols(), B.cols());
    long dl = f.diag_len();
    for (long k = 0; k < B.cols(); ++k) {
        for (long i = 0; i < M.rows(); ++i) {
            const Int& rhs = UB.at(i, k);
            if (i < dl && f.d(i) != 0) {
                if (rhs % f.d(i) != 0) return std::nullopt;
                Y.at(i, k) = rhs / f.d(i);
            } else if (rhs != 0) {
                return std::nullopt;
            }
        }
    }
    return f.V * Y;
}

// Does the column span of A contain every column of B?
inline bool spans(const IntMat& A, const IntMat& B) {
    if (B.cols() == 0) return true;
    if (A.cols() == 0) return B.is_zero();
    return solve_integer(A, B).has_value();
}

// Basis for the column lattice of M (full column rank).
inline IntMat column_lattice_basis(const IntMat& M) {
    SmithForm f = smith_normal_form(M);
    IntMat MV = M * f.V;
    std::vector<long> idx;
    for (long j = 0; j < std::min(MV.cols(), f.diag_len()); ++j)
        if (f.d(j) != 0) idx.push_back(j);
    return MV.columns(idx);
}

} // namespace kr
