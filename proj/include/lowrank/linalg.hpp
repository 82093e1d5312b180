#pragma once

#include <cstddef>
#include <vector>

#include "lowrank/dense_matrix.hpp"
#include "lowrank/sparse_matrix.hpp"

namespace lowrank {

enum class Side { Left, Right };

// ---------------------------------------------------------------------------
// Products. All throw DimensionError on non-conforming shapes.

/// a * b
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
/// a^T * b
DenseMatrix matmul_transA(const DenseMatrix& a, const DenseMatrix& b);
/// a * b^T
DenseMatrix matmul_transB(const DenseMatrix& a, const DenseMatrix& b);

/// Side::Left: s * d. Side::Right: d * s. The sparse operand is never densified.
DenseMatrix spmm(const SparseMatrix& s, const DenseMatrix& d, Side side);
/// s^T * d, traversing the CSR rows as CSC columns.
DenseMatrix spmm_transA(const SparseMatrix& s, const DenseMatrix& d);

// ---------------------------------------------------------------------------
// Factorizations.

struct QrEconResult {
	DenseMatrix q; ///< m x k, orthonormal columns, k = min(m, n)
	DenseMatrix r; ///< k x n upper triangular (k x k when m >= n)
};

/**
 * Economy-size Householder QR (unpivoted).
 *
 * Reflectors are normalized so that each R(j, j) is nonnegative; the output is
 * therefore unique for full-rank input and identical across runs.
 */
QrEconResult qr_econ(const DenseMatrix& a);

/// Q factor of qr_econ(a). Requires a.cols() <= a.rows().
DenseMatrix orth(const DenseMatrix& a);

struct SvdResult {
	DenseMatrix u;             ///< m x k
	std::vector<double> sigma; ///< k values, nonincreasing, nonnegative
	DenseMatrix vt;            ///< k x n
};

/**
 * Thin SVD, k = min(m, n), via Householder bidiagonalization followed by
 * implicit-shift Golub-Kahan QR sweeps.
 *
 * Throws FactorizationError if a singular value fails to converge.
 */
SvdResult svd(const DenseMatrix& a);

/// Singular values only (same algorithm, no vector accumulation).
std::vector<double> singular_values(const DenseMatrix& a);

/**
 * Epsilon pseudo-inverse V1 * inv(S1) * U1^T keeping singular values strictly
 * greater than eps. Returns an n x m zero matrix when nothing survives.
 */
DenseMatrix pinv_eps(const DenseMatrix& a, double eps);

/**
 * Solve R X = B (Side::Left) or X R = B (Side::Right) for upper triangular R.
 *
 * Rejects R when min|R_ii| < n * machine_epsilon * max|R_ii| with an
 * IllConditionedError naming the first offending diagonal index.
 */
DenseMatrix tri_solve_upper(const DenseMatrix& r, const DenseMatrix& b, Side side);

} // namespace lowrank
