#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>

#include "lowrank/dense_matrix.hpp"
#include "lowrank/matrix_view.hpp"
#include "lowrank/sketch.hpp"

namespace lowrank {

enum class Scheme { Rsvd, Gn, GnStabilized, GnRc, GnC, Nystrom };

std::string_view to_string(Scheme scheme);
/// Accepts "rsvd", "gn", "gn-stab", "gn-rc", "gn-c", "nystrom".
Scheme parse_scheme(std::string_view name);

/**
 * Factored approximation A ~ left * core * right_t.
 *
 * An absent core stands for the identity. Shapes satisfy
 * left.cols() == core.rows() == core.cols() == right_t.rows().
 */
struct LowRankFactors {
	DenseMatrix left;                ///< m x k
	std::optional<DenseMatrix> core; ///< k x k, nullopt = identity
	DenseMatrix right_t;             ///< k x n
	Scheme scheme = Scheme::Rsvd;
	std::size_t rank_used = 0; ///< effective rank after epsilon truncation

	std::size_t rows() const noexcept { return left.rows(); }
	std::size_t cols() const noexcept { return right_t.cols(); }
	std::size_t inner_dim() const noexcept { return left.cols(); }

	/// core * right_t (k x n).
	DenseMatrix core_times_right() const;
	/// Dense m x n product; meant for test-scale matrices.
	DenseMatrix materialize() const;
};

/// Default machine-precision multiplier for the epsilon pseudo-inverse threshold.
inline constexpr double kDefaultEpsPolicy = 64.0 * std::numeric_limits<double>::epsilon();
inline constexpr std::uint64_t kDefaultSeed = 42;

struct ApproxConfig {
	std::size_t rank = 0;                    ///< r >= 1
	std::optional<std::size_t> oversampling; ///< GN only; defaults to ceil(r / 2)
	std::size_t power_q = 0;                 ///< rSVD power iterations
	double eps_policy = kDefaultEpsPolicy;   ///< epsilon = eps_policy * sigma_max(core)
	std::uint64_t seed = kDefaultSeed;
	SketchKind sketch_kind = SketchKind::Gaussian;

	std::size_t oversampling_or_default() const noexcept { return oversampling.value_or((rank + 1) / 2); }
};

/// Substream labels: every scheme draws X from "x"; GN and GN-r&c draw Y from "y".
std::uint64_t column_sketch_seed(std::uint64_t seed);
std::uint64_t row_sketch_seed(std::uint64_t seed);

/// Randomized SVD: Q = orth(A X) (optionally after power iterations), then svd(Q^T A).
LowRankFactors rsvd(MatrixView a, const ApproxConfig& config);

/// Generalized Nystrom: A X R^{-1} Q^T (Y^T A) with [Q, R] = qr_econ(Y^T A X).
LowRankFactors gn(MatrixView a, const ApproxConfig& config);

/// GN with caller-supplied sketches X = x_op^T (n x r) and Y = y_op^T (m x r+l).
/// Oversampling is not constrained here; y_op may equal x_op for symmetric input.
LowRankFactors gn_with_sketches(MatrixView a, const SketchOperator& x_op, const SketchOperator& y_op);

/// Stabilized GN: A X (Y^T A X)^+_eps Y^T A. Rank drops instead of failing on degenerate cores.
LowRankFactors gn_stabilized(MatrixView a, const ApproxConfig& config);

enum class RcBranch {
	ColumnQr, ///< [Qt, Rt] = qr_econ(A Q2), core = Rt^+ (Qt^T Q1)
	RowQr,    ///< [Qh, Rh] = qr_econ(A^T Q1), core = (Q2^T Qh) (Rh^T)^+
};

/// GN with row and column sketching (GN-r&c).
LowRankFactors gn_rc(MatrixView a, const ApproxConfig& config, RcBranch branch = RcBranch::ColumnQr);

/// GN with column sketching (GN-c): A Qh (Rh^T)^+ (A^T Q1)^T.
LowRankFactors gn_c(MatrixView a, const ApproxConfig& config);

/// Dispatch by scheme tag. Scheme::Nystrom is not accepted here (it needs an SPSD input and explicit sketch).
LowRankFactors approximate(Scheme scheme, MatrixView a, const ApproxConfig& config);

enum class NystromTruncation {
	None,  ///< W C^+ W^T
	CoreK, ///< W [C]_k^+ W^T
	FullK, ///< [W C^+ W^T]_k
};

/// Classical Nystrom for symmetric positive semidefinite `a` with W = A Omega, C = Omega^T A Omega.
LowRankFactors nystrom_spsd(const DenseMatrix& a, const SketchOperator& omega, NystromTruncation truncate,
                            std::size_t k, double eps_policy = kDefaultEpsPolicy);

struct RurvFactors {
	DenseMatrix u; ///< m x min(m, n), orthonormal columns
	DenseMatrix r; ///< min(m, n) x n, upper triangular
	DenseMatrix v; ///< n x n orthogonal

	/// U(:, 1:k) * R(1:k, :) * V^T as factors.
	LowRankFactors truncate(std::size_t k) const;
};

/**
 * Randomized URV: [U, R] = qr_econ(A V) with V square orthogonal.
 *
 * The first sketch_dim columns of V span (A^T A)^q Omega for a Gaussian Omega;
 * the remaining columns complete them to an orthonormal basis, so A = U R V^T
 * holds exactly and truncating to k <= sketch_dim keeps U_k U_k^T A. V is dense
 * n x n, so this is meant for moderate n.
 */
RurvFactors rurv(MatrixView a, std::size_t sketch_dim, std::size_t power_q, std::uint64_t seed);

/// ||A - L M Rt||_F / ||A||_F, streamed over column blocks of width 256.
double relative_error(MatrixView a, const LowRankFactors& factors);

/// ||A - L M Rt||_2 estimated by block power iteration on the implicit residual.
double spectral_error(MatrixView a, const LowRankFactors& factors, std::uint64_t seed = kDefaultSeed);

} // namespace lowrank
