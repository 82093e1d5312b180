#include "lowrank/approx.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lowrank/error.hpp"
#include "lowrank/linalg.hpp"
#include "lowrank/random.hpp"

namespace lowrank {

namespace {

constexpr std::size_t kErrorBlockCols = 256;

// Thin SVD plus the number of singular values above eps_policy * sigma_max.
struct TruncatedSvd {
	SvdResult f;
	std::size_t keep = 0;
};

TruncatedSvd truncated_svd(const DenseMatrix& a, double eps_policy) {
	TruncatedSvd t{svd(a), 0};
	if (t.f.sigma.empty() || t.f.sigma[0] == 0.0)
		return t;
	const double eps = eps_policy * t.f.sigma[0];
	while (t.keep < t.f.sigma.size() && t.f.sigma[t.keep] > eps)
		++t.keep;
	return t;
}

// V1 * inv(S1) * U1^T restricted to the first `keep` triplets.
DenseMatrix pinv_from(const TruncatedSvd& t, std::size_t keep) {
	const std::size_t n = t.f.vt.cols();
	DenseMatrix vs(n, keep);
	for (std::size_t j = 0; j < keep; ++j)
		for (std::size_t i = 0; i < n; ++i)
			vs(i, j) = t.f.vt(j, i) / t.f.sigma[j];
	return matmul_transB(vs, t.f.u.col_block(0, keep));
}

void require_rank(MatrixView a, std::size_t r, const char* scheme) {
	const std::size_t limit = std::min(a.rows(), a.cols());
	if (r < 1 || r > limit)
		throw ParameterError(std::string(scheme) + ": rank r=" + std::to_string(r) + " must lie in [1, min(m,n)=" +
		                     std::to_string(limit) + "]");
}

struct GnSetup {
	std::size_t l;
	SketchOperator x_op;
	SketchOperator y_op;
};

GnSetup gn_setup(MatrixView a, const ApproxConfig& config, const char* scheme) {
	require_rank(a, config.rank, scheme);
	const std::size_t r = config.rank;
	const std::size_t l = config.oversampling_or_default();
	if (l < 2)
		throw ParameterError(std::string(scheme) + ": oversampling l=" + std::to_string(l) + " must be at least 2");
	if (r + l > std::min(a.rows(), a.cols()))
		throw ParameterError(std::string(scheme) + ": r + l = " + std::to_string(r + l) + " exceeds min(m,n)=" +
		                     std::to_string(std::min(a.rows(), a.cols())));
	return {l, SketchOperator::make(config.sketch_kind, a.cols(), r, column_sketch_seed(config.seed)),
	        SketchOperator::make(config.sketch_kind, a.rows(), r + l, row_sketch_seed(config.seed))};
}

} // namespace

std::string_view to_string(Scheme scheme) {
	switch (scheme) {
	case Scheme::Rsvd:
		return "rsvd";
	case Scheme::Gn:
		return "gn";
	case Scheme::GnStabilized:
		return "gn-stab";
	case Scheme::GnRc:
		return "gn-rc";
	case Scheme::GnC:
		return "gn-c";
	case Scheme::Nystrom:
		return "nystrom";
	}
	return "unknown";
}

Scheme parse_scheme(std::string_view name) {
	for (Scheme s : {Scheme::Rsvd, Scheme::Gn, Scheme::GnStabilized, Scheme::GnRc, Scheme::GnC, Scheme::Nystrom})
		if (to_string(s) == name)
			return s;
	throw ParameterError("unknown scheme '" + std::string(name) + "'");
}

DenseMatrix LowRankFactors::core_times_right() const {
	return core ? matmul(*core, right_t) : right_t;
}

DenseMatrix LowRankFactors::materialize() const {
	return matmul(left, core_times_right());
}

std::uint64_t column_sketch_seed(std::uint64_t seed) {
	return derive_seed(seed, "x");
}

std::uint64_t row_sketch_seed(std::uint64_t seed) {
	return derive_seed(seed, "y");
}

LowRankFactors rsvd(MatrixView a, const ApproxConfig& config) {
	require_rank(a, config.rank, "rsvd");
	const auto x_op = SketchOperator::make(config.sketch_kind, a.cols(), config.rank, column_sketch_seed(config.seed));
	DenseMatrix sample = apply_right(a, x_op);
	for (std::size_t it = 0; it < config.power_q; ++it) {
		// (A A^T)^q A X with re-orthonormalization between applications.
		const DenseMatrix z = orth(a.transpose_times(orth(sample)));
		sample = a.times(z);
	}
	const DenseMatrix q = orth(sample);
	const DenseMatrix b = a.transpose_times(q).transposed(); // Q^T A
	SvdResult f = svd(b);
	return {matmul(q, f.u), DenseMatrix::diagonal(f.sigma), std::move(f.vt), Scheme::Rsvd, config.rank};
}

LowRankFactors gn_with_sketches(MatrixView a, const SketchOperator& x_op, const SketchOperator& y_op) {
	if (x_op.input_dim() != a.cols() || y_op.input_dim() != a.rows())
		throw DimensionError("gn: sketch dimensions do not match the input matrix");
	if (y_op.sketch_dim() < x_op.sketch_dim())
		throw ParameterError("gn: Y must have at least as many columns as X");
	const DenseMatrix ax = apply_right(a, x_op); // m x r
	const DenseMatrix yta = apply_left(y_op, a); // (r+l) x n
	const DenseMatrix ytax = y_op.apply_left(ax); // (r+l) x r
	const QrEconResult qr = qr_econ(ytax);
	DenseMatrix left;
	try {
		left = tri_solve_upper(qr.r, ax, Side::Right);
	} catch (const IllConditionedError& e) {
		throw IllConditionedError(std::string(e.what()) + "; the core Y^T A X is numerically rank deficient, "
		                                                  "use the stabilized scheme (gn-stab)",
		                          e.index());
	}
	return {std::move(left), std::nullopt, matmul_transA(qr.q, yta), Scheme::Gn, x_op.sketch_dim()};
}

LowRankFactors gn(MatrixView a, const ApproxConfig& config) {
	const GnSetup setup = gn_setup(a, config, "gn");
	return gn_with_sketches(a, setup.x_op, setup.y_op);
}

LowRankFactors gn_stabilized(MatrixView a, const ApproxConfig& config) {
	const GnSetup setup = gn_setup(a, config, "gn-stab");
	const DenseMatrix ax = apply_right(a, setup.x_op);
	const DenseMatrix yta = apply_left(setup.y_op, a);
	const DenseMatrix ytax = setup.y_op.apply_left(ax);
	const TruncatedSvd t = truncated_svd(ytax, config.eps_policy);
	const std::size_t k = t.keep;

	// (A X V1 inv(S1)) (U1^T Y^T A)
	DenseMatrix v_scaled(ax.cols(), k);
	for (std::size_t j = 0; j < k; ++j)
		for (std::size_t i = 0; i < ax.cols(); ++i)
			v_scaled(i, j) = t.f.vt(j, i) / t.f.sigma[j];
	return {matmul(ax, v_scaled), std::nullopt, matmul_transA(t.f.u.col_block(0, k), yta), Scheme::GnStabilized, k};
}

LowRankFactors gn_rc(MatrixView a, const ApproxConfig& config, RcBranch branch) {
	require_rank(a, config.rank, "gn-rc");
	const std::size_t r = config.rank;
	const auto x_op = SketchOperator::make(config.sketch_kind, a.cols(), r, column_sketch_seed(config.seed));
	const auto y_op = SketchOperator::make(config.sketch_kind, a.rows(), r, row_sketch_seed(config.seed));

	const DenseMatrix q1 = orth(apply_right(a, x_op));              // m x r
	const DenseMatrix q2 = orth(apply_left(y_op, a).transposed());  // n x r
	DenseMatrix aq2 = a.times(q2);                                  // m x r
	const DenseMatrix atq1 = a.transpose_times(q1);                 // n x r
	DenseMatrix right_t = atq1.transposed();                        // (A^T Q1)^T = Q1^T A

	DenseMatrix core;
	std::size_t rank_used = 0;
	if (branch == RcBranch::ColumnQr) {
		const QrEconResult qr = qr_econ(aq2);
		const TruncatedSvd t = truncated_svd(qr.r, config.eps_policy);
		rank_used = t.keep;
		core = matmul(pinv_from(t, t.keep), matmul_transA(qr.q, q1));
	} else {
		const QrEconResult qr = qr_econ(atq1);
		const TruncatedSvd t = truncated_svd(qr.r.transposed(), config.eps_policy);
		rank_used = t.keep;
		core = matmul(matmul_transA(q2, qr.q), pinv_from(t, t.keep));
	}
	return {std::move(aq2), std::move(core), std::move(right_t), Scheme::GnRc, rank_used};
}

LowRankFactors gn_c(MatrixView a, const ApproxConfig& config) {
	require_rank(a, config.rank, "gn-c");
	const std::size_t r = config.rank;
	const auto x_op = SketchOperator::make(config.sketch_kind, a.cols(), r, column_sketch_seed(config.seed));

	const DenseMatrix q1 = orth(apply_right(a, x_op)); // m x r
	const DenseMatrix atq1 = a.transpose_times(q1);    // n x r
	const QrEconResult qr = qr_econ(atq1);             // Qh n x r, Rh r x r
	DenseMatrix left = a.times(qr.q);                  // A Qh

	// (Rh^T)^+ = (Rh^{-1})^T when the triangular guard accepts Rh.
	DenseMatrix core;
	std::size_t rank_used = r;
	try {
		core = tri_solve_upper(qr.r, DenseMatrix::identity(r), Side::Left).transposed();
	} catch (const IllConditionedError&) {
		const TruncatedSvd t = truncated_svd(qr.r.transposed(), config.eps_policy);
		rank_used = t.keep;
		core = pinv_from(t, t.keep);
	}
	return {std::move(left), std::move(core), atq1.transposed(), Scheme::GnC, rank_used};
}

LowRankFactors approximate(Scheme scheme, MatrixView a, const ApproxConfig& config) {
	switch (scheme) {
	case Scheme::Rsvd:
		return rsvd(a, config);
	case Scheme::Gn:
		return gn(a, config);
	case Scheme::GnStabilized:
		return gn_stabilized(a, config);
	case Scheme::GnRc:
		return gn_rc(a, config);
	case Scheme::GnC:
		return gn_c(a, config);
	case Scheme::Nystrom:
		break;
	}
	throw ParameterError("approximate: scheme '" + std::string(to_string(scheme)) +
	                     "' requires nystrom_spsd with an explicit sketch");
}

LowRankFactors nystrom_spsd(const DenseMatrix& a, const SketchOperator& omega, NystromTruncation truncate,
                            std::size_t k, double eps_policy) {
	if (a.rows() != a.cols())
		throw DimensionError("nystrom_spsd: input must be square");
	const double asym = (a - a.transposed()).frobenius_norm();
	if (asym > 1e-10 * a.frobenius_norm())
		throw SymmetryError("nystrom_spsd: input is not symmetric (||A - A^T||_F = " + std::to_string(asym) + ")");
	const std::size_t r = omega.sketch_dim();
	if (truncate != NystromTruncation::None && (k < 1 || k > r))
		throw ParameterError("nystrom_spsd: need 1 <= k <= r, got k=" + std::to_string(k) + ", r=" + std::to_string(r));

	DenseMatrix w = omega.apply_right(a); // A Omega, n x r
	DenseMatrix c = omega.apply_left(w);  // Omega^T A Omega, r x r
	c = 0.5 * (c + c.transposed());
	const TruncatedSvd t = truncated_svd(c, eps_policy);

	switch (truncate) {
	case NystromTruncation::None: {
		DenseMatrix wt = w.transposed();
		return {std::move(w), pinv_from(t, t.keep), std::move(wt), Scheme::Nystrom, t.keep};
	}
	case NystromTruncation::CoreK: {
		const std::size_t keep = std::min(k, t.keep);
		DenseMatrix wt = w.transposed();
		return {std::move(w), pinv_from(t, keep), std::move(wt), Scheme::Nystrom, keep};
	}
	case NystromTruncation::FullK: {
		// W C^+ W^T = Qw (Rw C^+ Rw^T) Qw^T; truncate the small middle factor.
		const QrEconResult qr = qr_econ(w);
		const DenseMatrix middle = matmul_transB(matmul(qr.r, pinv_from(t, t.keep)), qr.r);
		const SvdResult f = svd(middle);
		const std::size_t keep = std::min(k, f.sigma.size());
		DenseMatrix left = matmul(qr.q, f.u.col_block(0, keep));
		DenseMatrix right_t = matmul_transB(f.vt.row_block(0, keep), qr.q);
		std::vector<double> top(f.sigma.begin(), f.sigma.begin() + static_cast<std::ptrdiff_t>(keep));
		return {std::move(left), DenseMatrix::diagonal(top), std::move(right_t), Scheme::Nystrom, keep};
	}
	}
	throw ParameterError("nystrom_spsd: invalid truncation");
}

LowRankFactors RurvFactors::truncate(std::size_t k) const {
	if (k > u.cols())
		throw ParameterError("RurvFactors::truncate: k exceeds factor width");
	return {u.col_block(0, k), std::nullopt, matmul_transB(r.row_block(0, k), v), Scheme::Rsvd, k};
}

RurvFactors rurv(MatrixView a, std::size_t sketch_dim, std::size_t power_q, std::uint64_t seed) {
	const std::size_t n = a.cols();
	if (sketch_dim < 1 || sketch_dim > n)
		throw ParameterError("rurv: sketch_dim must lie in [1, n]");
	Rng rng(derive_seed(seed, "rurv"));
	DenseMatrix omega(n, n);
	for (double& x : omega.data())
		x = rng.normal();
	DenseMatrix lead = omega.col_block(0, sketch_dim);
	for (std::size_t it = 0; it < power_q; ++it)
		lead = orth(a.transpose_times(orth(a.times(orth(lead)))));

	// Complete the informed directions to a square orthonormal V so that A = U R V^T exactly.
	std::copy(lead.data().begin(), lead.data().end(), omega.data().begin());
	DenseMatrix v = orth(omega);
	QrEconResult qr = qr_econ(a.times(v));
	return {std::move(qr.q), std::move(qr.r), std::move(v)};
}

double relative_error(MatrixView a, const LowRankFactors& factors) {
	if (factors.rows() != a.rows() || factors.cols() != a.cols())
		throw DimensionError("relative_error: factors are " + std::to_string(factors.rows()) + "x" +
		                     std::to_string(factors.cols()) + ", matrix is " + std::to_string(a.rows()) + "x" +
		                     std::to_string(a.cols()));
	const double anorm = a.frobenius_norm();
	if (anorm == 0.0)
		throw DegenerateInputError("relative_error: ||A||_F is zero");

	const DenseMatrix mr = factors.core_times_right();
	double sumsq = 0.0;
	for (std::size_t first = 0; first < a.cols(); first += kErrorBlockCols) {
		const std::size_t count = std::min(kErrorBlockCols, a.cols() - first);
		DenseMatrix residual = a.dense_col_block(first, count);
		residual -= matmul(factors.left, mr.col_block(first, count));
		const double block = residual.frobenius_norm();
		sumsq += block * block;
	}
	return std::sqrt(sumsq) / anorm;
}

double spectral_error(MatrixView a, const LowRankFactors& factors, std::uint64_t seed) {
	const std::size_t n = a.cols();
	const std::size_t b = std::min<std::size_t>({4, a.rows(), n});
	const DenseMatrix mr = factors.core_times_right();
	const DenseMatrix m_t_lt = factors.core ? matmul(factors.left, *factors.core).transposed() : factors.left.transposed();

	auto apply = [&](const DenseMatrix& v) { return a.times(v) - matmul(factors.left, matmul(mr, v)); };
	auto apply_t = [&](const DenseMatrix& y) {
		return a.transpose_times(y) - matmul_transA(factors.right_t, matmul(m_t_lt, y));
	};

	Rng rng(derive_seed(seed, "spectral"));
	DenseMatrix v(n, b);
	for (double& x : v.data())
		x = rng.normal();
	v = orth(v);

	double estimate = 0.0;
	constexpr std::size_t max_iterations = 300;
	for (std::size_t it = 0; it < max_iterations; ++it) {
		const DenseMatrix y = apply(v);
		const double next = singular_values(y).front();
		const bool converged = it > 2 && std::abs(next - estimate) <= 1e-10 * next;
		estimate = next;
		if (converged || next == 0.0)
			break;
		v = orth(apply_t(y));
	}
	return estimate;
}

} // namespace lowrank
