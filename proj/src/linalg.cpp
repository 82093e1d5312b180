#include "lowrank/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "lowrank/error.hpp"

namespace lowrank {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string shape(std::size_t m, std::size_t n) {
	return std::to_string(m) + "x" + std::to_string(n);
}

[[noreturn]] void shape_error(const char* op, std::size_t m1, std::size_t n1, std::size_t m2, std::size_t n2) {
	throw DimensionError(std::string(op) + ": cannot combine " + shape(m1, n1) + " with " + shape(m2, n2));
}

void require_finite(const DenseMatrix& a, const char* op) {
	if (!a.all_finite())
		throw InvalidInputError(std::string(op) + ": input contains NaN or Inf");
}

// Euclidean norm with rescaling only when squares could under/overflow.
double norm2(const double* x, std::size_t n) {
	double amax = 0.0;
	for (std::size_t i = 0; i < n; ++i)
		amax = std::max(amax, std::abs(x[i]));
	if (amax == 0.0)
		return 0.0;
	double s = 0.0;
	if (amax > 1e-150 && amax < 1e150) {
		for (std::size_t i = 0; i < n; ++i)
			s += x[i] * x[i];
		return std::sqrt(s);
	}
	for (std::size_t i = 0; i < n; ++i) {
		const double t = x[i] / amax;
		s += t * t;
	}
	return amax * std::sqrt(s);
}

double dot(const double* x, const double* y, std::size_t n) {
	double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
	std::size_t i = 0;
	for (; i + 4 <= n; i += 4) {
		s0 += x[i] * y[i];
		s1 += x[i + 1] * y[i + 1];
		s2 += x[i + 2] * y[i + 2];
		s3 += x[i + 3] * y[i + 3];
	}
	for (; i < n; ++i)
		s0 += x[i] * y[i];
	return (s0 + s1) + (s2 + s3);
}

// C(:, j) += sum_p a(:, p) * b(p, j) where b is read through `bval(p, j)`.
template <class BValue>
void gemm_columns(const DenseMatrix& a, std::size_t inner, std::size_t ncols, BValue bval, DenseMatrix& c) {
	const std::size_t m = a.rows();
	const double* ad = a.data().data();
	double* cd = c.data().data();
	std::size_t j = 0;
	for (; j + 4 <= ncols; j += 4) {
		double* c0 = cd + j * m;
		double* c1 = c0 + m;
		double* c2 = c1 + m;
		double* c3 = c2 + m;
		for (std::size_t p = 0; p < inner; ++p) {
			const double b0 = bval(p, j), b1 = bval(p, j + 1), b2 = bval(p, j + 2), b3 = bval(p, j + 3);
			const double* ap = ad + p * m;
			for (std::size_t i = 0; i < m; ++i) {
				const double v = ap[i];
				c0[i] += b0 * v;
				c1[i] += b1 * v;
				c2[i] += b2 * v;
				c3[i] += b3 * v;
			}
		}
	}
	for (; j < ncols; ++j) {
		double* cj = cd + j * m;
		for (std::size_t p = 0; p < inner; ++p) {
			const double b = bval(p, j);
			if (b == 0.0)
				continue;
			const double* ap = ad + p * m;
			for (std::size_t i = 0; i < m; ++i)
				cj[i] += b * ap[i];
		}
	}
}

} // namespace

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
	if (a.cols() != b.rows())
		shape_error("matmul", a.rows(), a.cols(), b.rows(), b.cols());
	DenseMatrix c(a.rows(), b.cols());
	gemm_columns(a, a.cols(), b.cols(), [&](std::size_t p, std::size_t j) { return b(p, j); }, c);
	return c;
}

DenseMatrix matmul_transB(const DenseMatrix& a, const DenseMatrix& b) {
	if (a.cols() != b.cols())
		shape_error("matmul_transB", a.rows(), a.cols(), b.rows(), b.cols());
	DenseMatrix c(a.rows(), b.rows());
	gemm_columns(a, a.cols(), b.rows(), [&](std::size_t p, std::size_t j) { return b(j, p); }, c);
	return c;
}

DenseMatrix matmul_transA(const DenseMatrix& a, const DenseMatrix& b) {
	if (a.rows() != b.rows())
		shape_error("matmul_transA", a.rows(), a.cols(), b.rows(), b.cols());
	const std::size_t k = a.rows();
	DenseMatrix c(a.cols(), b.cols());
	for (std::size_t j = 0; j < b.cols(); ++j) {
		const double* bj = b.col(j).data();
		for (std::size_t i = 0; i < a.cols(); ++i)
			c(i, j) = dot(a.col(i).data(), bj, k);
	}
	return c;
}

DenseMatrix spmm(const SparseMatrix& s, const DenseMatrix& d, Side side) {
	const auto rp = s.row_ptr();
	const auto ci = s.col_idx();
	const auto vals = s.values();
	if (side == Side::Left) {
		if (s.cols() != d.rows())
			shape_error("spmm(left)", s.rows(), s.cols(), d.rows(), d.cols());
		DenseMatrix c(s.rows(), d.cols());
		for (std::size_t j = 0; j < d.cols(); ++j) {
			const double* dj = d.col(j).data();
			double* cj = c.col(j).data();
			for (std::size_t i = 0; i < s.rows(); ++i) {
				double acc = 0.0;
				for (std::size_t p = rp[i]; p < rp[i + 1]; ++p)
					acc += vals[p] * dj[ci[p]];
				cj[i] = acc;
			}
		}
		return c;
	}
	if (d.cols() != s.rows())
		shape_error("spmm(right)", d.rows(), d.cols(), s.rows(), s.cols());
	DenseMatrix c(d.rows(), s.cols());
	const std::size_t m = d.rows();
	for (std::size_t i = 0; i < s.rows(); ++i) {
		const double* di = d.col(i).data();
		for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
			double* cc = c.col(ci[p]).data();
			const double v = vals[p];
			for (std::size_t r = 0; r < m; ++r)
				cc[r] += v * di[r];
		}
	}
	return c;
}

DenseMatrix spmm_transA(const SparseMatrix& s, const DenseMatrix& d) {
	if (s.rows() != d.rows())
		shape_error("spmm_transA", s.rows(), s.cols(), d.rows(), d.cols());
	const auto rp = s.row_ptr();
	const auto ci = s.col_idx();
	const auto vals = s.values();
	DenseMatrix c(s.cols(), d.cols());
	for (std::size_t j = 0; j < d.cols(); ++j) {
		const double* dj = d.col(j).data();
		double* cj = c.col(j).data();
		for (std::size_t i = 0; i < s.rows(); ++i) {
			const double x = dj[i];
			if (x == 0.0)
				continue;
			for (std::size_t p = rp[i]; p < rp[i + 1]; ++p)
				cj[ci[p]] += vals[p] * x;
		}
	}
	return c;
}

QrEconResult qr_econ(const DenseMatrix& a) {
	if (a.rows() == 0 || a.cols() == 0)
		throw DimensionError("qr_econ: empty matrix " + shape(a.rows(), a.cols()));
	require_finite(a, "qr_econ");
	const std::size_t m = a.rows();
	const std::size_t n = a.cols();
	const std::size_t k = std::min(m, n);

	// Reflector j is H_j = I - tau_j v v^T with v(j) = 1 and v(j+1:m) stored below the diagonal.
	DenseMatrix w = a;
	std::vector<double> tau(k, 0.0);
	for (std::size_t j = 0; j < k; ++j) {
		double* x = w.col(j).data() + j;
		const std::size_t len = m - j;
		const double alpha = x[0];
		const double xnorm = norm2(x, len);
		if (xnorm == 0.0 || (len == 1 && alpha >= 0.0))
			continue;
		const double beta = alpha >= 0.0 ? -xnorm : xnorm;
		const double v0 = alpha - beta;
		for (std::size_t i = 1; i < len; ++i)
			x[i] /= v0;
		tau[j] = (beta - alpha) / beta;
		x[0] = beta;
		for (std::size_t c = j + 1; c < n; ++c) {
			double* y = w.col(c).data() + j;
			double s = y[0];
			for (std::size_t i = 1; i < len; ++i)
				s += x[i] * y[i];
			s *= tau[j];
			y[0] -= s;
			for (std::size_t i = 1; i < len; ++i)
				y[i] -= s * x[i];
		}
	}

	QrEconResult out{DenseMatrix(m, k), DenseMatrix(k, n)};
	for (std::size_t j = 0; j < n; ++j)
		for (std::size_t i = 0; i <= std::min(j, k - 1); ++i)
			out.r(i, j) = w(i, j);

	DenseMatrix& q = out.q;
	for (std::size_t j = 0; j < k; ++j)
		q(j, j) = 1.0;
	for (std::size_t jj = k; jj-- > 0;) {
		if (tau[jj] == 0.0)
			continue;
		const double* v = w.col(jj).data() + jj;
		const std::size_t len = m - jj;
		for (std::size_t c = jj; c < k; ++c) {
			double* y = q.col(c).data() + jj;
			double s = y[0];
			for (std::size_t i = 1; i < len; ++i)
				s += v[i] * y[i];
			s *= tau[jj];
			y[0] -= s;
			for (std::size_t i = 1; i < len; ++i)
				y[i] -= s * v[i];
		}
	}

	// Sign convention: nonnegative diagonal of R.
	for (std::size_t j = 0; j < k; ++j) {
		if (out.r(j, j) < 0.0) {
			for (std::size_t c = j; c < n; ++c)
				out.r(j, c) = -out.r(j, c);
			for (double& v : q.col(j))
				v = -v;
		}
	}
	return out;
}

DenseMatrix orth(const DenseMatrix& a) {
	if (a.cols() > a.rows())
		throw DimensionError("orth: more columns than rows (" + shape(a.rows(), a.cols()) + ")");
	return qr_econ(a).q;
}

namespace {

// Golub-Kahan-Reinsch SVD for m >= n (the classic LINPACK/JAMA formulation).
// Returns thin factors: u is m x n, v is n x n.
struct TallSvd {
	DenseMatrix u;
	std::vector<double> s;
	DenseMatrix v;
};

TallSvd svd_tall(DenseMatrix a, bool want_vectors) {
	const std::size_t m = a.rows();
	const std::size_t n = a.cols();
	const std::size_t nu = n;
	const bool wantu = want_vectors;
	const bool wantv = want_vectors;

	std::vector<double> s(std::min(m + 1, n), 0.0);
	std::vector<double> e(n, 0.0);
	std::vector<double> work(m, 0.0);
	DenseMatrix u = wantu ? DenseMatrix(m, nu) : DenseMatrix();
	DenseMatrix v = wantv ? DenseMatrix(n, n) : DenseMatrix();

	// Signed indices keep the translation of the reference loop bounds exact.
	using idx = long long;
	const idx M = static_cast<idx>(m);
	const idx N = static_cast<idx>(n);
	const idx nct = std::min(M - 1, N);
	const idx nrt = std::max<idx>(0, std::min(N - 2, M));
	auto A = [&](idx i, idx j) -> double& { return a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };
	auto U = [&](idx i, idx j) -> double& { return u(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };
	auto V = [&](idx i, idx j) -> double& { return v(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };
	auto S = [&](idx i) -> double& { return s[static_cast<std::size_t>(i)]; };
	auto E = [&](idx i) -> double& { return e[static_cast<std::size_t>(i)]; };
	auto W = [&](idx i) -> double& { return work[static_cast<std::size_t>(i)]; };

	// Reduce to bidiagonal form.
	for (idx k = 0; k < std::max(nct, nrt); ++k) {
		if (k < nct) {
			S(k) = norm2(&A(k, k), static_cast<std::size_t>(M - k));
			if (S(k) != 0.0) {
				if (A(k, k) < 0.0)
					S(k) = -S(k);
				for (idx i = k; i < M; ++i)
					A(i, k) /= S(k);
				A(k, k) += 1.0;
			}
			S(k) = -S(k);
		}
		for (idx j = k + 1; j < N; ++j) {
			if (k < nct && S(k) != 0.0) {
				double t = 0.0;
				for (idx i = k; i < M; ++i)
					t += A(i, k) * A(i, j);
				t = -t / A(k, k);
				for (idx i = k; i < M; ++i)
					A(i, j) += t * A(i, k);
			}
			E(j) = A(k, j);
		}
		if (wantu && k < nct)
			for (idx i = k; i < M; ++i)
				U(i, k) = A(i, k);
		if (k < nrt) {
			E(k) = norm2(&E(k + 1), static_cast<std::size_t>(N - k - 1));
			if (E(k) != 0.0) {
				if (E(k + 1) < 0.0)
					E(k) = -E(k);
				for (idx i = k + 1; i < N; ++i)
					E(i) /= E(k);
				E(k + 1) += 1.0;
			}
			E(k) = -E(k);
			if (k + 1 < M && E(k) != 0.0) {
				for (idx i = k + 1; i < M; ++i)
					W(i) = 0.0;
				for (idx j = k + 1; j < N; ++j)
					for (idx i = k + 1; i < M; ++i)
						W(i) += E(j) * A(i, j);
				for (idx j = k + 1; j < N; ++j) {
					const double t = -E(j) / E(k + 1);
					for (idx i = k + 1; i < M; ++i)
						A(i, j) += t * W(i);
				}
			}
			if (wantv)
				for (idx i = k + 1; i < N; ++i)
					V(i, k) = E(i);
		}
	}

	idx p = std::min(N, M + 1);
	if (nct < N)
		S(nct) = A(nct, nct);
	if (M < p)
		S(p - 1) = 0.0;
	if (nrt + 1 < p)
		E(nrt) = A(nrt, p - 1);
	E(p - 1) = 0.0;

	if (wantu) {
		for (idx j = nct; j < static_cast<idx>(nu); ++j) {
			for (idx i = 0; i < M; ++i)
				U(i, j) = 0.0;
			U(j, j) = 1.0;
		}
		for (idx k = nct - 1; k >= 0; --k) {
			if (S(k) != 0.0) {
				for (idx j = k + 1; j < static_cast<idx>(nu); ++j) {
					double t = 0.0;
					for (idx i = k; i < M; ++i)
						t += U(i, k) * U(i, j);
					t = -t / U(k, k);
					for (idx i = k; i < M; ++i)
						U(i, j) += t * U(i, k);
				}
				for (idx i = k; i < M; ++i)
					U(i, k) = -U(i, k);
				U(k, k) = 1.0 + U(k, k);
				for (idx i = 0; i < k - 1; ++i)
					U(i, k) = 0.0;
			} else {
				for (idx i = 0; i < M; ++i)
					U(i, k) = 0.0;
				U(k, k) = 1.0;
			}
		}
	}

	if (wantv) {
		for (idx k = N - 1; k >= 0; --k) {
			if (k < nrt && E(k) != 0.0) {
				for (idx j = k + 1; j < static_cast<idx>(nu); ++j) {
					double t = 0.0;
					for (idx i = k + 1; i < N; ++i)
						t += V(i, k) * V(i, j);
					t = -t / V(k + 1, k);
					for (idx i = k + 1; i < N; ++i)
						V(i, j) += t * V(i, k);
				}
			}
			for (idx i = 0; i < N; ++i)
				V(i, k) = 0.0;
			V(k, k) = 1.0;
		}
	}

	// Implicit-shift QR iteration on the bidiagonal.
	const idx pp = p - 1;
	constexpr double tiny = 0x1p-966;
	constexpr std::size_t max_iter_per_value = 150;
	std::size_t iter = 0;
	std::size_t total_iter = 0;
	while (p > 0) {
		if (iter > max_iter_per_value)
			throw FactorizationError("svd: bidiagonal QR failed to converge for singular value " +
			                             std::to_string(p - 1),
			                         total_iter);
		idx k;
		int kase;
		for (k = p - 2; k >= -1; --k) {
			if (k == -1)
				break;
			if (std::abs(E(k)) <= tiny + kEps * (std::abs(S(k)) + std::abs(S(k + 1)))) {
				E(k) = 0.0;
				break;
			}
		}
		if (k == p - 2) {
			kase = 4;
		} else {
			idx ks;
			for (ks = p - 1; ks >= k; --ks) {
				if (ks == k)
					break;
				const double t = (ks != p ? std::abs(E(ks)) : 0.0) + (ks != k + 1 ? std::abs(E(ks - 1)) : 0.0);
				if (std::abs(S(ks)) <= tiny + kEps * t) {
					S(ks) = 0.0;
					break;
				}
			}
			if (ks == k) {
				kase = 3;
			} else if (ks == p - 1) {
				kase = 1;
			} else {
				kase = 2;
				k = ks;
			}
		}
		++k;

		switch (kase) {
		case 1: { // Deflate negligible s(p).
			double f = E(p - 2);
			E(p - 2) = 0.0;
			for (idx j = p - 2; j >= k; --j) {
				double t = std::hypot(S(j), f);
				const double cs = S(j) / t;
				const double sn = f / t;
				S(j) = t;
				if (j != k) {
					f = -sn * E(j - 1);
					E(j - 1) = cs * E(j - 1);
				}
				if (wantv)
					for (idx i = 0; i < N; ++i) {
						t = cs * V(i, j) + sn * V(i, p - 1);
						V(i, p - 1) = -sn * V(i, j) + cs * V(i, p - 1);
						V(i, j) = t;
					}
			}
		} break;
		case 2: { // Split at negligible s(k).
			double f = E(k - 1);
			E(k - 1) = 0.0;
			for (idx j = k; j < p; ++j) {
				double t = std::hypot(S(j), f);
				const double cs = S(j) / t;
				const double sn = f / t;
				S(j) = t;
				f = -sn * E(j);
				E(j) = cs * E(j);
				if (wantu)
					for (idx i = 0; i < M; ++i) {
						t = cs * U(i, j) + sn * U(i, k - 1);
						U(i, k - 1) = -sn * U(i, j) + cs * U(i, k - 1);
						U(i, j) = t;
					}
			}
		} break;
		case 3: { // One QR step.
			const double scale = std::max({std::abs(S(p - 1)), std::abs(S(p - 2)), std::abs(E(p - 2)),
			                               std::abs(S(k)), std::abs(E(k))});
			const double sp = S(p - 1) / scale;
			const double spm1 = S(p - 2) / scale;
			const double epm1 = E(p - 2) / scale;
			const double sk = S(k) / scale;
			const double ek = E(k) / scale;
			const double b = ((spm1 + sp) * (spm1 - sp) + epm1 * epm1) / 2.0;
			const double c = (sp * epm1) * (sp * epm1);
			double shift = 0.0;
			if (b != 0.0 || c != 0.0) {
				shift = std::sqrt(b * b + c);
				if (b < 0.0)
					shift = -shift;
				shift = c / (b + shift);
			}
			double f = (sk + sp) * (sk - sp) + shift;
			double g = sk * ek;
			for (idx j = k; j < p - 1; ++j) {
				double t = std::hypot(f, g);
				double cs = f / t;
				double sn = g / t;
				if (j != k)
					E(j - 1) = t;
				f = cs * S(j) + sn * E(j);
				E(j) = cs * E(j) - sn * S(j);
				g = sn * S(j + 1);
				S(j + 1) = cs * S(j + 1);
				if (wantv)
					for (idx i = 0; i < N; ++i) {
						t = cs * V(i, j) + sn * V(i, j + 1);
						V(i, j + 1) = -sn * V(i, j) + cs * V(i, j + 1);
						V(i, j) = t;
					}
				t = std::hypot(f, g);
				cs = f / t;
				sn = g / t;
				S(j) = t;
				f = cs * E(j) + sn * S(j + 1);
				S(j + 1) = -sn * E(j) + cs * S(j + 1);
				g = sn * E(j + 1);
				E(j + 1) = cs * E(j + 1);
				if (wantu && j < M - 1)
					for (idx i = 0; i < M; ++i) {
						t = cs * U(i, j) + sn * U(i, j + 1);
						U(i, j + 1) = -sn * U(i, j) + cs * U(i, j + 1);
						U(i, j) = t;
					}
			}
			E(p - 2) = f;
			++iter;
			++total_iter;
		} break;
		case 4: { // Convergence: make s(k) positive and restore ordering.
			if (S(k) <= 0.0) {
				S(k) = S(k) < 0.0 ? -S(k) : 0.0;
				if (wantv)
					for (idx i = 0; i <= pp; ++i)
						V(i, k) = -V(i, k);
			}
			while (k < pp) {
				if (S(k) >= S(k + 1))
					break;
				std::swap(S(k), S(k + 1));
				if (wantv && k < N - 1)
					for (idx i = 0; i < N; ++i)
						std::swap(V(i, k + 1), V(i, k));
				if (wantu && k < M - 1)
					for (idx i = 0; i < M; ++i)
						std::swap(U(i, k + 1), U(i, k));
				++k;
			}
			iter = 0;
			--p;
		} break;
		}
	}
	s.resize(n);
	return {std::move(u), std::move(s), std::move(v)};
}

} // namespace

SvdResult svd(const DenseMatrix& a) {
	if (a.rows() == 0 || a.cols() == 0)
		throw DimensionError("svd: empty matrix " + shape(a.rows(), a.cols()));
	require_finite(a, "svd");
	if (a.rows() >= a.cols()) {
		TallSvd t = svd_tall(a, true);
		return {std::move(t.u), std::move(t.s), t.v.transposed()};
	}
	// A^T = U' S V'^T  =>  A = V' S U'^T.
	TallSvd t = svd_tall(a.transposed(), true);
	return {std::move(t.v), std::move(t.s), t.u.transposed()};
}

std::vector<double> singular_values(const DenseMatrix& a) {
	if (a.rows() == 0 || a.cols() == 0)
		throw DimensionError("singular_values: empty matrix " + shape(a.rows(), a.cols()));
	require_finite(a, "singular_values");
	if (a.rows() >= a.cols())
		return svd_tall(a, false).s;
	return svd_tall(a.transposed(), false).s;
}

DenseMatrix pinv_eps(const DenseMatrix& a, double eps) {
	if (!(eps >= 0.0))
		throw ParameterError("pinv_eps: eps must be nonnegative");
	const SvdResult f = svd(a);
	std::size_t keep = 0;
	while (keep < f.sigma.size() && f.sigma[keep] > eps)
		++keep;
	// pinv = V1 * inv(S1) * U1^T, assembled as (V1 * inv(S1)) * U1^T.
	DenseMatrix vs(a.cols(), keep);
	for (std::size_t j = 0; j < keep; ++j)
		for (std::size_t i = 0; i < a.cols(); ++i)
			vs(i, j) = f.vt(j, i) / f.sigma[j];
	return matmul_transB(vs, f.u.col_block(0, keep));
}

DenseMatrix tri_solve_upper(const DenseMatrix& r, const DenseMatrix& b, Side side) {
	const std::size_t n = r.rows();
	if (r.cols() != n)
		throw DimensionError("tri_solve_upper: R must be square, got " + shape(r.rows(), r.cols()));
	if ((side == Side::Left && b.rows() != n) || (side == Side::Right && b.cols() != n))
		shape_error("tri_solve_upper", r.rows(), r.cols(), b.rows(), b.cols());

	double dmax = 0.0;
	for (std::size_t i = 0; i < n; ++i)
		dmax = std::max(dmax, std::abs(r(i, i)));
	const double guard = static_cast<double>(n) * kEps * dmax;
	for (std::size_t i = 0; i < n; ++i)
		if (!(std::abs(r(i, i)) >= guard) || r(i, i) == 0.0)
			throw IllConditionedError("tri_solve_upper: |R(" + std::to_string(i) + "," + std::to_string(i) +
			                              ")| is below the conditioning guard n*eps*max|R_ii|",
			                          i);

	DenseMatrix x = b;
	if (side == Side::Left) {
		for (std::size_t c = 0; c < x.cols(); ++c) {
			double* xc = x.col(c).data();
			for (std::size_t i = n; i-- > 0;) {
				xc[i] /= r(i, i);
				const double xi = xc[i];
				const double* ri = r.col(i).data();
				for (std::size_t k = 0; k < i; ++k)
					xc[k] -= ri[k] * xi;
			}
		}
		return x;
	}
	// X R = B, column j of X depends on columns 0..j-1.
	const std::size_t p = x.rows();
	for (std::size_t j = 0; j < n; ++j) {
		double* xj = x.col(j).data();
		for (std::size_t k = 0; k < j; ++k) {
			const double rkj = r(k, j);
			if (rkj == 0.0)
				continue;
			const double* xk = x.col(k).data();
			for (std::size_t i = 0; i < p; ++i)
				xj[i] -= xk[i] * rkj;
		}
		const double d = r(j, j);
		for (std::size_t i = 0; i < p; ++i)
			xj[i] /= d;
	}
	return x;
}

} // namespace lowrank
