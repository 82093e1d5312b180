#pragma once

// Reference implementations used only as test oracles. None of them calls into
// the library's numerical kernels.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lowrank/dense_matrix.hpp"

namespace oracle {

using lowrank::DenseMatrix;

inline DenseMatrix gaussian(std::size_t rows, std::size_t cols, unsigned seed) {
	std::mt19937_64 gen(seed);
	std::normal_distribution<double> nd;
	DenseMatrix g(rows, cols);
	for (std::size_t j = 0; j < cols; ++j)
		for (std::size_t i = 0; i < rows; ++i)
			g(i, j) = nd(gen);
	return g;
}

inline DenseMatrix mul(const DenseMatrix& a, const DenseMatrix& b) {
	if (a.cols() != b.rows())
		throw std::invalid_argument("oracle::mul shape mismatch");
	DenseMatrix c(a.rows(), b.cols());
	for (std::size_t i = 0; i < a.rows(); ++i)
		for (std::size_t j = 0; j < b.cols(); ++j) {
			long double s = 0.0L;
			for (std::size_t p = 0; p < a.cols(); ++p)
				s += static_cast<long double>(a(i, p)) * b(p, j);
			c(i, j) = static_cast<double>(s);
		}
	return c;
}

inline DenseMatrix transpose(const DenseMatrix& a) {
	DenseMatrix t(a.cols(), a.rows());
	for (std::size_t i = 0; i < a.rows(); ++i)
		for (std::size_t j = 0; j < a.cols(); ++j)
			t(j, i) = a(i, j);
	return t;
}

inline double frob(const DenseMatrix& a) {
	long double s = 0.0L;
	for (std::size_t j = 0; j < a.cols(); ++j)
		for (std::size_t i = 0; i < a.rows(); ++i)
			s += static_cast<long double>(a(i, j)) * a(i, j);
	return static_cast<double>(std::sqrt(s));
}

inline double diff(const DenseMatrix& a, const DenseMatrix& b) {
	if (a.rows() != b.rows() || a.cols() != b.cols())
		throw std::invalid_argument("oracle::diff shape mismatch");
	long double s = 0.0L;
	for (std::size_t j = 0; j < a.cols(); ++j)
		for (std::size_t i = 0; i < a.rows(); ++i) {
			const long double d = static_cast<long double>(a(i, j)) - b(i, j);
			s += d * d;
		}
	return static_cast<double>(std::sqrt(s));
}

inline double rel_diff(const DenseMatrix& a, const DenseMatrix& b) {
	return diff(a, b) / frob(b);
}

inline DenseMatrix eye(std::size_t n) {
	DenseMatrix e(n, n);
	for (std::size_t i = 0; i < n; ++i)
		e(i, i) = 1.0;
	return e;
}

/// Singular values by one-sided Jacobi rotations, sorted nonincreasing.
inline std::vector<double> singular_values(DenseMatrix a) {
	if (a.rows() < a.cols())
		a = transpose(a);
	const std::size_t n = a.cols();
	for (int sweep = 0; sweep < 60; ++sweep) {
		double off = 0.0;
		for (std::size_t p = 0; p + 1 < n; ++p)
			for (std::size_t q = p + 1; q < n; ++q) {
				double alpha = 0.0, beta = 0.0, gamma = 0.0;
				for (std::size_t i = 0; i < a.rows(); ++i) {
					alpha += a(i, p) * a(i, p);
					beta += a(i, q) * a(i, q);
					gamma += a(i, p) * a(i, q);
				}
				if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta))
					continue;
				off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
				const double zeta = (beta - alpha) / (2.0 * gamma);
				const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
				const double c = 1.0 / std::sqrt(1.0 + t * t);
				const double s = c * t;
				for (std::size_t i = 0; i < a.rows(); ++i) {
					const double x = a(i, p);
					const double y = a(i, q);
					a(i, p) = c * x - s * y;
					a(i, q) = s * x + c * y;
				}
			}
		if (off < 1e-15)
			break;
	}
	std::vector<double> s(n);
	for (std::size_t j = 0; j < n; ++j) {
		double t = 0.0;
		for (std::size_t i = 0; i < a.rows(); ++i)
			t += a(i, j) * a(i, j);
		s[j] = std::sqrt(t);
	}
	std::sort(s.begin(), s.end(), std::greater<>());
	return s;
}

/// Orthonormal DCT-II matrix: F(k, j) = c_k cos(pi (2j + 1) k / (2m)).
inline DenseMatrix dct_matrix(std::size_t m) {
	DenseMatrix f(m, m);
	for (std::size_t k = 0; k < m; ++k) {
		const double c = std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(m));
		for (std::size_t j = 0; j < m; ++j)
			f(k, j) = c * std::cos(std::numbers::pi * (2.0 * static_cast<double>(j) + 1.0) * static_cast<double>(k) /
			                       (2.0 * static_cast<double>(m)));
	}
	return f;
}

/// Minimal coordinate-general Matrix Market reader written independently of the library's parser.
struct MmCoordinate {
	std::size_t rows = 0, cols = 0;
	std::map<std::pair<std::size_t, std::size_t>, double> entries; // 0-based
};

inline MmCoordinate parse_coordinate_general(std::istream& in) {
	MmCoordinate out;
	std::string line;
	std::getline(in, line);
	std::istringstream banner(line);
	std::string tag, object, format, field, symmetry;
	banner >> tag >> object >> format >> field >> symmetry;
	if (tag != "%%MatrixMarket" || format != "coordinate" || symmetry != "general")
		throw std::runtime_error("reference parser: unsupported banner");
	do {
		if (!std::getline(in, line))
			throw std::runtime_error("reference parser: no size line");
	} while (line.empty() || line[0] == '%');
	std::size_t nnz = 0;
	std::istringstream(line) >> out.rows >> out.cols >> nnz;
	for (std::size_t e = 0; e < nnz; ++e) {
		std::size_t i = 0, j = 0;
		double v = 0.0;
		if (!(in >> i >> j >> v))
			throw std::runtime_error("reference parser: truncated");
		out.entries[{i - 1, j - 1}] += v;
	}
	return out;
}

} // namespace oracle
