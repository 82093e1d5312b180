#include "lowrank/dense_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lowrank/error.hpp"

namespace lowrank {

namespace {

std::string shape(const DenseMatrix& a) {
	return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
	if (a.rows() != b.rows() || a.cols() != b.cols())
		throw DimensionError(std::string(op) + ": shape mismatch " + shape(a) + " vs " + shape(b));
}

} // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
	: rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major)
	: rows_(rows), cols_(cols), data_(std::move(column_major)) {
	if (data_.size() != rows * cols)
		throw DimensionError("DenseMatrix: data length " + std::to_string(data_.size()) + " does not match " +
		                     std::to_string(rows) + "x" + std::to_string(cols));
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
	const std::size_t m = rows.size();
	const std::size_t n = m == 0 ? 0 : rows.begin()->size();
	DenseMatrix out(m, n);
	std::size_t i = 0;
	for (const auto& row : rows) {
		if (row.size() != n)
			throw DimensionError("DenseMatrix::from_rows: ragged row " + std::to_string(i));
		std::size_t j = 0;
		for (double v : row)
			out(i, j++) = v;
		++i;
	}
	return out;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
	DenseMatrix out(n, n);
	for (std::size_t i = 0; i < n; ++i)
		out(i, i) = 1.0;
	return out;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
	DenseMatrix out(d.size(), d.size());
	for (std::size_t i = 0; i < d.size(); ++i)
		out(i, i) = d[i];
	return out;
}

DenseMatrix DenseMatrix::col_block(std::size_t first, std::size_t count) const {
	if (first + count > cols_)
		throw DimensionError("col_block: columns [" + std::to_string(first) + ", " + std::to_string(first + count) +
		                     ") outside " + shape(*this));
	DenseMatrix out(rows_, count);
	std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(first * rows_), count * rows_, out.data_.begin());
	return out;
}

DenseMatrix DenseMatrix::row_block(std::size_t first, std::size_t count) const {
	if (first + count > rows_)
		throw DimensionError("row_block: rows [" + std::to_string(first) + ", " + std::to_string(first + count) +
		                     ") outside " + shape(*this));
	DenseMatrix out(count, cols_);
	for (std::size_t j = 0; j < cols_; ++j)
		for (std::size_t i = 0; i < count; ++i)
			out(i, j) = (*this)(first + i, j);
	return out;
}

DenseMatrix DenseMatrix::transposed() const {
	DenseMatrix out(cols_, rows_);
	constexpr std::size_t tile = 32;
	for (std::size_t jj = 0; jj < cols_; jj += tile)
		for (std::size_t ii = 0; ii < rows_; ii += tile)
			for (std::size_t j = jj; j < std::min(cols_, jj + tile); ++j)
				for (std::size_t i = ii; i < std::min(rows_, ii + tile); ++i)
					out(j, i) = (*this)(i, j);
	return out;
}

double DenseMatrix::frobenius_norm() const {
	// Scaled accumulation keeps tiny and huge entries from under/overflowing.
	double scale = 0.0;
	double ssq = 1.0;
	for (double v : data_) {
		if (v == 0.0)
			continue;
		const double a = std::abs(v);
		if (scale < a) {
			ssq = 1.0 + ssq * (scale / a) * (scale / a);
			scale = a;
		} else {
			ssq += (a / scale) * (a / scale);
		}
	}
	return scale * std::sqrt(ssq);
}

bool DenseMatrix::all_finite() const {
	return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
	require_same_shape(*this, other, "operator+=");
	for (std::size_t k = 0; k < data_.size(); ++k)
		data_[k] += other.data_[k];
	return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
	require_same_shape(*this, other, "operator-=");
	for (std::size_t k = 0; k < data_.size(); ++k)
		data_[k] -= other.data_[k];
	return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
	for (double& v : data_)
		v *= s;
	return *this;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
	a += b;
	return a;
}

DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
	a -= b;
	return a;
}

DenseMatrix operator*(double s, DenseMatrix a) {
	a *= s;
	return a;
}

} // namespace lowrank
