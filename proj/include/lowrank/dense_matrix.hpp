#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace lowrank {

/**
 * Real dense matrix with column-major storage.
 *
 * Entry (i, j) lives at data()[i + j * rows()], so every column is a
 * contiguous span. Householder QR and column-block products rely on this.
 */
class DenseMatrix {
public:
	DenseMatrix() = default;
	DenseMatrix(std::size_t rows, std::size_t cols);
	DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major);

	/// Build from nested rows, e.g. {{1, 2}, {3, 4}}. Intended for small literals.
	static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
	static DenseMatrix identity(std::size_t n);
	static DenseMatrix diagonal(std::span<const double> d);

	std::size_t rows() const noexcept { return rows_; }
	std::size_t cols() const noexcept { return cols_; }
	std::size_t size() const noexcept { return data_.size(); }
	bool empty() const noexcept { return data_.empty(); }

	double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i + j * rows_]; }
	double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i + j * rows_]; }

	std::span<double> col(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
	std::span<const double> col(std::size_t j) const noexcept { return {data_.data() + j * rows_, rows_}; }

	std::span<double> data() noexcept { return data_; }
	std::span<const double> data() const noexcept { return data_; }

	/// Copy of columns [first, first + count).
	DenseMatrix col_block(std::size_t first, std::size_t count) const;
	/// Copy of rows [first, first + count).
	DenseMatrix row_block(std::size_t first, std::size_t count) const;
	DenseMatrix transposed() const;

	double frobenius_norm() const;
	bool all_finite() const;

	DenseMatrix& operator+=(const DenseMatrix& other);
	DenseMatrix& operator-=(const DenseMatrix& other);
	DenseMatrix& operator*=(double s);

	friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
	std::size_t rows_ = 0;
	std::size_t cols_ = 0;
	std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(double s, DenseMatrix a);

} // namespace lowrank
