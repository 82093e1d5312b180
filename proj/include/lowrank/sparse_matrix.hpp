#pragma once

#include <cstddef>
#include <span>
#include <tuple>
#include <vector>

#include "lowrank/dense_matrix.hpp"

namespace lowrank {

struct Triplet {
	std::size_t row;
	std::size_t col;
	double value;
};

/**
 * Compressed sparse row matrix.
 *
 * Invariants: row_ptr has rows()+1 monotone entries ending at nnz(); column
 * indices within a row are strictly increasing and below cols().
 */
class SparseMatrix {
public:
	SparseMatrix() : row_ptr_(1, 0) {}
	SparseMatrix(std::size_t rows, std::size_t cols);

	/// Validating constructor; throws InvalidInputError if the CSR invariants do not hold.
	SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
	             std::vector<std::size_t> col_idx, std::vector<double> values);

	/// Assemble from unordered triplets; duplicates are summed.
	static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);
	/// Keeps every entry of `dense` that is not exactly zero.
	static SparseMatrix from_dense(const DenseMatrix& dense);

	std::size_t rows() const noexcept { return rows_; }
	std::size_t cols() const noexcept { return cols_; }
	std::size_t nnz() const noexcept { return values_.size(); }

	std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
	std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
	std::span<const double> values() const noexcept { return values_; }

	DenseMatrix to_dense() const;
	/// Dense copy of columns [first, first + count) without densifying the rest.
	DenseMatrix dense_col_block(std::size_t first, std::size_t count) const;
	SparseMatrix transposed() const;
	double frobenius_norm() const;

	friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
	std::size_t rows_ = 0;
	std::size_t cols_ = 0;
	std::vector<std::size_t> row_ptr_;
	std::vector<std::size_t> col_idx_;
	std::vector<double> values_;
};

} // namespace lowrank
