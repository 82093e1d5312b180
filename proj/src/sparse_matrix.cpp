#include "lowrank/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lowrank/error.hpp"

namespace lowrank {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
	: rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                           std::vector<std::size_t> col_idx, std::vector<double> values)
	: rows_(rows), cols_(cols), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)), values_(std::move(values)) {
	if (row_ptr_.size() != rows_ + 1 || row_ptr_.front() != 0)
		throw InvalidInputError("SparseMatrix: row_ptr must have rows+1 entries starting at 0");
	if (col_idx_.size() != values_.size() || row_ptr_.back() != values_.size())
		throw InvalidInputError("SparseMatrix: row_ptr end, col_idx and values disagree on nnz");
	for (std::size_t i = 0; i < rows_; ++i) {
		if (row_ptr_[i] > row_ptr_[i + 1])
			throw InvalidInputError("SparseMatrix: row_ptr decreases at row " + std::to_string(i));
		for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
			if (col_idx_[p] >= cols_)
				throw InvalidInputError("SparseMatrix: column index out of range in row " + std::to_string(i));
			if (p > row_ptr_[i] && col_idx_[p] <= col_idx_[p - 1])
				throw InvalidInputError("SparseMatrix: column indices not strictly increasing in row " +
				                        std::to_string(i));
		}
	}
	for (double v : values_)
		if (!std::isfinite(v))
			throw InvalidInputError("SparseMatrix: non-finite value");
}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets) {
	for (const auto& t : triplets)
		if (t.row >= rows || t.col >= cols)
			throw DimensionError("SparseMatrix::from_triplets: entry (" + std::to_string(t.row) + ", " +
			                     std::to_string(t.col) + ") outside " + std::to_string(rows) + "x" +
			                     std::to_string(cols));
	std::sort(triplets.begin(), triplets.end(),
	          [](const Triplet& a, const Triplet& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });

	std::vector<std::size_t> row_ptr(rows + 1, 0);
	std::vector<std::size_t> col_idx;
	std::vector<double> values;
	col_idx.reserve(triplets.size());
	values.reserve(triplets.size());
	for (std::size_t k = 0; k < triplets.size(); ++k) {
		const auto& t = triplets[k];
		if (k > 0 && t.row == triplets[k - 1].row && t.col == triplets[k - 1].col) {
			values.back() += t.value;
			continue;
		}
		col_idx.push_back(t.col);
		values.push_back(t.value);
		++row_ptr[t.row + 1];
	}
	std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
	return SparseMatrix(rows, cols, std::move(row_ptr), std::move(col_idx), std::move(values));
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense) {
	std::vector<std::size_t> row_ptr(dense.rows() + 1, 0);
	std::vector<std::size_t> col_idx;
	std::vector<double> values;
	for (std::size_t i = 0; i < dense.rows(); ++i) {
		for (std::size_t j = 0; j < dense.cols(); ++j) {
			if (dense(i, j) != 0.0) {
				col_idx.push_back(j);
				values.push_back(dense(i, j));
			}
		}
		row_ptr[i + 1] = values.size();
	}
	return SparseMatrix(dense.rows(), dense.cols(), std::move(row_ptr), std::move(col_idx), std::move(values));
}

DenseMatrix SparseMatrix::to_dense() const {
	return dense_col_block(0, cols_);
}

DenseMatrix SparseMatrix::dense_col_block(std::size_t first, std::size_t count) const {
	if (first + count > cols_)
		throw DimensionError("SparseMatrix::dense_col_block: column range outside matrix");
	DenseMatrix out(rows_, count);
	const std::size_t last = first + count;
	for (std::size_t i = 0; i < rows_; ++i) {
		const auto begin = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
		const auto end = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
		for (auto it = std::lower_bound(begin, end, first); it != end && *it < last; ++it)
			out(i, *it - first) = values_[static_cast<std::size_t>(it - col_idx_.begin())];
	}
	return out;
}

SparseMatrix SparseMatrix::transposed() const {
	std::vector<std::size_t> row_ptr(cols_ + 1, 0);
	for (std::size_t c : col_idx_)
		++row_ptr[c + 1];
	std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
	std::vector<std::size_t> next(row_ptr.begin(), row_ptr.end() - 1);
	std::vector<std::size_t> col_idx(nnz());
	std::vector<double> values(nnz());
	for (std::size_t i = 0; i < rows_; ++i) {
		for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
			const std::size_t dst = next[col_idx_[p]]++;
			col_idx[dst] = i;
			values[dst] = values_[p];
		}
	}
	return SparseMatrix(cols_, rows_, std::move(row_ptr), std::move(col_idx), std::move(values));
}

double SparseMatrix::frobenius_norm() const {
	double s = 0.0;
	for (double v : values_)
		s += v * v;
	return std::sqrt(s);
}

} // namespace lowrank
