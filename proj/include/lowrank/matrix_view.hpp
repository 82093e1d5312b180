#pragma once

#include <cstddef>
#include <variant>

#include "lowrank/dense_matrix.hpp"
#include "lowrank/sparse_matrix.hpp"

namespace lowrank {

/**
 * Non-owning, read-only handle to either a dense or a CSR matrix.
 *
 * Approximation schemes only need A*B, A^T*B and norms, so they take a
 * MatrixView and never care which storage backs the input. The viewed
 * matrix must outlive the view.
 */
class MatrixView {
public:
	MatrixView(const DenseMatrix& a) noexcept : m_(&a) {}  // NOLINT(google-explicit-constructor)
	MatrixView(const SparseMatrix& a) noexcept : m_(&a) {} // NOLINT(google-explicit-constructor)

	std::size_t rows() const noexcept;
	std::size_t cols() const noexcept;
	bool is_sparse() const noexcept { return std::holds_alternative<const SparseMatrix*>(m_); }

	const DenseMatrix* dense() const noexcept;
	const SparseMatrix* sparse() const noexcept;

	/// A * b
	DenseMatrix times(const DenseMatrix& b) const;
	/// A^T * b
	DenseMatrix transpose_times(const DenseMatrix& b) const;
	double frobenius_norm() const;
	/// Dense copy of columns [first, first + count).
	DenseMatrix dense_col_block(std::size_t first, std::size_t count) const;
	DenseMatrix to_dense() const;

private:
	std::variant<const DenseMatrix*, const SparseMatrix*> m_;
};

} // namespace lowrank
