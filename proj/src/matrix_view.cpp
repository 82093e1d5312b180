#include "lowrank/matrix_view.hpp"

#include "lowrank/linalg.hpp"

namespace lowrank {

namespace {

template <class... Ts>
struct overloaded : Ts... {
	using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

std::size_t MatrixView::rows() const noexcept {
	return std::visit([](auto* p) { return p->rows(); }, m_);
}

std::size_t MatrixView::cols() const noexcept {
	return std::visit([](auto* p) { return p->cols(); }, m_);
}

const DenseMatrix* MatrixView::dense() const noexcept {
	auto* p = std::get_if<const DenseMatrix*>(&m_);
	return p ? *p : nullptr;
}

const SparseMatrix* MatrixView::sparse() const noexcept {
	auto* p = std::get_if<const SparseMatrix*>(&m_);
	return p ? *p : nullptr;
}

DenseMatrix MatrixView::times(const DenseMatrix& b) const {
	return std::visit(overloaded{[&](const DenseMatrix* a) { return matmul(*a, b); },
	                             [&](const SparseMatrix* a) { return spmm(*a, b, Side::Left); }},
	                  m_);
}

DenseMatrix MatrixView::transpose_times(const DenseMatrix& b) const {
	return std::visit(overloaded{[&](const DenseMatrix* a) { return matmul_transA(*a, b); },
	                             [&](const SparseMatrix* a) { return spmm_transA(*a, b); }},
	                  m_);
}

double MatrixView::frobenius_norm() const {
	return std::visit([](auto* p) { return p->frobenius_norm(); }, m_);
}

DenseMatrix MatrixView::dense_col_block(std::size_t first, std::size_t count) const {
	return std::visit(overloaded{[&](const DenseMatrix* a) { return a->col_block(first, count); },
	                             [&](const SparseMatrix* a) { return a->dense_col_block(first, count); }},
	                  m_);
}

DenseMatrix MatrixView::to_dense() const {
	return dense_col_block(0, cols());
}

} // namespace lowrank
