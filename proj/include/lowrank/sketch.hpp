#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lowrank/dense_matrix.hpp"
#include "lowrank/matrix_view.hpp"

namespace lowrank {

enum class SketchKind { Gaussian, SparseSign, Srtt, ColumnSampling };

std::string_view to_string(SketchKind kind);
/// Accepts "gaussian", "sparse-sign", "srtt", "column-sampling".
SketchKind parse_sketch_kind(std::string_view name);

/**
 * Random linear map S in R^{s x m} (s = sketch_dim, m = input_dim).
 *
 * The operator is fully determined by (kind, input_dim, sketch_dim, seed,
 * zeta); the payload is regenerated from those on construction. Generation
 * is per column of S from independent substreams of the seed, so the result
 * does not depend on generation order.
 *
 *  - Gaussian:        entries iid N(0, 1/s), stored densely.
 *  - SparseSign:      each column has exactly zeta entries +-1/sqrt(zeta) at
 *                     distinct uniformly chosen rows.
 *  - Srtt:            sqrt(m/s) * R * F * D with F the orthonormal DCT-II, D a
 *                     random +-1 diagonal and R a uniform s-row restriction.
 *  - ColumnSampling:  R alone (rows of S are distinct unit vectors).
 */
class SketchOperator {
public:
	static SketchOperator gaussian(std::size_t input_dim, std::size_t sketch_dim, std::uint64_t seed);
	/// zeta defaults to min(sketch_dim, 8).
	static SketchOperator sparse_sign(std::size_t input_dim, std::size_t sketch_dim, std::optional<std::size_t> zeta,
	                                  std::uint64_t seed);
	static SketchOperator srtt(std::size_t input_dim, std::size_t sketch_dim, std::uint64_t seed);
	static SketchOperator column_sampling(std::size_t input_dim, std::size_t sketch_dim, std::uint64_t seed);
	static SketchOperator make(SketchKind kind, std::size_t input_dim, std::size_t sketch_dim, std::uint64_t seed);

	SketchKind kind() const noexcept { return kind_; }
	std::size_t input_dim() const noexcept { return input_dim_; }
	std::size_t sketch_dim() const noexcept { return sketch_dim_; }
	std::uint64_t seed() const noexcept { return seed_; }
	/// Nonzeros per column (SparseSign only; 0 otherwise).
	std::size_t zeta() const noexcept { return zeta_; }

	/// Gaussian payload (s x m).
	const DenseMatrix& gaussian_matrix() const noexcept { return dense_; }
	/// SparseSign: rows of the nonzeros of column j are entries [j*zeta, (j+1)*zeta).
	const std::vector<std::size_t>& nonzero_rows() const noexcept { return rows_; }
	const std::vector<double>& nonzero_signs() const noexcept { return signs_; }
	/// Srtt: the diagonal of D.
	const std::vector<double>& diagonal_signs() const noexcept { return signs_; }
	/// Srtt and ColumnSampling: sorted distinct selected indices in [0, m).
	const std::vector<std::size_t>& selected() const noexcept { return rows_; }
	/// Multiplier applied to the +-1 pattern (SparseSign) or transform output (Srtt).
	double scale() const noexcept;

	/// S as an explicit s x m matrix.
	DenseMatrix materialize() const;

	/// S * a, a has input_dim rows.
	DenseMatrix apply_left(const DenseMatrix& a) const;
	DenseMatrix apply_left(const SparseMatrix& a) const;
	/// a * S^T, a has input_dim columns.
	DenseMatrix apply_right(const DenseMatrix& a) const;
	DenseMatrix apply_right(const SparseMatrix& a) const;

	nlohmann::json to_json() const;
	static SketchOperator from_json(const nlohmann::json& j);

private:
	SketchOperator(SketchKind kind, std::size_t input_dim, std::size_t sketch_dim, std::uint64_t seed,
	               std::size_t zeta);

	SketchKind kind_;
	std::size_t input_dim_;
	std::size_t sketch_dim_;
	std::uint64_t seed_;
	std::size_t zeta_ = 0;
	DenseMatrix dense_;
	std::vector<std::size_t> rows_;
	std::vector<double> signs_;
};

/// S * A
DenseMatrix apply_left(const SketchOperator& op, MatrixView a);
/// A * S^T
DenseMatrix apply_right(MatrixView a, const SketchOperator& op);

/// Orthonormal DCT-II of every column of `a`, computed with FFTW.
DenseMatrix dct2_columns(const DenseMatrix& a);

} // namespace lowrank
