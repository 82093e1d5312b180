#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lowrank/dense_matrix.hpp"
#include "lowrank/sparse_matrix.hpp"

namespace lowrank {

enum class SpectrumKind { PolyDecay, ExpDecay, InverseSquare, ExplicitVector, ExactRank };

/**
 * Prescribed singular values for a synthetic matrix.
 *
 *  PolyDecay(p):    sigma_i = i^{-p}
 *  ExpDecay(q):     sigma_i = 10^{-(i-1) q}
 *  InverseSquare:   sigma_i = 1 / i^2
 *  ExactRank(r):    sigma_i = 1 / i for i <= r, zero afterwards
 *  ExplicitVector:  caller-supplied values, padded with zeros to the matrix size
 */
struct SpectrumSpec {
	SpectrumKind kind = SpectrumKind::PolyDecay;
	double parameter = 1.0;      ///< p, q, or the rank for ExactRank
	std::vector<double> values;  ///< ExplicitVector only

	static SpectrumSpec poly_decay(double p) { return {SpectrumKind::PolyDecay, p, {}}; }
	static SpectrumSpec exp_decay(double q) { return {SpectrumKind::ExpDecay, q, {}}; }
	static SpectrumSpec poly_slow() { return poly_decay(1.0); }
	static SpectrumSpec poly_fast() { return poly_decay(2.0); }
	static SpectrumSpec exp_slow() { return exp_decay(0.125); }
	static SpectrumSpec exp_fast() { return exp_decay(0.25); }
	static SpectrumSpec inverse_square() { return {SpectrumKind::InverseSquare, 2.0, {}}; }
	static SpectrumSpec exact_rank(std::size_t r) { return {SpectrumKind::ExactRank, static_cast<double>(r), {}}; }
	static SpectrumSpec explicit_vector(std::vector<double> v) { return {SpectrumKind::ExplicitVector, 0.0, std::move(v)}; }

	/// The first `dim` singular values, nonincreasing.
	std::vector<double> sigma(std::size_t dim) const;
};

struct SynthResult {
	DenseMatrix matrix;
	std::vector<double> sigma; ///< exact singular values of `matrix` (up to roundoff)
};

/// A = M diag(sigma) N^T with M, N the Q factors of independent square Gaussian draws.
SynthResult synth_dense(const SpectrumSpec& spec, std::size_t m, std::uint64_t seed);

/// Rectangular m x n matrix of exact rank `rank` with sigma_i = 1/i, built from thin orthonormal factors.
SynthResult exact_rank(std::size_t m, std::size_t n, std::size_t rank, std::uint64_t seed);

/// B B^T with B an m x rank Gaussian draw; exactly symmetric.
DenseMatrix synth_spsd(std::size_t rank, std::size_t m, std::uint64_t seed);

/// Square nonsymmetric sparse matrix: Bernoulli(density) pattern, N(0,1) values. Its spectrum is flat.
SparseMatrix flat_spectrum_sparse(std::size_t m, double density, std::uint64_t seed);

inline constexpr double kDefaultFlatDensity = 0.05;

/// A matrix addressed by name, with its spectrum when that is known exactly.
struct GeneratedMatrix {
	std::variant<DenseMatrix, SparseMatrix> matrix;
	std::optional<std::vector<double>> sigma;
};

/// True for "poly-slow", "poly-fast", "exp-slow", "exp-fast", "inv-square", "exact-rank:<r>", "flat-sparse".
bool is_generator_name(std::string_view name);

/// Build the named generator at size m x m. Unknown names throw ParameterError.
GeneratedMatrix generate_named(std::string_view name, std::size_t m, std::uint64_t seed);

} // namespace lowrank
