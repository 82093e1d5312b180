#include "lowrank/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <unordered_set>

#include <fftw3.h>

#include "lowrank/error.hpp"
#include "lowrank/linalg.hpp"
#include "lowrank/random.hpp"

namespace lowrank {

namespace {

constexpr std::size_t kDefaultZetaCap = 8;
constexpr std::size_t kBlockCols = 256;

void check_dims(std::size_t input_dim, std::size_t sketch_dim, const char* what) {
	if (sketch_dim < 1 || sketch_dim > input_dim)
		throw DimensionError(std::string(what) + ": need 1 <= sketch_dim <= input_dim, got sketch_dim=" +
		                     std::to_string(sketch_dim) + ", input_dim=" + std::to_string(input_dim));
}

// Uniform sample of `count` distinct values from [0, n), sorted.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count, Rng& rng) {
	if (2 * count >= n) {
		// Partial Fisher-Yates over the full index set.
		std::vector<std::size_t> perm(n);
		std::iota(perm.begin(), perm.end(), std::size_t{0});
		for (std::size_t i = 0; i < count; ++i) {
			const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
			std::swap(perm[i], perm[j]);
		}
		perm.resize(count);
		std::sort(perm.begin(), perm.end());
		return perm;
	}
	// Floyd's algorithm: O(count) memory.
	std::unordered_set<std::size_t> chosen;
	chosen.reserve(count * 2);
	std::vector<std::size_t> out;
	out.reserve(count);
	for (std::size_t j = n - count; j < n; ++j) {
		const std::size_t t = static_cast<std::size_t>(rng.below(j + 1));
		const std::size_t pick = chosen.insert(t).second ? t : j;
		if (pick == j)
			chosen.insert(j);
		out.push_back(pick);
	}
	std::sort(out.begin(), out.end());
	return out;
}

std::mutex& fftw_planner_mutex() {
	static std::mutex m;
	return m;
}

struct FftwFree {
	void operator()(double* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<double, FftwFree>;

FftwBuffer fftw_buffer(std::size_t n) {
	auto* p = static_cast<double*>(fftw_malloc(sizeof(double) * std::max<std::size_t>(n, 1)));
	if (!p)
		throw std::bad_alloc();
	return FftwBuffer(p);
}

} // namespace

std::string_view to_string(SketchKind kind) {
	switch (kind) {
	case SketchKind::Gaussian:
		return "gaussian";
	case SketchKind::SparseSign:
		return "sparse-sign";
	case SketchKind::Srtt:
		return "srtt";
	case SketchKind::ColumnSampling:
		return "column-sampling";
	}
	return "unknown";
}

SketchKind parse_sketch_kind(std::string_view name) {
	for (SketchKind k : {SketchKind::Gaussian, SketchKind::SparseSign, SketchKind::Srtt, SketchKind::ColumnSampling})
		if (to_string(k) == name)
			return k;
	throw ParameterError("unknown sketch kind '" + std::string(name) + "'");
}

DenseMatrix dct2_columns(const DenseMatrix& a) {
	const std::size_t m = a.rows();
	const std::size_t p = a.cols();
	DenseMatrix out(m, p);
	if (m == 0 || p == 0)
		return out;
	auto in = fftw_buffer(m * p);
	auto res = fftw_buffer(m * p);
	std::copy(a.data().begin(), a.data().end(), in.get());

	fftw_plan plan;
	{
		std::lock_guard lock(fftw_planner_mutex());
		const int n = static_cast<int>(m);
		const fftw_r2r_kind kind = FFTW_REDFT10;
		plan = fftw_plan_many_r2r(1, &n, static_cast<int>(p), in.get(), nullptr, 1, n, res.get(), nullptr, 1, n, &kind,
		                          FFTW_ESTIMATE);
	}
	fftw_execute(plan);
	{
		std::lock_guard lock(fftw_planner_mutex());
		fftw_destroy_plan(plan);
	}

	// REDFT10 computes 2 * sum_j x_j cos(pi k (j + 1/2) / m); rescale to the orthonormal DCT-II.
	const double c0 = 0.5 * std::sqrt(1.0 / static_cast<double>(m));
	const double ck = 0.5 * std::sqrt(2.0 / static_cast<double>(m));
	double* od = out.data().data();
	const double* rd = res.get();
	for (std::size_t j = 0; j < p; ++j)
		for (std::size_t k = 0; k < m; ++k)
			od[k + j * m] = rd[k + j * m] * (k == 0 ? c0 : ck);
	return out;
}

SketchOperator::SketchOperator(SketchKind kind, std::size_t input_dim, std::size_t sketch_dim, std::uint64_t seed,
                               std::size_t zeta)
	: kind_(kind), input_dim_(input_dim), sketch_dim_(sketch_dim), seed_(seed), zeta_(zeta) {
	const std::size_t m = input_dim;
	const std::size_t s = sketch_dim;
	switch (kind) {
	case SketchKind::Gaussian: {
		dense_ = DenseMatrix(s, m);
		const double sd = 1.0 / std::sqrt(static_cast<double>(s));
		for (std::size_t j = 0; j < m; ++j) {
			Rng rng(derive_seed(seed, j));
			for (double& v : dense_.col(j))
				v = sd * rng.normal();
		}
	} break;
	case SketchKind::SparseSign: {
		rows_.resize(m * zeta);
		signs_.resize(m * zeta);
		for (std::size_t j = 0; j < m; ++j) {
			Rng rng(derive_seed(seed, j));
			const auto picked = sample_without_replacement(s, zeta, rng);
			for (std::size_t t = 0; t < zeta; ++t) {
				rows_[j * zeta + t] = picked[t];
				signs_[j * zeta + t] = rng.sign();
			}
		}
	} break;
	case SketchKind::Srtt: {
		Rng sign_rng(derive_seed(seed, "srtt-signs"));
		signs_.resize(m);
		for (double& v : signs_)
			v = sign_rng.sign();
		Rng row_rng(derive_seed(seed, "srtt-rows"));
		rows_ = sample_without_replacement(m, s, row_rng);
	} break;
	case SketchKind::ColumnSampling: {
		Rng rng(derive_seed(seed, "sample"));
		rows_ = sample_without_replacement(m, s, rng);
	} break;
	}
}

SketchOperator SketchOperator::gaussian(std::size_t input_dim, std::size_t sketch_dim, std::uint64_t seed) {
	check_dims(input_dim, sketch_dim, "gaussian");
	return SketchOperator(SketchKind::Gaussian, input_dim, sketch_dim, seed, 0);
}

SketchOperator SketchOperator::sparse_sign(std::size_t input_dim, std::size_t sketch_dim,
                                           std::optional<std::size_t> zeta, std::uint64_t seed) {
	check_dims(input_dim, sketch_dim, "sparse_sign");
	const std::size_t z = zeta.value_or(std::min(sketch_dim, kDefaultZetaCap));
	if (z < 1 || z > sketch_dim)
		throw ParameterError("sparse_sign: need 1 <= zeta <= sketch_dim, got zeta=" + std::to_string(z) +
		                     ", sketch_dim=" + std::to_string(sketch_dim));
	return SketchOperator(SketchKind::SparseSign, input_dim, sketch_dim, seed, z);
}

SketchOperator SketchOperator::srtt(std::size_t input_dim, std::size_t sketch_dim, std::uint64_t seed) {
	check_dims(input_dim, sketch_dim, "srtt");
	return SketchOperator(SketchKind::Srtt, input_dim, sketch_dim, seed, 0);
}

SketchOperator SketchOperator::column_sampling(std::size_t input_dim, std::size_t sketch_dim, std::uint64_t seed) {
	check_dims(input_dim, sketch_dim, "column_sampling");
	return SketchOperator(SketchKind::ColumnSampling, input_dim, sketch_dim, seed, 0);
}

SketchOperator SketchOperator::make(SketchKind kind, std::size_t input_dim, std::size_t sketch_dim,
                                    std::uint64_t seed) {
	switch (kind) {
	case SketchKind::Gaussian:
		return gaussian(input_dim, sketch_dim, seed);
	case SketchKind::SparseSign:
		return sparse_sign(input_dim, sketch_dim, std::nullopt, seed);
	case SketchKind::Srtt:
		return srtt(input_dim, sketch_dim, seed);
	case SketchKind::ColumnSampling:
		return column_sampling(input_dim, sketch_dim, seed);
	}
	throw ParameterError("SketchOperator::make: invalid kind");
}

double SketchOperator::scale() const noexcept {
	switch (kind_) {
	case SketchKind::SparseSign:
		return 1.0 / std::sqrt(static_cast<double>(zeta_));
	case SketchKind::Srtt:
		return std::sqrt(static_cast<double>(input_dim_) / static_cast<double>(sketch_dim_));
	default:
		return 1.0;
	}
}

DenseMatrix SketchOperator::materialize() const {
	if (kind_ == SketchKind::Gaussian)
		return dense_;
	return apply_left(DenseMatrix::identity(input_dim_));
}

DenseMatrix SketchOperator::apply_left(const DenseMatrix& a) const {
	if (a.rows() != input_dim_)
		throw DimensionError("sketch apply_left: operator expects " + std::to_string(input_dim_) +
		                     " rows, matrix has " + std::to_string(a.rows()));
	const std::size_t s = sketch_dim_;
	const std::size_t p = a.cols();
	switch (kind_) {
	case SketchKind::Gaussian:
		return matmul(dense_, a);
	case SketchKind::SparseSign: {
		DenseMatrix out(s, p);
		const double sc = scale();
		for (std::size_t c = 0; c < p; ++c) {
			const double* ac = a.col(c).data();
			double* oc = out.col(c).data();
			for (std::size_t j = 0; j < input_dim_; ++j) {
				const double x = ac[j];
				if (x == 0.0)
					continue;
				for (std::size_t t = 0; t < zeta_; ++t)
					oc[rows_[j * zeta_ + t]] += signs_[j * zeta_ + t] * x;
			}
			for (double& v : out.col(c))
				v *= sc;
		}
		return out;
	}
	case SketchKind::Srtt: {
		DenseMatrix signed_a = a;
		for (std::size_t c = 0; c < p; ++c) {
			double* col = signed_a.col(c).data();
			for (std::size_t i = 0; i < input_dim_; ++i)
				col[i] *= signs_[i];
		}
		const DenseMatrix transformed = dct2_columns(signed_a);
		DenseMatrix out(s, p);
		const double sc = scale();
		for (std::size_t c = 0; c < p; ++c)
			for (std::size_t i = 0; i < s; ++i)
				out(i, c) = sc * transformed(rows_[i], c);
		return out;
	}
	case SketchKind::ColumnSampling: {
		DenseMatrix out(s, p);
		for (std::size_t c = 0; c < p; ++c)
			for (std::size_t i = 0; i < s; ++i)
				out(i, c) = a(rows_[i], c);
		return out;
	}
	}
	throw ParameterError("apply_left: invalid sketch kind");
}

DenseMatrix SketchOperator::apply_left(const SparseMatrix& a) const {
	if (a.rows() != input_dim_)
		throw DimensionError("sketch apply_left: operator expects " + std::to_string(input_dim_) +
		                     " rows, matrix has " + std::to_string(a.rows()));
	const std::size_t s = sketch_dim_;
	const std::size_t p = a.cols();
	const auto rp = a.row_ptr();
	const auto ci = a.col_idx();
	const auto vals = a.values();
	switch (kind_) {
	case SketchKind::Gaussian:
		// S A = (A^T S^T)^T
		return spmm_transA(a, dense_.transposed()).transposed();
	case SketchKind::SparseSign: {
		DenseMatrix out(s, p);
		const double sc = scale();
		for (std::size_t j = 0; j < input_dim_; ++j)
			for (std::size_t q = rp[j]; q < rp[j + 1]; ++q)
				for (std::size_t t = 0; t < zeta_; ++t)
					out(rows_[j * zeta_ + t], ci[q]) += signs_[j * zeta_ + t] * vals[q];
		out *= sc;
		return out;
	}
	case SketchKind::ColumnSampling: {
		DenseMatrix out(s, p);
		for (std::size_t i = 0; i < s; ++i)
			for (std::size_t q = rp[rows_[i]]; q < rp[rows_[i] + 1]; ++q)
				out(i, ci[q]) = vals[q];
		return out;
	}
	case SketchKind::Srtt: {
		// Transform column blocks of A so that neither A nor F is ever dense in full.
		DenseMatrix out(s, p);
		for (std::size_t first = 0; first < p; first += kBlockCols) {
			const std::size_t count = std::min(kBlockCols, p - first);
			const DenseMatrix block = apply_left(a.dense_col_block(first, count));
			for (std::size_t c = 0; c < count; ++c)
				std::copy(block.col(c).begin(), block.col(c).end(), out.col(first + c).begin());
		}
		return out;
	}
	}
	throw ParameterError("apply_left: invalid sketch kind");
}

DenseMatrix SketchOperator::apply_right(const DenseMatrix& a) const {
	if (a.cols() != input_dim_)
		throw DimensionError("sketch apply_right: operator expects " + std::to_string(input_dim_) +
		                     " columns, matrix has " + std::to_string(a.cols()));
	const std::size_t s = sketch_dim_;
	const std::size_t p = a.rows();
	switch (kind_) {
	case SketchKind::Gaussian:
		return matmul_transB(a, dense_);
	case SketchKind::SparseSign: {
		DenseMatrix out(p, s);
		const double sc = scale();
		for (std::size_t j = 0; j < input_dim_; ++j) {
			const double* aj = a.col(j).data();
			for (std::size_t t = 0; t < zeta_; ++t) {
				double* oc = out.col(rows_[j * zeta_ + t]).data();
				const double w = sc * signs_[j * zeta_ + t];
				for (std::size_t i = 0; i < p; ++i)
					oc[i] += w * aj[i];
			}
		}
		return out;
	}
	case SketchKind::Srtt:
		return apply_left(a.transposed()).transposed();
	case SketchKind::ColumnSampling: {
		DenseMatrix out(p, s);
		for (std::size_t i = 0; i < s; ++i)
			std::copy(a.col(rows_[i]).begin(), a.col(rows_[i]).end(), out.col(i).begin());
		return out;
	}
	}
	throw ParameterError("apply_right: invalid sketch kind");
}

DenseMatrix SketchOperator::apply_right(const SparseMatrix& a) const {
	if (a.cols() != input_dim_)
		throw DimensionError("sketch apply_right: operator expects " + std::to_string(input_dim_) +
		                     " columns, matrix has " + std::to_string(a.cols()));
	const std::size_t s = sketch_dim_;
	const std::size_t p = a.rows();
	const auto rp = a.row_ptr();
	const auto ci = a.col_idx();
	const auto vals = a.values();
	switch (kind_) {
	case SketchKind::Gaussian:
		return spmm(a, dense_.transposed(), Side::Left);
	case SketchKind::SparseSign: {
		DenseMatrix out(p, s);
		const double sc = scale();
		for (std::size_t i = 0; i < p; ++i)
			for (std::size_t q = rp[i]; q < rp[i + 1]; ++q) {
				const std::size_t j = ci[q];
				for (std::size_t t = 0; t < zeta_; ++t)
					out(i, rows_[j * zeta_ + t]) += sc * signs_[j * zeta_ + t] * vals[q];
			}
		return out;
	}
	case SketchKind::Srtt:
		return apply_left(a.transposed()).transposed();
	case SketchKind::ColumnSampling: {
		DenseMatrix out(p, s);
		for (std::size_t i = 0; i < s; ++i) {
			const DenseMatrix column = a.dense_col_block(rows_[i], 1);
			std::copy(column.col(0).begin(), column.col(0).end(), out.col(i).begin());
		}
		return out;
	}
	}
	throw ParameterError("apply_right: invalid sketch kind");
}

nlohmann::json SketchOperator::to_json() const {
	nlohmann::json j{{"kind", std::string(to_string(kind_))},
	                 {"input_dim", input_dim_},
	                 {"sketch_dim", sketch_dim_},
	                 {"seed", seed_}};
	if (kind_ == SketchKind::SparseSign)
		j["zeta"] = zeta_;
	return j;
}

SketchOperator SketchOperator::from_json(const nlohmann::json& j) {
	try {
		const SketchKind kind = parse_sketch_kind(j.at("kind").get<std::string>());
		const auto m = j.at("input_dim").get<std::size_t>();
		const auto s = j.at("sketch_dim").get<std::size_t>();
		const auto seed = j.at("seed").get<std::uint64_t>();
		if (kind == SketchKind::SparseSign) {
			std::optional<std::size_t> zeta;
			if (j.contains("zeta"))
				zeta = j.at("zeta").get<std::size_t>();
			return sparse_sign(m, s, zeta, seed);
		}
		return make(kind, m, s, seed);
	} catch (const nlohmann::json::exception& e) {
		throw ParameterError(std::string("sketch descriptor: ") + e.what());
	}
}

DenseMatrix apply_left(const SketchOperator& op, MatrixView a) {
	if (const auto* d = a.dense())
		return op.apply_left(*d);
	return op.apply_left(*a.sparse());
}

DenseMatrix apply_right(MatrixView a, const SketchOperator& op) {
	if (const auto* d = a.dense())
		return op.apply_right(*d);
	return op.apply_right(*a.sparse());
}

} // namespace lowrank
