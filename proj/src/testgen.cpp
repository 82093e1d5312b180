#include "lowrank/testgen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "lowrank/error.hpp"
#include "lowrank/linalg.hpp"
#include "lowrank/random.hpp"

namespace lowrank {

namespace {

DenseMatrix gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed) {
	Rng rng(seed);
	DenseMatrix g(rows, cols);
	for (double& x : g.data())
		x = rng.normal();
	return g;
}

// (M(:, :k) diag(s)) N(:, :k)^T
DenseMatrix assemble(const DenseMatrix& m, const std::vector<double>& s, const DenseMatrix& n, std::size_t k) {
	DenseMatrix ms = m.col_block(0, k);
	for (std::size_t j = 0; j < k; ++j)
		for (double& x : ms.col(j))
			x *= s[j];
	return matmul_transB(ms, n.col_block(0, k));
}

std::size_t nonzero_count(const std::vector<double>& s) {
	std::size_t k = 0;
	while (k < s.size() && s[k] != 0.0)
		++k;
	return k;
}

std::optional<std::size_t> parse_exact_rank(std::string_view name) {
	constexpr std::string_view prefix = "exact-rank:";
	if (!name.starts_with(prefix))
		return std::nullopt;
	const std::string_view digits = name.substr(prefix.size());
	std::size_t r = 0;
	const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), r);
	if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty() || r == 0)
		return std::nullopt;
	return r;
}

std::optional<SpectrumSpec> named_spectrum(std::string_view name) {
	if (name == "poly-slow")
		return SpectrumSpec::poly_slow();
	if (name == "poly-fast")
		return SpectrumSpec::poly_fast();
	if (name == "exp-slow")
		return SpectrumSpec::exp_slow();
	if (name == "exp-fast")
		return SpectrumSpec::exp_fast();
	if (name == "inv-square")
		return SpectrumSpec::inverse_square();
	if (auto r = parse_exact_rank(name))
		return SpectrumSpec::exact_rank(*r);
	return std::nullopt;
}

} // namespace

std::vector<double> SpectrumSpec::sigma(std::size_t dim) const {
	std::vector<double> s(dim, 0.0);
	for (std::size_t i = 0; i < dim; ++i) {
		const double idx = static_cast<double>(i + 1);
		switch (kind) {
		case SpectrumKind::PolyDecay:
			s[i] = std::pow(idx, -parameter);
			break;
		case SpectrumKind::ExpDecay:
			s[i] = std::pow(10.0, -static_cast<double>(i) * parameter);
			break;
		case SpectrumKind::InverseSquare:
			s[i] = 1.0 / (idx * idx);
			break;
		case SpectrumKind::ExactRank:
			s[i] = idx <= parameter ? 1.0 / idx : 0.0;
			break;
		case SpectrumKind::ExplicitVector:
			s[i] = i < values.size() ? values[i] : 0.0;
			break;
		}
	}
	if (kind == SpectrumKind::PolyDecay && !(parameter > 0.0))
		throw ParameterError("PolyDecay requires p > 0");
	if (kind == SpectrumKind::ExpDecay && !(parameter > 0.0))
		throw ParameterError("ExpDecay requires q > 0");
	for (std::size_t i = 0; i < dim; ++i)
		if (!(s[i] >= 0.0) || (i > 0 && s[i] > s[i - 1]))
			throw ParameterError("spectrum must be nonnegative and nonincreasing");
	return s;
}

SynthResult synth_dense(const SpectrumSpec& spec, std::size_t m, std::uint64_t seed) {
	if (m < 2)
		throw ParameterError("synth_dense requires m >= 2");
	std::vector<double> s = spec.sigma(m);
	const std::size_t k = nonzero_count(s);
	const DenseMatrix left = orth(gaussian(m, m, derive_seed(seed, "M")));
	const DenseMatrix right = orth(gaussian(m, m, derive_seed(seed, "N")));
	return {assemble(left, s, right, k), std::move(s)};
}

SynthResult exact_rank(std::size_t m, std::size_t n, std::size_t rank, std::uint64_t seed) {
	if (rank < 1 || rank > std::min(m, n))
		throw ParameterError("exact_rank requires 1 <= rank <= min(m, n)");
	std::vector<double> s = SpectrumSpec::exact_rank(rank).sigma(std::min(m, n));
	const DenseMatrix left = orth(gaussian(m, rank, derive_seed(seed, "M")));
	const DenseMatrix right = orth(gaussian(n, rank, derive_seed(seed, "N")));
	return {assemble(left, s, right, rank), std::move(s)};
}

DenseMatrix synth_spsd(std::size_t rank, std::size_t m, std::uint64_t seed) {
	if (rank > m)
		throw ParameterError("synth_spsd requires rank <= m");
	const DenseMatrix b = gaussian(m, rank, derive_seed(seed, "B"));
	DenseMatrix a = matmul_transB(b, b);
	for (std::size_t j = 0; j < m; ++j)
		for (std::size_t i = j + 1; i < m; ++i)
			a(i, j) = a(j, i);
	return a;
}

SparseMatrix flat_spectrum_sparse(std::size_t m, double density, std::uint64_t seed) {
	if (!(density > 0.0 && density <= 1.0))
		throw ParameterError("flat_spectrum_sparse requires density in (0, 1]");
	Rng pattern(derive_seed(seed, "pattern"));
	Rng values(derive_seed(seed, "values"));
	std::vector<std::size_t> row_ptr{0};
	std::vector<std::size_t> col_idx;
	std::vector<double> vals;
	col_idx.reserve(static_cast<std::size_t>(density * static_cast<double>(m) * static_cast<double>(m) * 1.1));
	for (std::size_t i = 0; i < m; ++i) {
		for (std::size_t j = 0; j < m; ++j) {
			if (pattern.uniform() < density) {
				col_idx.push_back(j);
				vals.push_back(values.normal());
			}
		}
		row_ptr.push_back(col_idx.size());
	}
	return SparseMatrix(m, m, std::move(row_ptr), std::move(col_idx), std::move(vals));
}

bool is_generator_name(std::string_view name) {
	return name == "flat-sparse" || named_spectrum(name).has_value();
}

GeneratedMatrix generate_named(std::string_view name, std::size_t m, std::uint64_t seed) {
	if (name == "flat-sparse")
		return {flat_spectrum_sparse(m, kDefaultFlatDensity, seed), std::nullopt};
	const auto spec = named_spectrum(name);
	if (!spec)
		throw ParameterError("unknown generator '" + std::string(name) +
		                     "' (expected poly-slow, poly-fast, exp-slow, exp-fast, inv-square, exact-rank:<r>, "
		                     "flat-sparse)");
	if (spec->kind == SpectrumKind::ExactRank && spec->parameter > static_cast<double>(m))
		throw ParameterError("exact-rank generator rank exceeds m");
	SynthResult s = synth_dense(*spec, m, seed);
	return {std::move(s.matrix), std::move(s.sigma)};
}

} // namespace lowrank
