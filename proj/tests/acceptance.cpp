// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "lowrank/approx.hpp"
#include "lowrank/bench.hpp"
#include "lowrank/bounds.hpp"
#include "lowrank/error.hpp"
#include "lowrank/linalg.hpp"
#include "lowrank/mmio.hpp"
#include "lowrank/random.hpp"
#include "lowrank/sketch.hpp"
#include "lowrank/testgen.hpp"
#include "mm_corpus.hpp"
#include "oracles.hpp"

using namespace lowrank;

namespace {

struct Outcome {
	bool pass = true;
	std::string detail;
};

// Appends a formatted note and records failure when `ok` is false.
void note(Outcome& o, bool ok, const char* fmt, auto... args) {
	char buf[512];
	std::snprintf(buf, sizeof buf, fmt, args...);
	if (!o.detail.empty())
		o.detail += "; ";
	if (!ok)
		o.detail += "VIOLATED ";
	o.detail += buf;
	o.pass = o.pass && ok;
}

ApproxConfig cfg(std::size_t r, std::uint64_t seed) {
	ApproxConfig c;
	c.rank = r;
	c.seed = seed;
	return c;
}

constexpr std::size_t kTrials = 20;
constexpr std::size_t kGateK = 10;
const std::size_t kGateRanks[] = {21, 30, 40};

struct GateMatrix {
	const char* name;
	SynthResult g;
};

const std::vector<GateMatrix>& gate_matrices() {
	static const std::vector<GateMatrix> mats = {
		{"poly-fast", synth_dense(SpectrumSpec::poly_fast(), 500, derive_seed(kDefaultSeed, "poly-fast"))},
		{"exp-fast", synth_dense(SpectrumSpec::exp_fast(), 500, derive_seed(kDefaultSeed, "exp-fast"))},
	};
	return mats;
}

double mean_abs_error(Scheme scheme, const DenseMatrix& a, std::size_t r) {
	const double anorm = a.frobenius_norm();
	double mean = 0.0;
	for (std::size_t t = 0; t < kTrials; ++t)
		mean += relative_error(a, approximate(scheme, a, cfg(r, trial_seed(kDefaultSeed, t)))) * anorm;
	return mean / static_cast<double>(kTrials);
}

// ---------------------------------------------------------------- 1

Outcome exact_rank_recovery() {
	Outcome o;
	const auto start = std::chrono::steady_clock::now();
	std::mt19937_64 gen(1);
	const Scheme schemes[] = {Scheme::Rsvd, Scheme::Gn, Scheme::GnStabilized, Scheme::GnRc, Scheme::GnC};
	double worst = 0.0;
	std::string worst_cell = "-";
	for (std::size_t inst = 0; inst < 50; ++inst) {
		const std::size_t r = 3 + gen() % 23;
		const std::size_t m = 50 + gen() % 351, n = 50 + gen() % 351;
		const SynthResult g = exact_rank(m, n, r, derive_seed(1, inst));
		for (Scheme s : schemes) {
			const double e = relative_error(g.matrix, approximate(s, g.matrix, cfg(r, inst)));
			if (e > worst) {
				worst = e;
				worst_cell = std::string(to_string(s)) + " " + std::to_string(m) + "x" + std::to_string(n) +
				             " r=" + std::to_string(r);
			}
		}
	}
	const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	note(o, worst <= 1e-10, "worst rel_err %.2e (%s) over 50 instances x 5 schemes", worst, worst_cell.c_str());
	note(o, seconds <= 60.0, "%.1f s", seconds);
	return o;
}

// ---------------------------------------------------------------- 2-4

Outcome frobenius_gate(Scheme scheme) {
	Outcome o;
	for (const GateMatrix& gm : gate_matrices()) {
		const SpectrumTail tail(gm.g.sigma, kGateK);
		for (std::size_t r : kGateRanks) {
			double bound = 0.0;
			switch (scheme) {
			case Scheme::Rsvd:
				bound = bound_rsvd_frob(tail, r);
				break;
			case Scheme::Gn:
				bound = bound_gn_frob(tail, r, (r + 1) / 2);
				break;
			default:
				bound = bound_gnc_frob(tail, r);
				break;
			}
			const double mean = mean_abs_error(scheme, gm.g.matrix, r);
			note(o, mean <= 1.05 * bound, "%s r=%zu mean/bound %.3f", gm.name, r, mean / bound);
		}
	}
	return o;
}

Outcome gnc_gate() {
	Outcome o = frobenius_gate(Scheme::GnC);
	for (const GateMatrix& gm : gate_matrices()) {
		const std::size_t r = 30;
		const double bound = bound_gnc_spec(SpectrumTail(gm.g.sigma, kGateK), r);
		double mean = 0.0;
		for (std::size_t t = 0; t < kTrials; ++t) {
			const LowRankFactors f = gn_c(gm.g.matrix, cfg(r, trial_seed(kDefaultSeed, t)));
			mean += spectral_error(gm.g.matrix, f) / static_cast<double>(kTrials);
		}
		note(o, mean <= 1.05 * bound, "%s spectral r=30 mean %.3e bound %.3e", gm.name, mean, bound);
	}
	return o;
}

// ---------------------------------------------------------------- 5

Outcome ordering() {
	Outcome o;
	const SynthResult g = synth_dense(SpectrumSpec::poly_slow(), 1000, derive_seed(kDefaultSeed, "poly-slow"));
	for (std::size_t r : {20u, 40u, 60u}) {
		double gnc = 0.0, rs = 0.0, gn_ = 0.0;
		for (std::size_t t = 0; t < kTrials; ++t) {
			const ApproxConfig c = cfg(r, trial_seed(kDefaultSeed, t));
			gnc += relative_error(g.matrix, gn_c(g.matrix, c));
			rs += relative_error(g.matrix, rsvd(g.matrix, c));
			gn_ += relative_error(g.matrix, gn(g.matrix, c));
		}
		gnc /= kTrials;
		rs /= kTrials;
		gn_ /= kTrials;
		note(o, gnc <= rs, "r=%zu gn-c %.4f <= rsvd %.4f", r, gnc, rs);
		if (rs > gn_)
			std::printf("WARN criterion 5: r=%zu rsvd %.4f exceeds gn %.4f (soft gate)\n", r, rs, gn_);
		else
			note(o, true, "rsvd <= gn %.4f", gn_);
	}
	return o;
}

// ---------------------------------------------------------------- 6

Outcome nystrom_truncation() {
	Outcome o;
	std::size_t held = 0;
	double worst_ratio = 0.0;
	for (std::size_t inst = 0; inst < 20; ++inst) {
		const DenseMatrix a = synth_spsd(300, 300, derive_seed(6, inst));
		const auto omega = SketchOperator::gaussian(300, 30, derive_seed(60, inst));
		const double full =
			relative_error(a, nystrom_spsd(a, omega, NystromTruncation::FullK, 10));
		const double core =
			relative_error(a, nystrom_spsd(a, omega, NystromTruncation::CoreK, 10));
		held += full <= core;
		worst_ratio = std::max(worst_ratio, full / core);
	}
	note(o, held == 20, "%zu/20 instances, max full/core ratio %.4f", held, worst_ratio);
	return o;
}

// ---------------------------------------------------------------- 7

double spectral_norm(const DenseMatrix& a) {
	return oracle::singular_values(a).front();
}

Outcome projector_suite() {
	Outcome o;
	constexpr std::size_t kInstances = 100;
	std::size_t idem = 0, orth_ok = 0, annih = 0, eq10 = 0, gnc = 0, oblique_norm = 0, oblique_cases = 0;
	for (std::size_t inst = 0; inst < kInstances; ++inst) {
		const unsigned s = static_cast<unsigned>(inst);
		// Idempotence and property i on oblique P, property iii on orthogonal P.
		const DenseMatrix x = oracle::gaussian(14, 4, 1000 + s);
		const DenseMatrix y = oracle::gaussian(14, 4, 2000 + s);
		const DenseMatrix p =
			oracle::mul(oracle::mul(x, pinv_eps(oracle::mul(oracle::transpose(y), x), 0.0)), oracle::transpose(y));
		idem += oracle::diff(oracle::mul(p, p), p) <= 1e-10 * oracle::frob(p);
		const double np = spectral_norm(p);
		if (np > 1.0 + 1e-6) {
			++oblique_cases;
			oblique_norm += std::abs(spectral_norm(oracle::eye(14) - p) - np) <= 1e-8 * np;
		}
		const DenseMatrix q =
			oracle::mul(oracle::mul(x, pinv_eps(oracle::mul(oracle::transpose(x), x), 0.0)), oracle::transpose(x));
		orth_ok += oracle::diff(q, oracle::transpose(q)) <= 1e-10 && std::abs(spectral_norm(q) - 1.0) <= 1e-8;

		// Annihilation and the GN fixed-point identity.
		const DenseMatrix a = synth_dense(SpectrumSpec::poly_slow(), 24, 3000 + s).matrix;
		const auto xo = SketchOperator::gaussian(24, 5, 4000 + s);
		const auto yo = SketchOperator::gaussian(24, 8, 5000 + s);
		const DenseMatrix xs = oracle::transpose(xo.materialize());
		const DenseMatrix yt = yo.materialize();
		const DenseMatrix ax = oracle::mul(a, xs);
		const DenseMatrix core_pinv = pinv_eps(oracle::mul(yt, ax), 0.0);
		const DenseMatrix p_left = oracle::mul(oracle::mul(ax, core_pinv), yt);
		const DenseMatrix p_right = oracle::mul(oracle::mul(xs, core_pinv), oracle::mul(yt, a));
		annih += oracle::frob(oracle::mul(oracle::eye(24) - p_left, ax)) <= 1e-10 * oracle::frob(ax);
		const DenseMatrix factored = gn_with_sketches(a, xo, yo).materialize();
		eq10 += oracle::rel_diff(oracle::mul(p_left, a), factored) <= 1e-9 &&
		        oracle::rel_diff(oracle::mul(a, p_right), factored) <= 1e-9 &&
		        oracle::rel_diff(oracle::mul(oracle::mul(p_left, a), p_right), factored) <= 1e-9;

		// GN-c equals A Qh Qh^T.
		const ApproxConfig c = cfg(6, inst);
		const auto x1 = SketchOperator::make(c.sketch_kind, 24, 6, column_sketch_seed(c.seed));
		const DenseMatrix q1 = orth(oracle::mul(a, oracle::transpose(x1.materialize())));
		const DenseMatrix qh = orth(oracle::mul(oracle::transpose(a), q1));
		gnc += oracle::rel_diff(gn_c(a, c).materialize(), oracle::mul(oracle::mul(a, qh), oracle::transpose(qh))) <=
		       1e-10;
	}
	note(o, idem == kInstances, "idempotence %zu/%zu", idem, kInstances);
	note(o, oblique_norm == oblique_cases && oblique_cases > 0, "||I-P||=||P|| %zu/%zu", oblique_norm, oblique_cases);
	note(o, orth_ok == kInstances, "orthogonal P %zu/%zu", orth_ok, kInstances);
	note(o, annih == kInstances, "annihilation %zu/%zu", annih, kInstances);
	note(o, eq10 == kInstances, "fixed-point identity %zu/%zu", eq10, kInstances);
	note(o, gnc == kInstances, "GN-c projector %zu/%zu", gnc, kInstances);
	return o;
}

// ---------------------------------------------------------------- 8

Outcome sketch_suite() {
	Outcome o;
	{
		DenseMatrix x(1000, 1);
		for (std::size_t i = 0; i < 1000; ++i)
			x(i, 0) = std::sin(static_cast<double>(i) + 1.0);
		x *= 1.0 / x.frobenius_norm();
		double mean = 0.0;
		for (std::uint64_t seed = 0; seed < 500; ++seed) {
			const double n = SketchOperator::gaussian(1000, 50, seed).apply_left(x).frobenius_norm();
			mean += n * n / 500.0;
		}
		note(o, std::abs(mean - 1.0) <= 0.1, "Gaussian mean ||Sx||^2 = %.4f", mean);
	}
	{
		const auto op = SketchOperator::gaussian(200, 100, 11);
		const std::vector<double> s = oracle::singular_values(std::sqrt(100.0) * op.gaussian_matrix());
		const double lo = std::sqrt(200.0) - std::sqrt(100.0), hi = std::sqrt(200.0) + std::sqrt(100.0);
		note(o, s.back() >= 0.95 * lo && s.front() <= 1.05 * hi, "MP [%.2f, %.2f] vs [%.2f, %.2f]", s.back(),
		     s.front(), lo, hi);
	}
	{
		const auto op = SketchOperator::srtt(64, 20, 21);
		const DenseMatrix f = oracle::dct_matrix(64);
		DenseMatrix s(20, 64);
		for (std::size_t r = 0; r < 20; ++r)
			for (std::size_t j = 0; j < 64; ++j)
				s(r, j) = op.scale() * f(op.selected()[r], j) * op.diagonal_signs()[j];
		const DenseMatrix a = oracle::gaussian(64, 9, 22);
		const double err = oracle::diff(op.apply_left(a), oracle::mul(s, a)) / oracle::frob(a);
		note(o, err <= 1e-12, "SRTT fast vs dense %.2e", err);
	}
	{
		const auto op = SketchOperator::sparse_sign(2000, 40, std::nullopt, 16);
		const DenseMatrix s = op.materialize();
		std::size_t exact = 0;
		for (std::size_t j = 0; j < s.cols(); ++j) {
			std::size_t nz = 0;
			bool magnitudes = true;
			for (double v : s.col(j)) {
				if (v != 0.0) {
					++nz;
					magnitudes = magnitudes && std::abs(v) == op.scale();
				}
			}
			exact += nz == op.zeta() && magnitudes;
		}
		note(o, exact == s.cols(), "sparse-sign columns with exactly zeta=%zu entries of equal magnitude %zu/%zu",
		     op.zeta(), exact, s.cols());
	}
	return o;
}

// ---------------------------------------------------------------- 9

Outcome io_suite() {
	Outcome o;
	{
		std::mt19937_64 gen(9);
		std::normal_distribution<double> n(0.0, 1.0);
		std::uniform_real_distribution<double> u(0.0, 1.0);
		std::size_t exact = 0;
		for (std::size_t inst = 0; inst < 20; ++inst) {
			std::vector<Triplet> t;
			for (std::size_t i = 0; i < 40; ++i)
				for (std::size_t j = 0; j < 30; ++j)
					if (u(gen) < 0.1)
						t.push_back({i, j, n(gen) * std::pow(10.0, 40.0 * u(gen) - 20.0)});
			const SparseMatrix a = SparseMatrix::from_triplets(40, 30, t);
			std::stringstream s;
			write_matrix_market(s, a);
			const SparseMatrix b = std::get<SparseMatrix>(read_matrix_market(s));
			exact += std::ranges::equal(a.row_ptr(), b.row_ptr()) && std::ranges::equal(a.col_idx(), b.col_idx()) &&
			         std::ranges::equal(a.values(), b.values());
		}
		note(o, exact == 20, "MM round-trip bit-exact %zu/20", exact);
	}
	{
		const auto corpus = mm_corpus::malformed();
		std::size_t rejected = 0;
		for (const auto& c : corpus) {
			std::istringstream in(c.text);
			try {
				(void)read_matrix_market(in);
			} catch (const ParseError&) {
				++rejected;
			}
		}
		note(o, rejected == corpus.size() && corpus.size() >= 10, "malformed rejected %zu/%zu", rejected,
		     corpus.size());
	}
	{
		SweepConfig c;
		c.matrix_source = "poly-fast";
		c.m = 80;
		c.schemes = {Scheme::Rsvd, Scheme::Gn, Scheme::GnC};
		c.ranks = {12, 20};
		c.trials = 3;
		c.k_for_bounds = 5;
		const auto reports = run_sweep(c);
		std::stringstream s;
		emit_csv(s, reports);
		const auto back = parse_csv(s);
		bool same = back.size() == reports.size();
		for (std::size_t i = 0; same && i < back.size(); ++i)
			same = back[i].scheme == reports[i].scheme && back[i].r == reports[i].r && back[i].l == reports[i].l &&
			       back[i].trial == reports[i].trial && back[i].seed == reports[i].seed &&
			       back[i].rel_err_frob == reports[i].rel_err_frob &&
			       back[i].elapsed_seconds == reports[i].elapsed_seconds && back[i].rank_used == reports[i].rank_used &&
			       back[i].bound_frob == reports[i].bound_frob && back[i].bound_satisfied == reports[i].bound_satisfied;
		note(o, same, "CSV parse-back exact on %zu rows", reports.size());
	}
	return o;
}

// ---------------------------------------------------------------- 10

std::string csv_without_timing(const SweepConfig& c) {
	std::ostringstream s;
	emit_csv(s, run_sweep(c));
	std::istringstream in(s.str());
	std::string out, line;
	while (std::getline(in, line)) {
		std::size_t start = 0;
		for (int comma = 0; comma < 6; ++comma)
			start = line.find(',', start) + 1;
		const std::size_t end = line.find(',', start);
		out += line.substr(0, start) + line.substr(end) + "\n";
	}
	return out;
}

Outcome determinism() {
	Outcome o;
	for (const char* source : {"poly-slow", "flat-sparse"}) {
		SweepConfig c;
		c.matrix_source = source;
		c.m = 150;
		c.schemes = {Scheme::Rsvd, Scheme::Gn, Scheme::GnStabilized, Scheme::GnRc, Scheme::GnC};
		c.ranks = {10, 20};
		c.trials = 3;
		c.k_for_bounds = 5;
		for (SketchKind k : {SketchKind::Gaussian, SketchKind::SparseSign, SketchKind::Srtt}) {
			c.sketch_kind = k;
			const bool same = csv_without_timing(c) == csv_without_timing(c);
			note(o, same, "%s/%s identical", source, std::string(to_string(k)).c_str());
		}
	}
	return o;
}

} // namespace

int main() {
	struct Criterion {
		int id;
		const char* title;
		std::function<Outcome()> run;
	};
	const std::vector<Criterion> criteria = {
		{1, "exact-rank recovery", exact_rank_recovery},
		{2, "rSVD Frobenius bound gate", [] { return frobenius_gate(Scheme::Rsvd); }},
		{3, "GN Frobenius bound gate", [] { return frobenius_gate(Scheme::Gn); }},
		{4, "GN-c Frobenius and spectral bound gates", gnc_gate},
		{5, "comparative ordering on slow polynomial decay", ordering},
		{6, "Nystrom truncation inequality", nystrom_truncation},
		{7, "projector property suite", projector_suite},
		{8, "sketch suite", sketch_suite},
		{9, "I/O round-trips and rejection", io_suite},
		{10, "sweep determinism", determinism},
	};
	int failures = 0;
	for (const Criterion& c : criteria) {
		Outcome o;
		try {
			o = c.run();
		} catch (const std::exception& e) {
			o = {false, std::string("exception: ") + e.what()};
		}
		std::printf("%s criterion %d: %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str());
		std::fflush(stdout);
		failures += !o.pass;
	}
	std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
	return failures == 0 ? 0 : 1;
}
