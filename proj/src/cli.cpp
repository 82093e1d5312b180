#include "lowrank/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lowrank/approx.hpp"
#include "lowrank/bench.hpp"
#include "lowrank/error.hpp"
#include "lowrank/linalg.hpp"
#include "lowrank/mmio.hpp"
#include "lowrank/testgen.hpp"

namespace lowrank {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt17(double v) {
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	return buf;
}

struct Shared {
	std::uint64_t seed = kDefaultSeed;
	std::string output;
	std::string format = "text";
};

void add_shared(CLI::App* cmd, Shared& s, bool output_required) {
	cmd->add_option("--seed", s.seed, "Random seed (default 42)");
	auto* out = cmd->add_option("--output,-o", s.output, "Output path");
	if (output_required)
		out->required();
	cmd->add_option("--format", s.format, "Report format on stdout")
		->check(CLI::IsMember({"text", "json"}))
		->capture_default_str();
}

fs::path spectrum_sidecar(const fs::path& matrix_path) {
	fs::path p = matrix_path;
	p.replace_extension(".spectrum");
	return p;
}

// Writes to a temporary name first so that a failure never leaves a partial file behind.
template <class Writer>
void write_atomically(const fs::path& target, Writer&& write) {
	fs::path tmp = target;
	tmp += ".tmp";
	try {
		write(tmp);
		fs::rename(tmp, target);
	} catch (...) {
		std::error_code ec;
		fs::remove(tmp, ec);
		throw;
	}
}

int cmd_generate(const std::string& name, std::size_t m, const Shared& s, std::ostream& out) {
	if (!is_generator_name(name))
		throw ParameterError("unknown generator '" + name +
		                     "' (expected poly-slow, poly-fast, exp-slow, exp-fast, inv-square, exact-rank:<r>, "
		                     "flat-sparse)");
	GeneratedMatrix g = generate_named(name, m, s.seed);
	std::vector<double> sigma;
	if (g.sigma)
		sigma = *g.sigma;
	else
		sigma = singular_values(std::get<SparseMatrix>(g.matrix).to_dense());

	const fs::path path = s.output;
	std::visit([&](const auto& a) { write_atomically(path, [&](const fs::path& p) { write_matrix_market(p, a); }); },
	           g.matrix);
	const fs::path side = spectrum_sidecar(path);
	write_atomically(side, [&](const fs::path& p) { write_spectrum(p, sigma); });

	if (s.format == "json")
		out << json{{"matrix", path.string()}, {"spectrum", side.string()}, {"m", m}, {"generator", name}}.dump()
		    << '\n';
	else
		out << "wrote " << path.string() << " and " << side.string() << '\n';
	return kExitOk;
}

struct ApproxArgs {
	std::string input;
	std::string scheme = "gn-c";
	std::size_t rank = 0;
	std::optional<std::size_t> oversampling;
	std::size_t power_q = 0;
	std::string sketch = "gaussian";
};

int cmd_approximate(const ApproxArgs& args, const Shared& s, std::ostream& out) {
	const Scheme scheme = parse_scheme(args.scheme);
	ApproxConfig config;
	config.rank = args.rank;
	config.oversampling = args.oversampling;
	config.power_q = args.power_q;
	config.seed = s.seed;
	config.sketch_kind = parse_sketch_kind(args.sketch);

	const MmMatrix input = read_matrix_market(fs::path(args.input));
	const MatrixView a = std::visit([](const auto& m) { return MatrixView(m); }, input);

	const auto start = std::chrono::steady_clock::now();
	LowRankFactors f;
	if (scheme == Scheme::Nystrom) {
		const DenseMatrix dense = a.to_dense();
		if (config.rank < 1 || config.rank > dense.cols())
			throw ParameterError("nystrom: rank must lie in [1, n]");
		const auto omega = SketchOperator::make(config.sketch_kind, dense.cols(), config.rank,
		                                        column_sketch_seed(config.seed));
		f = nystrom_spsd(dense, omega, NystromTruncation::None, config.rank, config.eps_policy);
	} else {
		f = approximate(scheme, a, config);
	}
	const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	const double rel_err = relative_error(a, f);

	if (!s.output.empty()) {
		const DenseMatrix core = f.core ? *f.core : DenseMatrix::identity(f.inner_dim());
		write_atomically(s.output + "_L.mtx", [&](const fs::path& p) { write_matrix_market(p, f.left); });
		write_atomically(s.output + "_M.mtx", [&](const fs::path& p) { write_matrix_market(p, core); });
		write_atomically(s.output + "_Rt.mtx", [&](const fs::path& p) { write_matrix_market(p, f.right_t); });
	}

	const bool has_l = scheme == Scheme::Gn || scheme == Scheme::GnStabilized;
	if (s.format == "json") {
		json j{{"scheme", args.scheme}, {"r", args.rank},       {"rel_err", rel_err},
		       {"elapsed", elapsed},    {"rank_used", f.rank_used}, {"seed", s.seed}};
		if (has_l)
			j["l"] = config.oversampling_or_default();
		out << j.dump() << '\n';
	} else {
		out << "scheme=" << args.scheme << " r=" << args.rank;
		if (has_l)
			out << " l=" << config.oversampling_or_default();
		out << " rel_err=" << fmt17(rel_err) << " elapsed=" << fmt17(elapsed) << " rank_used=" << f.rank_used << '\n';
	}
	return kExitOk;
}

int cmd_bench(const std::string& config_path, const Shared& s, bool seed_given, std::ostream& out,
              std::ostream& err) {
	std::ifstream in(config_path);
	if (!in)
		throw IoError("cannot open '" + config_path + "' for reading");
	json j;
	try {
		j = json::parse(in);
	} catch (const json::parse_error& e) {
		throw ParameterError(std::string("config is not valid JSON: ") + e.what());
	}
	SweepConfig config = SweepConfig::from_json(j);
	if (seed_given)
		config.seed_base = s.seed;
	if (!s.output.empty())
		config.output = s.output;

	const std::vector<ApproxReport> reports = run_sweep(config);
	emit_csv(fs::path(config.output), reports);

	std::size_t failed = 0;
	for (const ApproxReport& rep : reports) {
		if (!rep.ok()) {
			++failed;
			err << "cell failed: scheme=" << to_string(rep.scheme) << " r=" << rep.r << " trial=" << rep.trial << ": "
			    << *rep.error << '\n';
		}
	}
	for (const std::string& w : timing_warnings(reports))
		err << "warning: " << w << '\n';

	if (s.format == "json")
		out << json{{"output", config.output}, {"reports", reports.size()}, {"failed", failed}}.dump() << '\n';
	else
		out << "wrote " << reports.size() - failed << " rows to " << config.output << " (" << failed
		    << " failed cells)\n";
	return kExitOk;
}

int cmd_verify(const std::string& csv_path, const std::string& spectrum_path, std::size_t k, std::size_t power_q,
               const Shared& s, std::ostream& out) {
	const std::vector<ApproxReport> reports = parse_csv(fs::path(csv_path));
	const std::vector<double> sigma = read_spectrum(spectrum_path);
	const std::vector<BoundVerdict> verdicts = verify_bounds(reports, sigma, k, power_q);

	std::vector<const BoundVerdict*> failing;
	for (const BoundVerdict& v : verdicts)
		if (v.verdict == Verdict::Fail)
			failing.push_back(&v);

	if (s.format == "json") {
		json rows = json::array();
		for (const BoundVerdict& v : verdicts) {
			json row{{"scheme", std::string(to_string(v.scheme))}, {"r", v.r},
			         {"trials", v.trials},                        {"mean_abs_error", v.mean_abs_error},
			         {"verdict", std::string(to_string(v.verdict))}};
			row["l"] = v.l ? json(*v.l) : json(nullptr);
			row["bound"] = v.bound ? json(*v.bound) : json(nullptr);
			rows.push_back(row);
		}
		out << rows.dump() << '\n';
	} else {
		print_verdicts(out, verdicts);
		for (const BoundVerdict* v : failing)
			out << "FAILED: " << to_string(v->scheme) << " r=" << v->r << '\n';
	}
	return failing.empty() ? kExitOk : kExitVerification;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
	CLI::App app{"Randomized low-rank approximation toolkit", "lowrank"};
	app.require_subcommand(1, 1);

	Shared gen_shared, approx_shared, bench_shared, verify_shared;

	auto* gen = app.add_subcommand("generate", "Write a synthetic test matrix and its spectrum");
	std::string gen_name;
	std::size_t gen_m = 0;
	gen->add_option("spec", gen_name, "Generator name")->required();
	gen->add_option("-m,--size", gen_m, "Matrix dimension")->required()->check(CLI::PositiveNumber);
	add_shared(gen, gen_shared, true);

	auto* apx = app.add_subcommand("approximate", "Approximate a Matrix Market matrix");
	ApproxArgs apx_args;
	apx->add_option("input", apx_args.input, "Matrix Market file")->required();
	apx->add_option("--scheme,-s", apx_args.scheme, "rsvd, gn, gn-stab, gn-rc, gn-c or nystrom")
		->capture_default_str();
	apx->add_option("--rank,-r", apx_args.rank, "Target rank r")->required();
	apx->add_option("--oversampling,-l", apx_args.oversampling, "GN oversampling (default ceil(r/2))");
	apx->add_option("--power-q", apx_args.power_q, "rSVD power iterations")->capture_default_str();
	apx->add_option("--sketch", apx_args.sketch, "gaussian, sparse-sign, srtt or column-sampling")
		->capture_default_str();
	add_shared(apx, approx_shared, false);

	auto* bench = app.add_subcommand("bench", "Run an error-vs-rank sweep from a JSON config");
	std::string bench_config;
	bench->add_option("config", bench_config, "Sweep config (JSON)")->required();
	add_shared(bench, bench_shared, false);

	auto* verify = app.add_subcommand("verify-bounds", "Check sweep results against the theorem bounds");
	std::string verify_csv, verify_spectrum;
	std::size_t verify_k = 0, verify_q = 0;
	verify->add_option("csv", verify_csv, "Sweep CSV")->required();
	verify->add_option("--spectrum", verify_spectrum, "Spectrum file, one value per line")->required();
	verify->add_option("-k", verify_k, "Target rank k of the bounds")->required();
	verify->add_option("--power-q", verify_q, "Power iterations used by rSVD in the sweep")->capture_default_str();
	add_shared(verify, verify_shared, false);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e, out, err);
		return code == 0 ? kExitOk : kExitUsage;
	}

	try {
		if (*gen)
			return cmd_generate(gen_name, gen_m, gen_shared, out);
		if (*apx)
			return cmd_approximate(apx_args, approx_shared, out);
		if (*bench)
			return cmd_bench(bench_config, bench_shared, bench->count("--seed") > 0, out, err);
		return cmd_verify(verify_csv, verify_spectrum, verify_k, verify_q, verify_shared, out);
	} catch (const IoError& e) {
		err << "error: " << e.what() << '\n';
		return kExitIo;
	} catch (const std::filesystem::filesystem_error& e) {
		err << "error: " << e.what() << '\n';
		return kExitIo;
	} catch (const Error& e) {
		err << "error: " << e.what() << '\n';
		return kExitUsage;
	}
}

} // namespace lowrank
