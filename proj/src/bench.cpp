#include "lowrank/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "lowrank/bounds.hpp"
#include "lowrank/error.hpp"
#include "lowrank/linalg.hpp"
#include "lowrank/mmio.hpp"
#include "lowrank/random.hpp"
#include "lowrank/testgen.hpp"

namespace lowrank {

namespace {

using nlohmann::json;

bool uses_oversampling(Scheme s) {
	return s == Scheme::Gn || s == Scheme::GnStabilized;
}

std::string fmt17(double v) {
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	return buf;
}

template <class T>
T json_field(const json& j, const char* name) {
	try {
		return j.at(name).get<T>();
	} catch (const json::exception& e) {
		throw ParameterError(std::string("sweep config field '") + name + "': " + e.what());
	}
}

double frobenius_from_sigma(const std::vector<double>& sigma) {
	double s = 0.0;
	for (double x : sigma)
		s += x * x;
	return std::sqrt(s);
}

struct Source {
	std::variant<DenseMatrix, SparseMatrix> matrix;
	std::optional<std::vector<double>> sigma;

	MatrixView view() const {
		return std::visit([](const auto& a) { return MatrixView(a); }, matrix);
	}
};

Source load_source(const SweepConfig& config) {
	if (is_generator_name(config.matrix_source)) {
		GeneratedMatrix g = generate_named(config.matrix_source, config.m, derive_seed(config.seed_base, "matrix"));
		return {std::move(g.matrix), std::move(g.sigma)};
	}
	MmMatrix loaded = read_matrix_market(std::filesystem::path(config.matrix_source));
	Source s{std::visit([](auto&& a) -> std::variant<DenseMatrix, SparseMatrix> { return std::move(a); },
	                    std::move(loaded)),
	         std::nullopt};
	if (config.spectrum_path) {
		s.sigma = read_spectrum(*config.spectrum_path);
	} else if (config.k_for_bounds) {
		// Bounds need the exact spectrum; compute it once by a dense SVD.
		s.sigma = singular_values(s.view().to_dense());
	}
	return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
	std::vector<std::string_view> out;
	std::size_t start = 0;
	while (true) {
		const std::size_t comma = line.find(',', start);
		out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
		if (comma == std::string_view::npos)
			break;
		start = comma + 1;
	}
	return out;
}

template <class T>
T parse_number(std::string_view tok, std::size_t line, const char* column) {
	T v{};
	const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
	if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
		throw ParseError(std::string("column ") + column + ": cannot parse '" + std::string(tok) + "'", line);
	return v;
}

double median(std::vector<double> v) {
	std::sort(v.begin(), v.end());
	const std::size_t n = v.size();
	return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

auto report_key(const ApproxReport& r) {
	return std::make_tuple(std::string(to_string(r.scheme)), r.r, r.trial, r.l.value_or(0));
}

} // namespace

SweepConfig SweepConfig::from_json(const json& j) {
	if (!j.is_object())
		throw ParameterError("sweep config must be a JSON object");
	static const std::vector<std::string> known = {"matrix_source", "m",           "schemes",      "ranks",
	                                               "trials",        "seed_base",   "oversampling", "sketch_kind",
	                                               "k_for_bounds",  "power_q",     "output",       "spectrum_path"};
	for (const auto& [key, value] : j.items())
		if (std::find(known.begin(), known.end(), key) == known.end())
			throw ParameterError("unknown sweep config field '" + key + "'");

	SweepConfig c;
	c.matrix_source = json_field<std::string>(j, "matrix_source");
	for (const auto& name : json_field<std::vector<std::string>>(j, "schemes"))
		c.schemes.push_back(parse_scheme(name));
	c.ranks = json_field<std::vector<std::size_t>>(j, "ranks");
	if (j.contains("m"))
		c.m = json_field<std::size_t>(j, "m");
	if (j.contains("trials"))
		c.trials = json_field<std::size_t>(j, "trials");
	if (j.contains("seed_base"))
		c.seed_base = json_field<std::uint64_t>(j, "seed_base");
	if (j.contains("oversampling")) {
		const json& o = j.at("oversampling");
		if (o.is_string()) {
			if (o.get<std::string>() != "half")
				throw ParameterError("oversampling must be \"half\" or a nonnegative integer");
		} else if (o.is_number_unsigned()) {
			c.oversampling = o.get<std::size_t>();
		} else {
			throw ParameterError("oversampling must be \"half\" or a nonnegative integer");
		}
	}
	if (j.contains("sketch_kind"))
		c.sketch_kind = parse_sketch_kind(json_field<std::string>(j, "sketch_kind"));
	if (j.contains("k_for_bounds") && !j.at("k_for_bounds").is_null())
		c.k_for_bounds = json_field<std::size_t>(j, "k_for_bounds");
	if (j.contains("power_q"))
		c.power_q = json_field<std::size_t>(j, "power_q");
	if (j.contains("output"))
		c.output = json_field<std::string>(j, "output");
	if (j.contains("spectrum_path") && !j.at("spectrum_path").is_null())
		c.spectrum_path = json_field<std::string>(j, "spectrum_path");
	c.validate();
	return c;
}

json SweepConfig::to_json() const {
	json j;
	j["matrix_source"] = matrix_source;
	j["m"] = m;
	std::vector<std::string> names;
	for (Scheme s : schemes)
		names.emplace_back(to_string(s));
	j["schemes"] = names;
	j["ranks"] = ranks;
	j["trials"] = trials;
	j["seed_base"] = seed_base;
	if (oversampling)
		j["oversampling"] = *oversampling;
	else
		j["oversampling"] = "half";
	j["sketch_kind"] = std::string(to_string(sketch_kind));
	if (k_for_bounds)
		j["k_for_bounds"] = *k_for_bounds;
	j["power_q"] = power_q;
	j["output"] = output;
	if (spectrum_path)
		j["spectrum_path"] = *spectrum_path;
	return j;
}

void SweepConfig::validate() const {
	if (matrix_source.empty())
		throw ParameterError("matrix_source is empty");
	if (schemes.empty())
		throw ParameterError("schemes list is empty");
	if (std::find(schemes.begin(), schemes.end(), Scheme::Nystrom) != schemes.end())
		throw ParameterError("nystrom is not a sweep scheme (it needs an SPSD input); use the library API");
	if (ranks.empty())
		throw ParameterError("ranks list is empty");
	for (std::size_t i = 0; i < ranks.size(); ++i) {
		if (ranks[i] == 0)
			throw ParameterError("ranks must be positive");
		if (i > 0 && ranks[i] <= ranks[i - 1])
			throw ParameterError("ranks must be strictly increasing");
	}
	if (trials < 1)
		throw ParameterError("trials must be at least 1");
}

std::uint64_t trial_seed(std::uint64_t seed_base, std::size_t trial) {
	return derive_seed(seed_base, static_cast<std::uint64_t>(trial));
}

std::optional<double> theorem_bound(Scheme scheme, const std::vector<double>& sigma, std::size_t k, std::size_t r,
                                    std::optional<std::size_t> l, std::size_t power_q) {
	if (k >= sigma.size() || r < k + 2)
		return std::nullopt;
	const SpectrumTail tail(sigma, k);
	switch (scheme) {
	case Scheme::Rsvd:
		return power_q == 0 ? bound_rsvd_frob(tail, r) : subspace_iteration_bound(tail, r, power_q);
	case Scheme::Gn:
		if (!l || *l < 2)
			return std::nullopt;
		return bound_gn_frob(tail, r, *l);
	case Scheme::GnC:
		return bound_gnc_frob(tail, r);
	default:
		return std::nullopt;
	}
}

std::vector<ApproxReport> run_sweep(const SweepConfig& config) {
	config.validate();
	const Source source = load_source(config);
	const MatrixView a = source.view();
	const double anorm = a.frobenius_norm();

	std::vector<ApproxReport> reports;
	for (std::size_t trial = 0; trial < config.trials; ++trial) {
		const std::uint64_t seed = trial_seed(config.seed_base, trial);
		for (Scheme scheme : config.schemes) {
			for (std::size_t r : config.ranks) {
				ApproxConfig ac;
				ac.rank = r;
				ac.oversampling = config.oversampling;
				ac.power_q = config.power_q;
				ac.seed = seed;
				ac.sketch_kind = config.sketch_kind;

				ApproxReport rep;
				rep.scheme = scheme;
				rep.r = r;
				rep.trial = trial;
				rep.seed = seed;
				if (uses_oversampling(scheme))
					rep.l = ac.oversampling_or_default();
				try {
					const auto start = std::chrono::steady_clock::now();
					const LowRankFactors f = approximate(scheme, a, ac);
					const auto stop = std::chrono::steady_clock::now();
					rep.elapsed_seconds = std::chrono::duration<double>(stop - start).count();
					rep.rank_used = f.rank_used;
					rep.rel_err_frob = relative_error(a, f);
				} catch (const Error& e) {
					rep.error = e.what();
				}
				if (rep.ok() && source.sigma && config.k_for_bounds) {
					if (auto b = theorem_bound(scheme, *source.sigma, *config.k_for_bounds, r, rep.l, config.power_q)) {
						rep.bound_frob = *b / anorm;
						rep.bound_satisfied = rep.rel_err_frob <= *rep.bound_frob;
					}
				}
				reports.push_back(std::move(rep));
			}
		}
	}
	std::stable_sort(reports.begin(), reports.end(),
	                 [](const ApproxReport& x, const ApproxReport& y) { return report_key(x) < report_key(y); });
	return reports;
}

std::string_view to_string(Verdict v) {
	switch (v) {
	case Verdict::Pass:
		return "pass";
	case Verdict::Fail:
		return "fail";
	case Verdict::NotApplicable:
		return "n/a";
	}
	return "?";
}

std::vector<BoundVerdict> verify_bounds(const std::vector<ApproxReport>& reports, const std::vector<double>& sigma,
                                        std::size_t k, std::size_t power_q) {
	const double anorm = frobenius_from_sigma(sigma);
	std::map<std::tuple<std::string, std::size_t, std::size_t>, std::vector<const ApproxReport*>> groups;
	for (const ApproxReport& rep : reports)
		if (rep.ok())
			groups[{std::string(to_string(rep.scheme)), rep.r, rep.l.value_or(0)}].push_back(&rep);

	std::vector<BoundVerdict> out;
	for (const auto& [key, members] : groups) {
		if (members.size() < kMinBoundTrials)
			throw InsufficientSampleError("group " + std::get<0>(key) + " r=" + std::to_string(std::get<1>(key)) +
			                              " has " + std::to_string(members.size()) + " trials; at least " +
			                              std::to_string(kMinBoundTrials) + " are required");
		const ApproxReport& first = *members.front();
		double mean = 0.0;
		for (const ApproxReport* rep : members)
			mean += rep->rel_err_frob * anorm;
		mean /= static_cast<double>(members.size());

		BoundVerdict v{first.scheme, first.r, first.l, members.size(), mean, std::nullopt, Verdict::NotApplicable};
		v.bound = theorem_bound(first.scheme, sigma, k, first.r, first.l, power_q);
		if (v.bound)
			v.verdict = mean <= kBoundSlack * *v.bound + 1e-10 * anorm ? Verdict::Pass : Verdict::Fail;
		out.push_back(v);
	}
	return out;
}

void print_verdicts(std::ostream& out, const std::vector<BoundVerdict>& verdicts) {
	char line[160];
	std::snprintf(line, sizeof line, "%-8s %5s %4s %6s %14s %14s  %s\n", "scheme", "r", "l", "trials", "mean_abs_err",
	              "bound", "verdict");
	out << line;
	for (const BoundVerdict& v : verdicts) {
		const std::string l = v.l ? std::to_string(*v.l) : "-";
		char bound[32] = "-";
		if (v.bound)
			std::snprintf(bound, sizeof bound, "%.6e", *v.bound);
		std::snprintf(line, sizeof line, "%-8s %5zu %4s %6zu %14.6e %14s  %s\n", std::string(to_string(v.scheme)).c_str(),
		              v.r, l.c_str(), v.trials, v.mean_abs_error, bound, std::string(to_string(v.verdict)).c_str());
		out << line;
	}
}

void emit_csv(std::ostream& out, const std::vector<ApproxReport>& reports) {
	std::vector<const ApproxReport*> rows;
	for (const ApproxReport& rep : reports)
		if (rep.ok())
			rows.push_back(&rep);
	std::stable_sort(rows.begin(), rows.end(),
	                 [](const ApproxReport* x, const ApproxReport* y) { return report_key(*x) < report_key(*y); });
	out << kCsvHeader << '\n';
	for (const ApproxReport* rep : rows) {
		out << to_string(rep->scheme) << ',' << rep->r << ',' << (rep->l ? std::to_string(*rep->l) : "") << ','
		    << rep->trial << ',' << rep->seed << ',' << fmt17(rep->rel_err_frob) << ','
		    << fmt17(rep->elapsed_seconds) << ',' << rep->rank_used << ','
		    << (rep->bound_frob ? fmt17(*rep->bound_frob) : "") << ','
		    << (rep->bound_satisfied ? (*rep->bound_satisfied ? "true" : "false") : "") << '\n';
	}
}

void emit_csv(const std::filesystem::path& path, const std::vector<ApproxReport>& reports) {
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw IoError("cannot open '" + path.string() + "' for writing");
	emit_csv(out, reports);
	out.flush();
	if (!out)
		throw IoError("write to '" + path.string() + "' failed");
}

std::vector<ApproxReport> parse_csv(std::istream& in) {
	std::string line;
	std::size_t lineno = 1;
	if (!std::getline(in, line))
		throw ParseError("empty CSV", 1);
	if (!line.empty() && line.back() == '\r')
		line.pop_back();
	if (line != kCsvHeader)
		throw ParseError("unexpected CSV header", 1);

	std::vector<ApproxReport> out;
	while (std::getline(in, line)) {
		++lineno;
		if (!line.empty() && line.back() == '\r')
			line.pop_back();
		if (line.empty())
			continue;
		const auto f = split_commas(line);
		if (f.size() != 10)
			throw ParseError("expected 10 columns, found " + std::to_string(f.size()), lineno);
		ApproxReport rep;
		try {
			rep.scheme = parse_scheme(f[0]);
		} catch (const ParameterError& e) {
			throw ParseError(e.what(), lineno);
		}
		rep.r = parse_number<std::size_t>(f[1], lineno, "r");
		if (!f[2].empty())
			rep.l = parse_number<std::size_t>(f[2], lineno, "l");
		rep.trial = parse_number<std::size_t>(f[3], lineno, "trial");
		rep.seed = parse_number<std::uint64_t>(f[4], lineno, "seed");
		rep.rel_err_frob = parse_number<double>(f[5], lineno, "rel_err_frob");
		rep.elapsed_seconds = parse_number<double>(f[6], lineno, "elapsed_seconds");
		rep.rank_used = parse_number<std::size_t>(f[7], lineno, "rank_used");
		if (!f[8].empty())
			rep.bound_frob = parse_number<double>(f[8], lineno, "bound_frob");
		if (f[9] == "true")
			rep.bound_satisfied = true;
		else if (f[9] == "false")
			rep.bound_satisfied = false;
		else if (!f[9].empty())
			throw ParseError("bound_satisfied must be true, false or empty", lineno);
		out.push_back(std::move(rep));
	}
	return out;
}

std::vector<ApproxReport> parse_csv(const std::filesystem::path& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw IoError("cannot open '" + path.string() + "' for reading");
	return parse_csv(in);
}

std::vector<double> read_spectrum(const std::filesystem::path& path) {
	std::ifstream in(path);
	if (!in)
		throw IoError("cannot open '" + path.string() + "' for reading");
	std::vector<double> sigma;
	std::string line;
	std::size_t lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		const auto first = line.find_first_not_of(" \t\r");
		if (first == std::string::npos)
			continue;
		const auto last = line.find_last_not_of(" \t\r");
		sigma.push_back(parse_number<double>(std::string_view(line).substr(first, last - first + 1), lineno, "sigma"));
	}
	return sigma;
}

void write_spectrum(const std::filesystem::path& path, const std::vector<double>& sigma) {
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw IoError("cannot open '" + path.string() + "' for writing");
	for (double s : sigma)
		out << fmt17(s) << '\n';
	out.flush();
	if (!out)
		throw IoError("write to '" + path.string() + "' failed");
}

std::vector<std::string> timing_warnings(const std::vector<ApproxReport>& reports) {
	std::map<std::size_t, std::vector<double>> gn, rsvd_times;
	for (const ApproxReport& rep : reports) {
		if (!rep.ok())
			continue;
		if (rep.scheme == Scheme::Gn)
			gn[rep.r].push_back(rep.elapsed_seconds);
		else if (rep.scheme == Scheme::Rsvd)
			rsvd_times[rep.r].push_back(rep.elapsed_seconds);
	}
	std::vector<std::string> warnings;
	for (const auto& [r, times] : gn) {
		const auto it = rsvd_times.find(r);
		if (it == rsvd_times.end())
			continue;
		const double g = median(times);
		const double s = median(it->second);
		if (g > s) {
			char line[160];
			std::snprintf(line, sizeof line, "r=%zu: median GN time %.3g s exceeds median rSVD time %.3g s", r, g, s);
			warnings.emplace_back(line);
		}
	}
	return warnings;
}

} // namespace lowrank
