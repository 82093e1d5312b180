#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lowrank/approx.hpp"
#include "lowrank/sketch.hpp"

namespace lowrank {

/**
 * One error-vs-rank sweep. The JSON form uses the field names below;
 * "oversampling" is either the string "half" (l = ceil(r/2)) or an integer.
 */
struct SweepConfig {
	std::string matrix_source;           ///< generator name or Matrix Market path
	std::size_t m = 500;                 ///< generator size (ignored for files)
	std::vector<Scheme> schemes;
	std::vector<std::size_t> ranks;      ///< strictly increasing
	std::size_t trials = 20;
	std::uint64_t seed_base = kDefaultSeed;
	std::optional<std::size_t> oversampling; ///< nullopt = half
	SketchKind sketch_kind = SketchKind::Gaussian;
	std::optional<std::size_t> k_for_bounds;
	std::size_t power_q = 0;
	std::string output = "sweep.csv";
	std::optional<std::string> spectrum_path; ///< sidecar spectrum for file inputs

	/// Throws ParameterError on missing or malformed fields.
	static SweepConfig from_json(const nlohmann::json& j);
	nlohmann::json to_json() const;
	/// Throws ParameterError when an invariant fails.
	void validate() const;
};

struct ApproxReport {
	Scheme scheme = Scheme::Rsvd;
	std::size_t r = 0;
	std::optional<std::size_t> l;     ///< GN schemes only
	std::size_t trial = 0;
	std::uint64_t seed = 0;
	double rel_err_frob = 0.0;
	double elapsed_seconds = 0.0;
	std::size_t rank_used = 0;
	std::optional<double> bound_frob; ///< relative: theorem bound / ||A||_F
	std::optional<bool> bound_satisfied;
	std::optional<std::string> error; ///< set when the cell failed; numeric fields are then meaningless

	bool ok() const noexcept { return !error.has_value(); }
};

/// Seed used by every scheme in trial `trial`, so schemes are compared on paired sketches.
std::uint64_t trial_seed(std::uint64_t seed_base, std::size_t trial);

/// Runs trials x schemes x ranks cells. Failing cells become error records; the sweep continues.
/// Reports come back sorted by (scheme name, r, trial).
std::vector<ApproxReport> run_sweep(const SweepConfig& config);

/// Theorem bound for `scheme` at (r, l) in absolute units, or nullopt when the scheme has none
/// or the parameters fall outside the theorem's domain. power_q > 0 selects the subspace-iteration
/// bound for rSVD.
std::optional<double> theorem_bound(Scheme scheme, const std::vector<double>& sigma, std::size_t k, std::size_t r,
                                    std::optional<std::size_t> l, std::size_t power_q = 0);

enum class Verdict { Pass, Fail, NotApplicable };
std::string_view to_string(Verdict v);

struct BoundVerdict {
	Scheme scheme;
	std::size_t r;
	std::optional<std::size_t> l;
	std::size_t trials;
	double mean_abs_error;
	std::optional<double> bound;
	Verdict verdict;
};

inline constexpr std::size_t kMinBoundTrials = 20;
inline constexpr double kBoundSlack = 1.05;

/**
 * Groups successful reports by (scheme, r, l) and compares the mean absolute
 * error against the theorem bound: pass iff mean <= 1.05 * bound + 1e-10 ||A||_F.
 * The additive term is a roundoff floor so that exactly recovered matrices
 * (bound 0) pass. Throws InsufficientSampleError when a group has fewer than 20 trials.
 */
std::vector<BoundVerdict> verify_bounds(const std::vector<ApproxReport>& reports, const std::vector<double>& sigma,
                                        std::size_t k, std::size_t power_q = 0);

void print_verdicts(std::ostream& out, const std::vector<BoundVerdict>& verdicts);

inline constexpr const char* kCsvHeader =
	"scheme,r,l,trial,seed,rel_err_frob,elapsed_seconds,rank_used,bound_frob,bound_satisfied";

/// Successful reports only, ordered by (scheme, r, trial); floats at 17 significant digits.
void emit_csv(std::ostream& out, const std::vector<ApproxReport>& reports);
void emit_csv(const std::filesystem::path& path, const std::vector<ApproxReport>& reports);

/// Inverse of emit_csv. Throws ParseError with a line number on malformed rows.
std::vector<ApproxReport> parse_csv(std::istream& in);
std::vector<ApproxReport> parse_csv(const std::filesystem::path& path);

/// Plain-text spectrum: one value per line.
std::vector<double> read_spectrum(const std::filesystem::path& path);
void write_spectrum(const std::filesystem::path& path, const std::vector<double>& sigma);

/// Median elapsed time of GN vs rSVD at each shared rank; returns one warning per rank where GN is slower.
std::vector<std::string> timing_warnings(const std::vector<ApproxReport>& reports);

} // namespace lowrank
