#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace lowrank {

/**
 * Full singular spectrum of a test matrix together with a target rank k.
 *
 * The constructor validates sigma (nonnegative, nonincreasing) and k < sigma.size()
 * and throws DomainError otherwise.
 */
class SpectrumTail {
public:
	SpectrumTail(std::vector<double> sigma, std::size_t k);

	const std::vector<double>& sigma() const noexcept { return sigma_; }
	std::size_t k() const noexcept { return k_; }

	/// sigma_{k+1} (the first discarded value).
	double next() const noexcept { return sigma_[k_]; }
	/// sum_{i>k} sigma_i^p
	double tail_power_sum(double p) const;
	/// ||A - A_k||_F
	double tail_frobenius() const { return std::sqrt(tail_power_sum(2.0)); }

private:
	std::vector<double> sigma_;
	std::size_t k_;
};

/// Expected Frobenius error bound of rSVD: sqrt(1 + k/(r-k-1)) ||A - A_k||_F. Requires r >= k + 2.
double bound_rsvd_frob(const SpectrumTail& tail, std::size_t r);

/// Expected Frobenius error bound of GN with oversampling l >= 2.
double bound_gn_frob(const SpectrumTail& tail, std::size_t r, std::size_t l);

/// Expected Frobenius error bound of GN-c: (1 + k/(r-k-1))^{1/4} (sum_{i>k} sigma_i^4)^{1/4}.
double bound_gnc_frob(const SpectrumTail& tail, std::size_t r);

/// Expected spectral-norm error bound of GN-c.
double bound_gnc_spec(const SpectrumTail& tail, std::size_t r);

/// (sqrt(m) + sqrt(r)) / (sqrt(r) - sqrt(k)) sigma_{k+1}. Heuristic, for reporting only.
double bound_rsvd_spec_heuristic(const SpectrumTail& tail, std::size_t r, std::size_t m);

/// Frobenius bound for rSVD with q power iterations:
/// (1 + k/(r-k-1))^{1/(4q+2)} (sum_{i>k} sigma_i^{4q+2})^{1/(4q+2)}.
double subspace_iteration_bound(const SpectrumTail& tail, std::size_t r, std::size_t q);

/// Companion bound with even powers, q >= 1:
/// (1 + k/(r-k-1))^{1/(4q)} (sum_{i>k} sigma_i^{4q})^{1/(4q)}. At q = 1 this is bound_gnc_frob.
double generalized_subspace_iteration_bound(const SpectrumTail& tail, std::size_t r, std::size_t q);

} // namespace lowrank
