#include "lowrank/bounds.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lowrank/error.hpp"

namespace lowrank {

namespace {

// 1 + k / (r - k - 1), the Gaussian oversampling factor shared by every theorem bound.
double gaussian_factor(const SpectrumTail& tail, std::size_t r) {
	const std::size_t k = tail.k();
	if (r < k + 2)
		throw DomainError("bound requires r >= k + 2 (k=" + std::to_string(k) + ", r=" + std::to_string(r) + ")");
	return 1.0 + static_cast<double>(k) / static_cast<double>(r - k - 1);
}

} // namespace

SpectrumTail::SpectrumTail(std::vector<double> sigma, std::size_t k) : sigma_(std::move(sigma)), k_(k) {
	if (k_ >= sigma_.size())
		throw DomainError("SpectrumTail: k=" + std::to_string(k_) + " must be below the spectrum length " +
		                  std::to_string(sigma_.size()));
	for (std::size_t i = 0; i < sigma_.size(); ++i) {
		if (!(sigma_[i] >= 0.0) || !std::isfinite(sigma_[i]))
			throw DomainError("SpectrumTail: sigma[" + std::to_string(i) + "] is negative or not finite");
		if (i > 0 && sigma_[i] > sigma_[i - 1])
			throw DomainError("SpectrumTail: spectrum increases at index " + std::to_string(i));
	}
}

double SpectrumTail::tail_power_sum(double p) const {
	double s = 0.0;
	for (std::size_t i = k_; i < sigma_.size(); ++i)
		s += std::pow(sigma_[i], p);
	return s;
}

double bound_rsvd_frob(const SpectrumTail& tail, std::size_t r) {
	return std::sqrt(gaussian_factor(tail, r)) * tail.tail_frobenius();
}

double bound_gn_frob(const SpectrumTail& tail, std::size_t r, std::size_t l) {
	if (l < 2)
		throw DomainError("bound_gn_frob requires l >= 2, got l=" + std::to_string(l));
	const double left = 1.0 + static_cast<double>(r + l) / static_cast<double>(l - 1);
	return std::sqrt(left * gaussian_factor(tail, r)) * tail.tail_frobenius();
}

double bound_gnc_frob(const SpectrumTail& tail, std::size_t r) {
	return generalized_subspace_iteration_bound(tail, r, 1);
}

double bound_gnc_spec(const SpectrumTail& tail, std::size_t r) {
	const double f = gaussian_factor(tail, r);
	const double k = static_cast<double>(tail.k());
	const double rr = static_cast<double>(r);
	const double s = tail.next();
	const double first = (1.0 + std::sqrt(f - 1.0)) * s * s;
	const double second = std::numbers::e * std::sqrt(rr) / (rr - k) * std::sqrt(tail.tail_power_sum(4.0));
	return std::sqrt(first + second);
}

double bound_rsvd_spec_heuristic(const SpectrumTail& tail, std::size_t r, std::size_t m) {
	if (r <= tail.k())
		throw DomainError("bound_rsvd_spec_heuristic requires r > k");
	const double factor = (std::sqrt(static_cast<double>(m)) + std::sqrt(static_cast<double>(r))) /
	                      (std::sqrt(static_cast<double>(r)) - std::sqrt(static_cast<double>(tail.k())));
	return factor * tail.next();
}

double subspace_iteration_bound(const SpectrumTail& tail, std::size_t r, std::size_t q) {
	const double p = 4.0 * static_cast<double>(q) + 2.0;
	return std::pow(gaussian_factor(tail, r), 1.0 / p) * std::pow(tail.tail_power_sum(p), 1.0 / p);
}

double generalized_subspace_iteration_bound(const SpectrumTail& tail, std::size_t r, std::size_t q) {
	if (q < 1)
		throw DomainError("generalized_subspace_iteration_bound requires q >= 1");
	const double p = 4.0 * static_cast<double>(q);
	return std::pow(gaussian_factor(tail, r), 1.0 / p) * std::pow(tail.tail_power_sum(p), 1.0 / p);
}

} // namespace lowrank
