#include "lowrank/random.hpp"

#include <cmath>
#include <numbers>

namespace lowrank {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
	return (x << k) | (x >> (64 - k));
}

} // namespace

Rng::Rng(std::uint64_t seed) noexcept {
	std::uint64_t z = seed;
	for (auto& word : s_) {
		z += 0x9e3779b97f4a7c15ULL;
		word = mix64(z - 0x9e3779b97f4a7c15ULL);
	}
}

std::uint64_t Rng::next_u64() noexcept {
	const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
	const std::uint64_t t = s_[1] << 17;
	s_[2] ^= s_[0];
	s_[3] ^= s_[1];
	s_[1] ^= s_[2];
	s_[0] ^= s_[3];
	s_[2] ^= t;
	s_[3] = rotl(s_[3], 45);
	return result;
}

double Rng::uniform() noexcept {
	return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) noexcept {
	// Lemire's multiply-and-reject.
	std::uint64_t x = next_u64();
	__uint128_t m = static_cast<__uint128_t>(x) * bound;
	std::uint64_t low = static_cast<std::uint64_t>(m);
	if (low < bound) {
		const std::uint64_t threshold = (0 - bound) % bound;
		while (low < threshold) {
			x = next_u64();
			m = static_cast<__uint128_t>(x) * bound;
			low = static_cast<std::uint64_t>(m);
		}
	}
	return static_cast<std::uint64_t>(m >> 64);
}

double Rng::normal() noexcept {
	if (has_spare_) {
		has_spare_ = false;
		return spare_;
	}
	double u1 = uniform();
	while (u1 == 0.0)
		u1 = uniform();
	const double u2 = uniform();
	const double radius = std::sqrt(-2.0 * std::log(u1));
	const double angle = 2.0 * std::numbers::pi * u2;
	spare_ = radius * std::sin(angle);
	has_spare_ = true;
	return radius * std::cos(angle);
}

} // namespace lowrank
