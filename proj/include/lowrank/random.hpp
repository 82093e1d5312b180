#pragma once

#include <cstdint>
#include <string_view>

namespace lowrank {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
	z += 0x9e3779b97f4a7c15ULL;
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
	return z ^ (z >> 31);
}

/// Child seed for stream `index` of `seed`. Streams for distinct indices are independent.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
	return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Child seed keyed by a short label (FNV-1a of the label is the stream index).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) noexcept {
	std::uint64_t h = 0xcbf29ce484222325ULL;
	for (char c : label) {
		h ^= static_cast<unsigned char>(c);
		h *= 0x100000001b3ULL;
	}
	return derive_seed(seed, h);
}

/**
 * xoshiro256** generator seeded through SplitMix64.
 *
 * All distributions are implemented here rather than through <random>
 * distributions, whose output is implementation-defined; a given seed yields
 * the same stream on every platform.
 */
class Rng {
public:
	explicit Rng(std::uint64_t seed) noexcept;

	std::uint64_t next_u64() noexcept;
	/// Uniform on [0, 1) with 53 random bits.
	double uniform() noexcept;
	/// Uniform integer in [0, bound), bound > 0, without modulo bias.
	std::uint64_t below(std::uint64_t bound) noexcept;
	/// Standard normal via the Box-Muller transform.
	double normal() noexcept;
	/// +1 or -1 with equal probability.
	double sign() noexcept { return (next_u64() >> 63) ? 1.0 : -1.0; }

private:
	std::uint64_t s_[4];
	double spare_ = 0.0;
	bool has_spare_ = false;
};

} // namespace lowrank
