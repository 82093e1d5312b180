#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "lowrank/random.hpp"

using namespace lowrank;

TEST(Rng, SameSeedSameStream) {
	Rng a(123), b(123), c(124);
	bool differs = false;
	for (int i = 0; i < 100; ++i) {
		const auto x = a.next_u64();
		EXPECT_EQ(x, b.next_u64());
		differs |= x != c.next_u64();
	}
	EXPECT_TRUE(differs);
}

TEST(Rng, MatchesReferenceXoshiroStream) {
	// Reference values from an independent Python transcription of SplitMix64
	// seeding followed by xoshiro256**. Every replayable artifact depends on this stream.
	Rng a(0);
	EXPECT_EQ(a.next_u64(), 11091344671253066420ULL);
	EXPECT_EQ(a.next_u64(), 13793997310169335082ULL);
}

TEST(Rng, UniformRangeAndMoments) {
	Rng rng(1);
	double sum = 0.0, sumsq = 0.0;
	const int n = 200000;
	for (int i = 0; i < n; ++i) {
		const double u = rng.uniform();
		ASSERT_GE(u, 0.0);
		ASSERT_LT(u, 1.0);
		sum += u;
		sumsq += u * u;
	}
	EXPECT_NEAR(sum / n, 0.5, 0.005);
	EXPECT_NEAR(sumsq / n - 0.25, 1.0 / 12.0, 0.002);
}

TEST(Rng, NormalMoments) {
	Rng rng(2);
	double s1 = 0, s2 = 0, s4 = 0;
	const int n = 200000;
	for (int i = 0; i < n; ++i) {
		const double z = rng.normal();
		s1 += z;
		s2 += z * z;
		s4 += z * z * z * z;
	}
	EXPECT_NEAR(s1 / n, 0.0, 0.01);
	EXPECT_NEAR(s2 / n, 1.0, 0.015);
	EXPECT_NEAR(s4 / n, 3.0, 0.1);
}

TEST(Rng, BelowIsUniformAndInRange) {
	Rng rng(3);
	std::vector<int> counts(7, 0);
	const int n = 70000;
	for (int i = 0; i < n; ++i) {
		const auto v = rng.below(7);
		ASSERT_LT(v, 7u);
		++counts[v];
	}
	for (int c : counts)
		EXPECT_NEAR(c, n / 7, 5 * std::sqrt(n / 7.0));
}

TEST(Rng, SignBalanced) {
	Rng rng(4);
	int plus = 0;
	const int n = 100000;
	for (int i = 0; i < n; ++i) {
		const double s = rng.sign();
		ASSERT_TRUE(s == 1.0 || s == -1.0);
		plus += s > 0;
	}
	EXPECT_NEAR(plus, n / 2, 4 * std::sqrt(n / 4.0));
}

TEST(DeriveSeed, DistinctIndicesAndLabels) {
	std::set<std::uint64_t> seen;
	for (std::uint64_t i = 0; i < 1000; ++i)
		seen.insert(derive_seed(42, i));
	EXPECT_EQ(seen.size(), 1000u);
	EXPECT_NE(derive_seed(42, "x"), derive_seed(42, "y"));
	EXPECT_NE(derive_seed(42, "x"), derive_seed(43, "x"));
	static_assert(derive_seed(1, "x") == derive_seed(1, "x"));
}
