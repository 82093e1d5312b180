#pragma once

// Malformed Matrix Market inputs shared by the unit tests and the acceptance binary.
// Each entry names the defect and the line on which a reader should report it; input
// that ends early is reported at its last line.

#include <cstddef>
#include <string>
#include <vector>

namespace mm_corpus {

struct Malformed {
	const char* defect;
	std::string text;
	std::size_t line;
};

inline std::vector<Malformed> malformed() {
	return {
		{"missing banner", "3 3 1\n1 1 1.0\n", 1},
		{"wrong banner tag", "%%MatrixMarkt matrix coordinate real general\n3 3 1\n1 1 1.0\n", 1},
		{"truncated banner", "%%MatrixMarket matrix coordinate real\n3 3 1\n1 1 1.0\n", 1},
		{"unknown field", "%%MatrixMarket matrix coordinate complex general\n3 3 1\n1 1 1.0 0.0\n", 1},
		{"unknown symmetry", "%%MatrixMarket matrix coordinate real hermitian\n3 3 1\n1 1 1.0\n", 1},
		{"negative index", "%%MatrixMarket matrix coordinate real general\n3 3 1\n-1 1 1.0\n", 3},
		{"zero index", "%%MatrixMarket matrix coordinate real general\n3 3 1\n0 1 1.0\n", 3},
		{"row out of bounds", "%%MatrixMarket matrix coordinate real general\n3 3 2\n1 1 1.0\n4 1 2.0\n", 4},
		{"non-numeric value", "%%MatrixMarket matrix coordinate real general\n3 3 1\n1 1 abc\n", 3},
		{"truncated entry list", "%%MatrixMarket matrix coordinate real general\n3 3 3\n1 1 1.0\n2 2 2.0\n", 4},
		{"extra entries", "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1.0\n2 2 2.0\n", 4},
		{"missing value", "%%MatrixMarket matrix coordinate real general\n3 3 1\n1 1\n", 3},
		{"bad size line", "%%MatrixMarket matrix coordinate real general\n3 x 1\n1 1 1.0\n", 2},
		{"upper entry in symmetric file", "%%MatrixMarket matrix coordinate real symmetric\n3 3 1\n1 2 1.0\n", 3},
		{"infinite value", "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 inf\n", 3},
		{"short array", "%%MatrixMarket matrix array real general\n2 2\n1.0\n2.0\n3.0\n", 5},
		{"pattern array", "%%MatrixMarket matrix array pattern general\n2 2\n", 1},
	};
}

} // namespace mm_corpus
