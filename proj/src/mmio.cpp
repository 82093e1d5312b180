#include "lowrank/mmio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "lowrank/error.hpp"

namespace lowrank {

namespace {

std::string lower(std::string s) {
	std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
	return s;
}

// Splits on blanks and tabs.
std::vector<std::string_view> tokens(std::string_view line) {
	std::vector<std::string_view> out;
	std::size_t i = 0;
	while (i < line.size()) {
		while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
			++i;
		const std::size_t start = i;
		while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
			++i;
		if (i > start)
			out.push_back(line.substr(start, i - start));
	}
	return out;
}

class LineReader {
public:
	explicit LineReader(std::istream& in) : in_(in) {}

	// Next line that is neither blank nor a comment. Returns false at end of input.
	bool next_data(std::string& line) {
		while (std::getline(in_, line)) {
			++number_;
			if (!line.empty() && line.back() == '\r')
				line.pop_back();
			const auto first = line.find_first_not_of(" \t");
			if (first == std::string::npos || line[first] == '%')
				continue;
			return true;
		}
		return false;
	}
	bool next_raw(std::string& line) {
		if (!std::getline(in_, line))
			return false;
		++number_;
		if (!line.empty() && line.back() == '\r')
			line.pop_back();
		return true;
	}
	std::size_t line() const noexcept { return number_; }

private:
	std::istream& in_;
	std::size_t number_ = 0;
};

std::size_t parse_index(std::string_view tok, std::size_t line, const char* what) {
	if (!tok.empty() && tok.front() == '-')
		throw ParseError(std::string(what) + " must be positive, got '" + std::string(tok) + "'", line);
	std::size_t v = 0;
	const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
	if (ec != std::errc{} || ptr != tok.data() + tok.size())
		throw ParseError(std::string(what) + " is not an integer: '" + std::string(tok) + "'", line);
	return v;
}

double parse_value(std::string_view tok, std::size_t line) {
	// std::from_chars for double is available in libstdc++ 11.
	double v = 0.0;
	const char* begin = tok.data();
	if (!tok.empty() && tok.front() == '+')
		++begin;
	const auto [ptr, ec] = std::from_chars(begin, tok.data() + tok.size(), v);
	if (ec != std::errc{} || ptr != tok.data() + tok.size())
		throw ParseError("value is not a number: '" + std::string(tok) + "'", line);
	if (!std::isfinite(v))
		throw ParseError("value is not finite: '" + std::string(tok) + "'", line);
	return v;
}

MmHeader parse_banner(const std::string& line, std::size_t lineno) {
	const auto t = tokens(line);
	if (t.empty() || t[0] != "%%MatrixMarket")
		throw ParseError("missing %%MatrixMarket banner", lineno);
	if (t.size() != 5)
		throw ParseError("banner must have 5 fields: %%MatrixMarket matrix <format> <field> <symmetry>", lineno);
	if (lower(std::string(t[1])) != "matrix")
		throw ParseError("unsupported object '" + std::string(t[1]) + "'", lineno);
	MmHeader h;
	const std::string format = lower(std::string(t[2]));
	const std::string field = lower(std::string(t[3]));
	const std::string sym = lower(std::string(t[4]));
	if (format == "coordinate")
		h.format = MmFormat::Coordinate;
	else if (format == "array")
		h.format = MmFormat::Array;
	else
		throw ParseError("unsupported format '" + format + "'", lineno);
	if (field == "real" || field == "double")
		h.field = MmField::Real;
	else if (field == "integer")
		h.field = MmField::Integer;
	else if (field == "pattern")
		h.field = MmField::Pattern;
	else
		throw ParseError("unsupported field '" + field + "'", lineno);
	if (sym == "general")
		h.symmetry = MmSymmetry::General;
	else if (sym == "symmetric")
		h.symmetry = MmSymmetry::Symmetric;
	else if (sym == "skew-symmetric")
		h.symmetry = MmSymmetry::SkewSymmetric;
	else
		throw ParseError("unsupported symmetry '" + sym + "'", lineno);
	if (h.format == MmFormat::Array && h.field == MmField::Pattern)
		throw ParseError("array format cannot use the pattern field", lineno);
	return h;
}

SparseMatrix read_coordinate(LineReader& reader, const MmHeader& h) {
	std::string line;
	if (!reader.next_data(line))
		throw ParseError("missing size line", reader.line() + 1);
	const auto size = tokens(line);
	if (size.size() != 3)
		throw ParseError("coordinate size line must be 'rows cols nnz'", reader.line());
	const std::size_t rows = parse_index(size[0], reader.line(), "row count");
	const std::size_t cols = parse_index(size[1], reader.line(), "column count");
	const std::size_t nnz = parse_index(size[2], reader.line(), "entry count");
	if (rows == 0 || cols == 0)
		throw ParseError("dimensions must be positive", reader.line());
	if (h.symmetry != MmSymmetry::General && rows != cols)
		throw ParseError("symmetric storage requires a square matrix", reader.line());

	const std::size_t per_entry = h.field == MmField::Pattern ? 2 : 3;
	std::vector<Triplet> triplets;
	triplets.reserve(h.symmetry == MmSymmetry::General ? nnz : 2 * nnz);
	for (std::size_t e = 0; e < nnz; ++e) {
		if (!reader.next_data(line))
			throw ParseError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(e),
			                 reader.line());
		const auto t = tokens(line);
		if (t.size() != per_entry)
			throw ParseError("entry must have " + std::to_string(per_entry) + " fields", reader.line());
		const std::size_t i = parse_index(t[0], reader.line(), "row index");
		const std::size_t j = parse_index(t[1], reader.line(), "column index");
		if (i < 1 || i > rows || j < 1 || j > cols)
			throw ParseError("index (" + std::string(t[0]) + ", " + std::string(t[1]) + ") outside " +
			                     std::to_string(rows) + "x" + std::to_string(cols),
			                 reader.line());
		double v = per_entry == 3 ? parse_value(t[2], reader.line()) : 1.0;
		if (h.field == MmField::Integer && v != std::trunc(v))
			throw ParseError("integer field holds a non-integer value", reader.line());
		if (h.symmetry != MmSymmetry::General && j > i)
			throw ParseError("symmetric storage must list the lower triangle only", reader.line());
		if (h.symmetry == MmSymmetry::SkewSymmetric && i == j)
			v = 0.0;
		triplets.push_back({i - 1, j - 1, v});
		if (h.symmetry != MmSymmetry::General && i != j)
			triplets.push_back({j - 1, i - 1, h.symmetry == MmSymmetry::SkewSymmetric ? -v : v});
	}
	if (reader.next_data(line))
		throw ParseError("more entries than the declared " + std::to_string(nnz), reader.line());
	return SparseMatrix::from_triplets(rows, cols, std::move(triplets));
}

DenseMatrix read_array(LineReader& reader, const MmHeader& h) {
	std::string line;
	if (!reader.next_data(line))
		throw ParseError("missing size line", reader.line() + 1);
	const auto size = tokens(line);
	if (size.size() != 2)
		throw ParseError("array size line must be 'rows cols'", reader.line());
	const std::size_t rows = parse_index(size[0], reader.line(), "row count");
	const std::size_t cols = parse_index(size[1], reader.line(), "column count");
	if (rows == 0 || cols == 0)
		throw ParseError("dimensions must be positive", reader.line());
	if (h.symmetry != MmSymmetry::General && rows != cols)
		throw ParseError("symmetric storage requires a square matrix", reader.line());

	DenseMatrix a(rows, cols);
	// Column-major; symmetric variants store the lower triangle (strictly lower for skew).
	for (std::size_t j = 0; j < cols; ++j) {
		const std::size_t first = h.symmetry == MmSymmetry::General        ? 0
		                          : h.symmetry == MmSymmetry::SkewSymmetric ? j + 1
		                                                                    : j;
		for (std::size_t i = first; i < rows; ++i) {
			if (!reader.next_data(line))
				throw ParseError("array data ends early", reader.line());
			const auto t = tokens(line);
			if (t.size() != 1)
				throw ParseError("array entry must hold exactly one value", reader.line());
			const double v = parse_value(t[0], reader.line());
			if (h.field == MmField::Integer && v != std::trunc(v))
				throw ParseError("integer field holds a non-integer value", reader.line());
			a(i, j) = v;
			if (i != j && h.symmetry == MmSymmetry::Symmetric)
				a(j, i) = v;
			if (h.symmetry == MmSymmetry::SkewSymmetric)
				a(j, i) = -v;
		}
	}
	if (reader.next_data(line))
		throw ParseError("trailing data after array entries", reader.line());
	return a;
}

std::string format_double(double v) {
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	return buf;
}

template <class Matrix>
void write_file(const std::filesystem::path& path, const Matrix& a) {
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw IoError("cannot open '" + path.string() + "' for writing");
	write_matrix_market(out, a);
	out.flush();
	if (!out)
		throw IoError("write to '" + path.string() + "' failed");
}

} // namespace

MmMatrix read_matrix_market(std::istream& in) {
	LineReader reader(in);
	std::string line;
	if (!reader.next_raw(line))
		throw ParseError("empty input", 1);
	const MmHeader h = parse_banner(line, reader.line());
	if (h.format == MmFormat::Coordinate)
		return read_coordinate(reader, h);
	return read_array(reader, h);
}

MmMatrix read_matrix_market(const std::filesystem::path& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw IoError("cannot open '" + path.string() + "' for reading");
	return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& a) {
	out << "%%MatrixMarket matrix coordinate real general\n";
	out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
	const auto row_ptr = a.row_ptr();
	const auto col_idx = a.col_idx();
	const auto values = a.values();
	for (std::size_t i = 0; i < a.rows(); ++i)
		for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
			out << i + 1 << ' ' << col_idx[p] + 1 << ' ' << format_double(values[p]) << '\n';
}

void write_matrix_market(std::ostream& out, const DenseMatrix& a) {
	out << "%%MatrixMarket matrix array real general\n";
	out << a.rows() << ' ' << a.cols() << '\n';
	for (double v : a.data())
		out << format_double(v) << '\n';
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a) {
	write_file(path, a);
}

void write_matrix_market(const std::filesystem::path& path, const DenseMatrix& a) {
	write_file(path, a);
}

} // namespace lowrank
