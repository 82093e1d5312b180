#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>

#include "lowrank/dense_matrix.hpp"
#include "lowrank/sparse_matrix.hpp"

namespace lowrank {

enum class MmFormat { Coordinate, Array };
enum class MmField { Real, Integer, Pattern };
enum class MmSymmetry { General, Symmetric, SkewSymmetric };

struct MmHeader {
	MmFormat format = MmFormat::Coordinate;
	MmField field = MmField::Real;
	MmSymmetry symmetry = MmSymmetry::General;
};

using MmMatrix = std::variant<SparseMatrix, DenseMatrix>;

/**
 * Parse a Matrix Market stream.
 *
 * Coordinate files become a SparseMatrix (duplicates summed, symmetric storage
 * expanded), array files a DenseMatrix. Integer and pattern fields are read as
 * real values; pattern entries are 1.0. Errors raise ParseError carrying the
 * 1-based line number.
 */
MmMatrix read_matrix_market(std::istream& in);
/// Throws IoError when the file cannot be opened.
MmMatrix read_matrix_market(const std::filesystem::path& path);

/// Coordinate real general, entries in row-major order, 17 significant digits.
void write_matrix_market(std::ostream& out, const SparseMatrix& a);
/// Array real general (column-major, as the format prescribes).
void write_matrix_market(std::ostream& out, const DenseMatrix& a);
void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a);
void write_matrix_market(const std::filesystem::path& path, const DenseMatrix& a);

} // namespace lowrank
