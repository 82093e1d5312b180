#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lowrank {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform.
class DimensionError : public Error {
public:
	using Error::Error;
};

/// NaN/Inf or otherwise unusable input data.
class InvalidInputError : public Error {
public:
	using Error::Error;
};

/// Out-of-range algorithm parameter (rank, oversampling, sparsity, ...).
class ParameterError : public Error {
public:
	using Error::Error;
};

/// An iterative factorization did not converge.
class FactorizationError : public Error {
public:
	FactorizationError(const std::string& what, std::size_t iterations)
		: Error(what + " (after " + std::to_string(iterations) + " iterations)"), iterations_(iterations) {}

	std::size_t iterations() const noexcept { return iterations_; }

private:
	std::size_t iterations_;
};

/// Triangular factor too close to singular to be inverted safely.
class IllConditionedError : public Error {
public:
	IllConditionedError(const std::string& what, std::size_t index)
		: Error(what), index_(index) {}

	/// Diagonal position that failed the conditioning guard.
	std::size_t index() const noexcept { return index_; }

private:
	std::size_t index_;
};

class SymmetryError : public Error {
public:
	using Error::Error;
};

/// Input for which the requested quantity is undefined (e.g. relative error of a zero matrix).
class DegenerateInputError : public Error {
public:
	using Error::Error;
};

/// Bound formula evaluated outside its domain (e.g. r < k + 2).
class DomainError : public Error {
public:
	using Error::Error;
};

class ParseError : public Error {
public:
	ParseError(const std::string& what, std::size_t line)
		: Error("line " + std::to_string(line) + ": " + what), line_(line) {}

	std::size_t line() const noexcept { return line_; }

private:
	std::size_t line_;
};

class IoError : public Error {
public:
	using Error::Error;
};

class InsufficientSampleError : public Error {
public:
	using Error::Error;
};

} // namespace lowrank
