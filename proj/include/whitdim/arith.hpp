#pragma once

// Exact integer/rational scalars, dense matrices over them, and the error type
// shared by every module.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace whitdim {

using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row-major, rows of equal length
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

/// Classifies failures so front ends can map them onto distinct exit codes.
enum class ErrorKind {
  malformed,             // input that cannot be parsed or has the wrong shape
  constraint,            // well-formed input violating a mathematical invariant
  not_general_position,  // a character parameter with nontrivial stabilizer
  internal,              // a consistency check inside an algorithm failed
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

// Scalars ------------------------------------------------------------------

/// Parses "p/q", "-p/q", "+p", "p". Throws ErrorKind::malformed otherwise.
Rat parse_rational(std::string_view text);
/// Parses a comma-separated list of rationals ("1/2,-1/2").
RatVec parse_rational_list(std::string_view text);

std::string to_string(const Int& v);
std::string to_string(const Rat& v);

/// Representative of v modulo 1 in [0, 1).
Rat frac(const Rat& v);
bool is_integer(const Rat& v);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
/// Floor division for any sign of b != 0.
Int floor_div(const Int& a, const Int& b);
/// Least non-negative residue of a modulo m > 0.
Int mod(const Int& a, const Int& m);

// Matrices -----------------------------------------------------------------

IntMat identity(std::size_t d);
IntMat zero_matrix(std::size_t rows, std::size_t cols);
IntMat transpose(const IntMat& m);
IntMat multiply(const IntMat& a, const IntMat& b);
IntVec multiply(const IntMat& a, const IntVec& v);
RatVec multiply(const IntMat& a, const RatVec& v);
IntMat subtract(const IntMat& a, const IntMat& b);
Int dot(const IntVec& a, const IntVec& b);
Rat dot(const IntVec& a, const RatVec& b);
bool is_zero(const IntVec& v);
bool is_square(const IntMat& m, std::size_t d);
/// Checks that all rows have the given length; throws malformed if ragged.
void require_rectangular(const IntMat& m, std::size_t cols, std::string_view what);

RatMat to_rational(const IntMat& m);
/// Exact inverse of a square integer matrix over the rationals.
/// Throws ErrorKind::constraint when singular.
RatMat inverse(const IntMat& m);
/// Inverse of an integer matrix whose inverse is integral (e.g. unimodular
/// or finite order). Throws ErrorKind::constraint otherwise.
IntMat integer_inverse(const IntMat& m);
Int determinant(const IntMat& m);
/// Rank over the rationals.
std::size_t rank(const IntMat& rows);

}  // namespace whitdim
