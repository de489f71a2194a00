#pragma once

// Integer sublattices of Z^d in canonical row Hermite normal form, with the
// index/quotient/intersection/saturation operations the rest of the library
// is built on.

#include "whitdim/arith.hpp"

#include <optional>
#include <span>

namespace whitdim {

/// A sublattice of Z^d. The basis is kept in row Hermite normal form:
/// positive pivots, zeros below each pivot, entries above a pivot reduced
/// into [0, pivot). Two sublattices are equal iff their bases are equal.
class Sublattice {
public:
  /// The zero lattice in Z^d.
  explicit Sublattice(std::size_t ambient_rank);

  static Sublattice full(std::size_t ambient_rank);
  /// Span of arbitrary integer rows (alias of hermite_normal_form).
  static Sublattice span(std::size_t ambient_rank, const IntMat& rows);

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t rank() const { return basis_.size(); }
  const IntMat& basis() const { return basis_; }
  bool is_zero() const { return basis_.empty(); }
  bool is_full() const;

  bool contains(const IntVec& v) const;
  bool contains(const Sublattice& other) const;
  /// Coordinates of v in the stored basis, or nullopt if v is not in the lattice.
  std::optional<IntVec> coordinates(const IntVec& v) const;

  friend bool operator==(const Sublattice&, const Sublattice&) = default;

private:
  Sublattice(std::size_t ambient_rank, IntMat basis);
  friend Sublattice hermite_normal_form(std::size_t, const IntMat&);

  std::size_t ambient_rank_;
  IntMat basis_;
};

/// Invariant factors d_1 | d_2 | ... (each >= 2) and the free rank of a
/// finitely generated abelian group.
struct FiniteAbelianStructure {
  std::vector<Int> invariant_factors;
  std::size_t free_rank = 0;

  Int torsion_order() const;
  friend bool operator==(const FiniteAbelianStructure&, const FiniteAbelianStructure&) = default;
};

/// Result of reducing a matrix with a unimodular row transform:
/// transform * input == reduced, and reduced is in row Hermite normal form
/// with its zero rows at the bottom.
struct RowReduction {
  IntMat reduced;
  IntMat transform;
  std::size_t rank = 0;
};

RowReduction hermite_reduce(std::size_t cols, const IntMat& rows);

/// Canonical sublattice spanned by rows of length d. Ragged rows are malformed.
Sublattice hermite_normal_form(std::size_t d, const IntMat& rows);
Sublattice hermite_normal_form(const IntMat& rows);

/// Diagonal entries of the Smith normal form of an integer matrix (nonzero
/// entries only, in divisibility order).
std::vector<Int> smith_diagonal(const IntMat& m);

/// Structure of the quotient sup/sub. Requires sub ⊆ sup.
FiniteAbelianStructure smith_invariants(const Sublattice& sup, const Sublattice& sub);

/// [sup : sub]; nullopt stands for an infinite index (rank drop). Requires sub ⊆ sup.
std::optional<Int> index(const Sublattice& sup, const Sublattice& sub);

Sublattice intersect(const Sublattice& a, const Sublattice& b);
Sublattice sum(const Sublattice& a, const Sublattice& b);

Sublattice saturation(const Sublattice& l);
bool is_saturated(const Sublattice& l);

/// Integer kernel {y in Z^d : A y = 0} of an m x d matrix.
Sublattice integer_kernel(std::size_t d, const IntMat& a);

/// Joint fixed lattice of a family of d x d integer matrices acting on Z^d.
Sublattice fixed_sublattice(std::size_t d, std::span<const IntMat> endomorphisms);

/// Some integer solution x of A x = b, or nullopt if none exists.
std::optional<IntVec> solve_integer_system(std::size_t unknowns, const IntMat& a, const IntVec& b);

/// Coset representatives of sup/sub, each expressed as an ambient vector.
/// Requires sub ⊆ sup of finite index. Throws constraint if the index exceeds
/// `limit`.
std::vector<IntVec> coset_representatives(const Sublattice& sup, const Sublattice& sub,
                                          const Int& limit);

/// Reduces sup-coordinates modulo sub (both given with sub ⊆ sup of finite
/// index); equal outputs mean equal cosets.
class CosetReducer {
public:
  CosetReducer(const Sublattice& sup, const Sublattice& sub);
  /// Canonical representative (in sup-coordinates) of the coset of v in sup/sub.
  IntVec reduce(const IntVec& ambient_vector) const;
  const Sublattice& sup() const { return sup_; }

private:
  Sublattice sup_;
  IntMat sub_coords_;  // HNF of sub in sup-coordinates, full rank
};

}  // namespace whitdim
