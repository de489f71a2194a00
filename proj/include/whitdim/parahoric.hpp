#pragma once

// Apartment-level root arithmetic at rational points x of (Y ⊗ Q)^Fr:
// the integral roots Φ_x, the residual extension pair (Y ⊕ Z, ι_x), and
// conductor bookkeeping.

#include "whitdim/cover.hpp"

#include <string_view>

namespace whitdim {

/// A rational point of the apartment, with the base point at zero.
struct ApartmentPoint {
  RatVec coords;
};

/// Parses "r_1,...,r_d" with each r_i of the form "p/q" or an integer.
ApartmentPoint parse_point(std::string_view text);

/// Value α(x) of root k at x.
Rat root_value(const BasedRootDatum& rd, std::size_t k, const ApartmentPoint& x);

/// Indices of roots with α(x) ∈ Z. Throws constraint if x is not Fr-fixed.
std::vector<std::size_t> phi_x(const BasedRootDatum& rd, const ApartmentPoint& x);

struct ResidualRootData {
  std::vector<std::size_t> phi_x;
  /// iota[k] = ι_x(α^∨) ∈ Y ⊕ Z for the root phi_x[k]; length rank + 1.
  IntMat iota;
};

/// ι_x(α^∨) = (α^∨, α(x) Q(α^∨)) for α ∈ Φ_x.
ResidualRootData residual_extension(const CoverSpec& cover, const ApartmentPoint& x);

/// Λ_x = span of ι_x(α^∨), α ∈ Φ_x, inside Z^{d+1}.
Sublattice residual_lattice(const CoverSpec& cover, const ApartmentPoint& x);

/// Φ_x = Φ.
bool is_hyperspecial(const BasedRootDatum& rd, const ApartmentPoint& x);
/// Φ_x spans a space of dimension equal to the rank of Φ.
bool is_vertex(const BasedRootDatum& rd, const ApartmentPoint& x);

/// True iff Λ_x is saturated in Z^{d+1}.
bool residual_derived_simply_connected(const CoverSpec& cover, const ApartmentPoint& x);

/// True iff α^∨ -> α(x) Q(α^∨) on Φ_x^∨ extends to a Fr-invariant
/// homomorphism Y -> Z.
bool residual_splits(const CoverSpec& cover, const ApartmentPoint& x);

/// Vertices of the fundamental alcove {α_i(x) >= 0, α_max(x) <= 1} inside
/// the span of the coroots, base point first. Requires an irreducible
/// root system (or none at all, giving just the base point).
std::vector<ApartmentPoint> fundamental_alcove_vertices(const BasedRootDatum& rd);

/// Coefficients of root k in the simple roots.
IntVec simple_root_coefficients(const BasedRootDatum& rd, std::size_t k);

/// Conductor exponents cond_β, one per simple relative root.
struct ConductorVector {
  std::vector<Int> values;
  friend bool operator==(const ConductorVector&, const ConductorVector&) = default;
};

/// Componentwise c_β + val(α(t)).
ConductorVector conductor_shift(const ConductorVector& c, const std::vector<Int>& valuations);

/// The conductors β(x) + 1 forced at a hyperspecial point x.
ConductorVector hyperspecial_conductors(const BasedRootDatum& rd, const ApartmentPoint& x);

}  // namespace whitdim
