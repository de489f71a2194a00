#pragma once

// Dual-side Lusztig parameters and the Whittaker dimension
// [Y^{W⋊Fr} : Y_{x,ρ}]: orbit search, the closed GL_r formula, a brute-force
// oracle for it, and the squeeze bounds.

#include "whitdim/cover.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace whitdim {

/// θ^∨ ∈ X ⊗ Q/Z for the torus twisted by w, entries normalized into [0, 1).
/// The central X'-coordinate is carried separately; W does not act on it.
struct LusztigParameter {
  IntMat w;
  RatVec theta;
  Rat central_exponent;
};

/// Character of F_{q^r}^× given by the exponent a of θ^∨_1 against a
/// primitive (q^r - 1)-th root of unity.
struct GLrCharacter {
  std::size_t r;
  Int q;
  Int a;
};

/// Entrywise reduction modulo 1.
RatVec reduce_mod_one(RatVec v);

/// The Coxeter cycle e_i -> e_{i+1 mod r} on Z^r.
IntMat glr_coxeter_element(std::size_t r);
/// Product of the simple reflections in index order.
IntMat coxeter_element(const BasedRootDatum& rd);

/// Frobenius twisted by w, as a matrix on Y: w · Fr.
IntMat twisted_frobenius(const CoverSpec& cover, const IntMat& w);

/// Checks q θ ≡ Fr_w^{-1}(θ) mod 1, denominators prime to p, and
/// q c ≡ c mod 1 for the central exponent. Throws constraint on failure.
void validate_parameter(const CoverSpec& cover, const LusztigParameter& param);

/// θ_i = a q^{i-1} / (q^r - 1) mod 1, w the r-cycle, central exponent 1/n.
LusztigParameter glr_coxeter_parameter(std::size_t r, const Int& q, const Int& a, const Int& n = 1);

/// All parameters (w, θ) solving the twisted Frobenius equation, in a
/// deterministic order. Throws constraint if there are more than `limit`.
std::vector<LusztigParameter> lusztig_parameters(const CoverSpec& cover, const IntMat& w,
                                                 const Int& limit = 1000000);

/// ξ_y = (B y) / n mod 1. Throws constraint if y is not W⋊Fr-fixed.
RatVec xi_of(const CoverSpec& cover, const IntVec& y);

/// a (q^s - 1) ≢ 0 mod q^r - 1 for all 1 <= s < r.
bool is_general_position(const GLrCharacter& chi);

/// Y^{W⋊Fr}: vectors fixed by every simple reflection and by Frobenius.
Sublattice weyl_frobenius_fixed(const CoverSpec& cover);
/// Y^W.
Sublattice weyl_fixed(const BasedRootDatum& rd);

struct YxRho {
  Sublattice lattice;
  Int index;
};

/// Precomputes the Weyl group and the lattices Y^{W⋊Fr} ⊇ Y^{W⋊Fr} ∩ Y_{Q,n}
/// for repeated orbit searches over parameters of one cover.
class WhittakerContext {
public:
  explicit WhittakerContext(CoverSpec cover);

  const CoverSpec& cover() const { return cover_; }
  const WeylGroup& weyl() const { return weyl_; }
  const Sublattice& fixed() const { return fixed_; }
  const Sublattice& fixed_qn() const { return fixed_qn_; }

  /// No nonidentity element of W^{Fr_w} fixes θ mod 1.
  bool is_general_position(const LusztigParameter& param) const;
  /// Y_{x,ρ} = {y ∈ Y^{W⋊Fr} : θ + ξ_y is W-conjugate to θ}.
  YxRho y_x_rho(const LusztigParameter& param) const;

private:
  const std::vector<std::size_t>& twisted_centralizer(const IntMat& w) const;
  std::size_t weyl_position(const IntMat& w) const;
  bool general_position_scaled(const IntMat& w, const IntVec& num, const Int& den) const;

  CoverSpec cover_;
  WeylGroup weyl_;
  std::vector<IntMat> x_actions_;  // (w^{-1})^T for each Weyl element
  std::map<IntMat, std::size_t> positions_;
  Sublattice fixed_;
  Sublattice fixed_qn_;
  std::vector<IntVec> coset_reps_;
  std::vector<IntVec> coset_xi_;  // n · ξ_y for each representative
  std::unique_ptr<CosetReducer> reducer_;

  mutable std::mutex cache_mutex_;
  mutable std::map<IntMat, std::vector<std::size_t>> centralizers_;
  // Keyed by the indices of the passing coset representatives.
  mutable std::map<std::vector<std::size_t>, YxRho> subgroups_;
};

bool is_general_position(const CoverSpec& cover, const LusztigParameter& param);
YxRho y_x_rho(const CoverSpec& cover, const LusztigParameter& param);

/// min{k >= 1 : ∃ s ∈ [0, r), m k (q^r-1)/n ≡ a (q^s - 1) mod q^r - 1},
/// solved as a linear congruence per s.
Int wh_dim_glr_closed(std::size_t r, const Int& q, const Int& n, const Int& bold_p,
                      const Int& bold_q, const Int& a);

/// Direct scan over k = 1..n comparing e^{2πi m k/n} θ_1 with θ_1^{q^s} as
/// exact exponents mod 1.
Int wh_dim_oracle(std::size_t r, const Int& q, const Int& n, const Int& bold_p, const Int& bold_q,
                  const Int& a);

struct SqueezeBounds {
  Int lower;  // [Y^{W⋊Fr} : (Y^W)^Fr_{Q,n}]
  Int upper;  // [Y^{W⋊Fr} : Y^{W⋊Fr} ∩ Y_{Q,n}]
};

SqueezeBounds squeeze_bounds(const CoverSpec& cover);

/// The GL_r cover with invariants (p, q) of degree n over F_q, trivial Frobenius.
CoverSpec glr_cover(std::size_t r, const Int& q, const Int& n, const Int& bold_p, const Int& bold_q);

struct GLrClassRow {
  Int representative;
  std::size_t class_size;
  Int dimension;
};

struct GLrTable {
  std::vector<GLrClassRow> rows;
  std::map<Int, std::size_t> histogram;  // dimension -> number of classes
};

inline constexpr long default_table_bound = 1000000;

GLrTable enumerate_glr_table(std::size_t r, const Int& q, const Int& n, const Int& bold_p,
                             const Int& bold_q, const Int& bound = default_table_bound);

}  // namespace whitdim
