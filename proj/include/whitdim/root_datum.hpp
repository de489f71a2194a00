#pragma once

// Based root data (X, Φ, Δ, Y, Φ^∨, Δ^∨) with a Frobenius action, realized
// concretely: X = Y = Z^d with the dot-product pairing, roots in
// X-coordinates, coroots in Y-coordinates.

#include "whitdim/lattice.hpp"

namespace whitdim {

/// Frobenius action on Y. The action on X is the inverse transpose and is
/// always derived, never stored.
class FrobeniusAction {
public:
  static constexpr int default_order_bound = 24;

  /// Throws constraint if the matrix is not of finite order <= order_bound.
  explicit FrobeniusAction(IntMat matrix, int order_bound = default_order_bound);
  static FrobeniusAction trivial(std::size_t d);

  const IntMat& matrix() const { return matrix_; }
  int order() const { return order_; }
  /// Inverse transpose of the Y-action.
  IntMat x_action() const;
  bool is_trivial() const { return order_ == 1; }

private:
  IntMat matrix_;
  int order_ = 1;
};

class BasedRootDatum {
public:
  /// Validates pairing values, closure of Φ^∨ and Φ under simple reflections,
  /// and compatibility of the Frobenius with roots and the simple set.
  /// Violations throw ErrorKind::constraint; shape errors ErrorKind::malformed.
  BasedRootDatum(std::size_t rank, IntMat roots, IntMat coroots, std::vector<std::size_t> simple,
                 FrobeniusAction fr);
  BasedRootDatum(std::size_t rank, IntMat roots, IntMat coroots, std::vector<std::size_t> simple);

  std::size_t rank() const { return rank_; }
  const IntMat& roots() const { return roots_; }
  const IntMat& coroots() const { return coroots_; }
  const std::vector<std::size_t>& simple_indices() const { return simple_; }
  std::size_t semisimple_rank() const { return simple_.size(); }
  const FrobeniusAction& frobenius() const { return fr_; }

  IntVec simple_root(std::size_t i) const { return roots_[simple_[i]]; }
  IntVec simple_coroot(std::size_t i) const { return coroots_[simple_[i]]; }

  /// Matrix on Y of the reflection y -> y - <α, y> α^∨ for root index k.
  IntMat reflection(std::size_t k) const;
  std::vector<IntMat> simple_reflections() const;
  /// Cartan matrix C[i][j] = <α_i, α_j^∨> over the simple roots.
  IntMat cartan_matrix() const;

  /// Same datum with another Frobenius (re-validated).
  BasedRootDatum with_frobenius(FrobeniusAction fr) const;

private:
  void validate() const;

  std::size_t rank_;
  IntMat roots_;
  IntMat coroots_;
  std::vector<std::size_t> simple_;
  FrobeniusAction fr_;
};

/// Complete list of Weyl group elements as matrices on Y, identity first.
struct WeylGroup {
  std::vector<IntMat> elements;
  std::size_t size() const { return elements.size(); }
};

/// |W| is capped (default 8!) and the semisimple rank must not exceed 8.
inline constexpr std::size_t default_weyl_size_limit = 40320;

WeylGroup weyl_group(const BasedRootDatum& rd, std::size_t size_limit = default_weyl_size_limit);

Sublattice coroot_lattice(const BasedRootDatum& rd);
bool is_derived_simply_connected(const BasedRootDatum& rd);

// Standard split data. GL_r and Sp_2r use the standard coordinates e_i;
// SL_r uses the simple coroots as the basis of Y.
BasedRootDatum build_glr(std::size_t r);
BasedRootDatum build_slr(std::size_t r);
BasedRootDatum build_sp2r(std::size_t r);
BasedRootDatum build_torus(std::size_t d, const IntMat& fr);
BasedRootDatum build_torus(std::size_t d);

}  // namespace whitdim
