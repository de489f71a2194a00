#pragma once

// Weyl- and Frobenius-invariant quadratic forms on Y, the degree-n cover
// data (Q, n, q), and the lattice-theoretic invariants derived from them.

#include "whitdim/root_datum.hpp"

#include <string>
#include <variant>

namespace whitdim {

/// Even symmetric bilinear form B on Y; Q(y) = B(y, y) / 2.
class WeylInvariantForm {
public:
  /// Checks symmetry and even diagonal. Invariance is checked against a
  /// datum by CoverSpec (or by is_invariant_under).
  explicit WeylInvariantForm(IntMat gram);

  const IntMat& gram() const { return gram_; }
  std::size_t rank() const { return gram_.size(); }
  Int bilinear(const IntVec& a, const IntVec& b) const;
  Int quadratic(const IntVec& y) const;
  bool is_invariant_under(const IntMat& m) const;

  friend bool operator==(const WeylInvariantForm&, const WeylInvariantForm&) = default;

private:
  IntMat gram_;
};

/// True iff `q` is a prime power; `prime` receives the prime.
bool is_prime_power(const Int& q, Int* prime = nullptr);

/// A cover datum: root datum with Frobenius, invariant form, degree n, and
/// residue field size q. Construction enforces n | q-1, q a prime power, and
/// invariance of the form under the simple reflections and Frobenius.
class CoverSpec {
public:
  CoverSpec(BasedRootDatum datum, WeylInvariantForm form, Int n, Int q);

  const BasedRootDatum& datum() const { return datum_; }
  const FrobeniusAction& fr() const { return datum_.frobenius(); }
  const WeylInvariantForm& form() const { return form_; }
  const Int& n() const { return n_; }
  const Int& q() const { return q_; }
  /// Residue characteristic.
  const Int& p() const { return p_; }

private:
  BasedRootDatum datum_;
  WeylInvariantForm form_;
  Int n_;
  Int q_;
  Int p_;
};

struct GLrCoverInvariants {
  Int bold_p;  // Q(e_i)
  Int bold_q;  // B(e_i, e_j), i != j
  friend bool operator==(const GLrCoverInvariants&, const GLrCoverInvariants&) = default;
};

/// Gram matrix with diagonal 2p and off-diagonal q on Z^r.
WeylInvariantForm form_from_glr_invariants(std::size_t r, const Int& bold_p, const Int& bold_q);

/// Form on a datum whose simple coroots form a Z-basis of Y, from the values
/// Q(α_i^∨), using B(α_i^∨, α_j^∨) = Q(α_i^∨) <α_i, α_j^∨>. Throws constraint
/// if the values do not define a symmetric invariant form.
WeylInvariantForm form_from_coroot_values(const BasedRootDatum& rd, const std::vector<Int>& values);

/// (p, q) if the cover's datum is the standard GL_r datum and its form has
/// constant diagonal and constant off-diagonal entries.
std::optional<GLrCoverInvariants> glr_invariants(const CoverSpec& cover);

/// Q(α_i^∨) for each simple coroot, in simple-index order.
std::vector<Int> q_of_coroot(const WeylInvariantForm& form, const BasedRootDatum& rd);
/// Q(e_0) = r p + C(r, 2) q for e_0 = e_1 + ... + e_r.
Int q_of_e0(std::size_t r, const Int& bold_p, const Int& bold_q);
/// m_{Q,r} = 2p + (r - 1) q = B(e_0, e_i).
Int m_qr(std::size_t r, const Int& bold_p, const Int& bold_q);

enum class GLrFamily { determinantal, kazhdan_patterson, savin, other };

struct GLrFamilyTag {
  GLrFamily family;
  Int value;  // 2p - q
};

GLrFamilyTag classify_glr_family(const Int& bold_p, const Int& bold_q);
std::string to_string(GLrFamily family);

/// Y_{Q,n} = {y : B(y, y') in nZ for all y'}.
Sublattice y_qn(const CoverSpec& cover);
/// Y^Fr.
Sublattice frobenius_fixed(const CoverSpec& cover);
/// #(Y^Fr / Y^Fr ∩ Y_{Q,n}).
Int central_index(const CoverSpec& cover);

}  // namespace whitdim
