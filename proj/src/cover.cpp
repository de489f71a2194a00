#include "whitdim/cover.hpp"

#include <set>

namespace whitdim {

WeylInvariantForm::WeylInvariantForm(IntMat gram) : gram_(std::move(gram)) {
  const std::size_t d = gram_.size();
  if (d == 0 || !is_square(gram_, d)) fail(ErrorKind::malformed, "bq must be a non-empty square matrix");
  for (std::size_t i = 0; i < d; ++i) {
    if (!mpz_even_p(gram_[i][i].get_mpz_t()))
      fail(ErrorKind::constraint, "bq must have even diagonal so that Q is integer valued");
    for (std::size_t j = 0; j < i; ++j)
      if (gram_[i][j] != gram_[j][i]) fail(ErrorKind::constraint, "bq must be symmetric");
  }
}

Int WeylInvariantForm::bilinear(const IntVec& a, const IntVec& b) const {
  return dot(a, multiply(gram_, b));
}

Int WeylInvariantForm::quadratic(const IntVec& y) const { return bilinear(y, y) / 2; }

bool WeylInvariantForm::is_invariant_under(const IntMat& m) const {
  return multiply(transpose(m), multiply(gram_, m)) == gram_;
}

bool is_prime_power(const Int& q, Int* prime) {
  if (q < 2) return false;
  Int rest = q;
  Int p = 2;
  while (p * p <= rest && !mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) ++p;
  if (!mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) p = rest;
  while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) rest /= p;
  if (rest != 1) return false;
  if (prime) *prime = p;
  return true;
}

CoverSpec::CoverSpec(BasedRootDatum datum, WeylInvariantForm form, Int n, Int q)
    : datum_(std::move(datum)), form_(std::move(form)), n_(std::move(n)), q_(std::move(q)) {
  if (form_.rank() != datum_.rank())
    fail(ErrorKind::malformed, "bq size does not match the root datum rank");
  if (n_ < 1) fail(ErrorKind::constraint, "cover degree n must be positive");
  if (!is_prime_power(q_, &p_)) fail(ErrorKind::constraint, "q must be a prime power");
  if (!mpz_divisible_p(Int(q_ - 1).get_mpz_t(), n_.get_mpz_t()))
    fail(ErrorKind::constraint, "n must divide q-1 (n = " + to_string(n_) + ", q = " + to_string(q_) + ")");
  for (const auto& s : datum_.simple_reflections())
    if (!form_.is_invariant_under(s))
      fail(ErrorKind::constraint, "bq is not invariant under the Weyl group");
  if (!form_.is_invariant_under(fr().matrix()))
    fail(ErrorKind::constraint, "bq is not invariant under Frobenius");
}

WeylInvariantForm form_from_glr_invariants(std::size_t r, const Int& bold_p, const Int& bold_q) {
  if (r == 0) fail(ErrorKind::constraint, "GL_r needs r >= 1");
  IntMat g = zero_matrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) g[i][j] = i == j ? Int(2 * bold_p) : bold_q;
  return WeylInvariantForm(std::move(g));
}

WeylInvariantForm form_from_coroot_values(const BasedRootDatum& rd, const std::vector<Int>& values) {
  const std::size_t l = rd.semisimple_rank();
  if (values.size() != l) fail(ErrorKind::malformed, "one Q value per simple coroot is required");
  if (l != rd.rank()) fail(ErrorKind::constraint, "simple coroots must form a basis of Y");
  IntMat basis(l);
  for (std::size_t i = 0; i < l; ++i) basis[i] = rd.simple_coroot(i);
  if (abs(determinant(basis)) != 1) fail(ErrorKind::constraint, "simple coroots must form a Z-basis of Y");
  const IntMat cartan = rd.cartan_matrix();
  IntMat g = zero_matrix(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) g[i][j] = values[i] * cartan[i][j];
  // Rows of `basis` are the coroots: B_std = S^{-1} G S^{-T}.
  const IntMat s_inv = integer_inverse(basis);
  WeylInvariantForm form(multiply(s_inv, multiply(g, transpose(s_inv))));
  for (const auto& s : rd.simple_reflections())
    if (!form.is_invariant_under(s)) fail(ErrorKind::constraint, "coroot values do not give a Weyl-invariant form");
  return form;
}

std::optional<GLrCoverInvariants> glr_invariants(const CoverSpec& cover) {
  const std::size_t r = cover.datum().rank();
  const BasedRootDatum gl = build_glr(r);
  auto as_set = [](const IntMat& m) { return std::set<IntVec>(m.begin(), m.end()); };
  if (as_set(gl.coroots()) != as_set(cover.datum().coroots()) ||
      as_set(gl.roots()) != as_set(cover.datum().roots()))
    return std::nullopt;
  const IntMat& g = cover.form().gram();
  GLrCoverInvariants inv{g[0][0] / 2, r > 1 ? g[0][1] : Int(0)};
  if (form_from_glr_invariants(r, inv.bold_p, inv.bold_q).gram() != g) return std::nullopt;
  return inv;
}

std::vector<Int> q_of_coroot(const WeylInvariantForm& form, const BasedRootDatum& rd) {
  std::vector<Int> out;
  for (std::size_t i = 0; i < rd.semisimple_rank(); ++i) out.push_back(form.quadratic(rd.simple_coroot(i)));
  return out;
}

Int q_of_e0(std::size_t r, const Int& bold_p, const Int& bold_q) {
  const Int rr = static_cast<unsigned long>(r);
  return rr * bold_p + rr * (rr - 1) / 2 * bold_q;
}

Int m_qr(std::size_t r, const Int& bold_p, const Int& bold_q) {
  if (r == 0) fail(ErrorKind::constraint, "GL_r needs r >= 1");
  return 2 * bold_p + Int(static_cast<unsigned long>(r - 1)) * bold_q;
}

GLrFamilyTag classify_glr_family(const Int& bold_p, const Int& bold_q) {
  Int v = 2 * bold_p - bold_q;
  if (v == 0) return {GLrFamily::determinantal, v};
  if (v == -1) return {GLrFamily::kazhdan_patterson, v};
  if (v == -2) return {GLrFamily::savin, v};
  return {GLrFamily::other, v};
}

std::string to_string(GLrFamily family) {
  switch (family) {
    case GLrFamily::determinantal: return "determinantal";
    case GLrFamily::kazhdan_patterson: return "kazhdan_patterson";
    case GLrFamily::savin: return "savin";
    case GLrFamily::other: return "other";
  }
  return "other";
}

Sublattice y_qn(const CoverSpec& cover) {
  const std::size_t d = cover.datum().rank();
  if (cover.n() == 1) return Sublattice::full(d);
  // y in Y_{Q,n}  <=>  B y ≡ 0 (mod n)  <=>  (B y, n k) = 0 for some k.
  // Kernel of [B | n I] projected to the y-part.
  IntMat system = zero_matrix(d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) system[i][j] = cover.form().gram()[i][j];
    system[i][d + i] = cover.n();
  }
  const Sublattice kernel = integer_kernel(2 * d, system);
  IntMat ys;
  for (const auto& v : kernel.basis()) ys.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(d));
  return hermite_normal_form(d, ys);
}

Sublattice frobenius_fixed(const CoverSpec& cover) {
  const IntMat fr = cover.fr().matrix();
  return fixed_sublattice(cover.datum().rank(), std::span<const IntMat>(&fr, 1));
}

Int central_index(const CoverSpec& cover) {
  const Sublattice fixed = frobenius_fixed(cover);
  return *index(fixed, intersect(fixed, y_qn(cover)));
}

}  // namespace whitdim
