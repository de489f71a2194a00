#include "whitdim/whittaker.hpp"

#include <set>

namespace whitdim {

namespace {

const Int coset_limit = 1000000;

Int power(const Int& base, std::size_t e) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

bool divides(const Int& d, const Int& v) { return mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()) != 0; }

// {y ∈ sup : f · y ≡ 0 (mod n) for every functional row f}.
Sublattice congruence_sublattice(const Sublattice& sup, const IntMat& functionals, const Int& n) {
  const std::size_t r = sup.rank();
  const std::size_t j = functionals.size();
  if (r == 0 || j == 0 || n == 1) return sup;
  // Unknowns (c, k) with Σ_i c_i (f · l_i) + n k = 0.
  IntMat system = zero_matrix(j, r + j);
  for (std::size_t f = 0; f < j; ++f) {
    for (std::size_t i = 0; i < r; ++i) system[f][i] = dot(functionals[f], sup.basis()[i]);
    system[f][r + f] = n;
  }
  const Sublattice kernel = integer_kernel(r + j, system);
  IntMat vectors;
  for (const auto& sol : kernel.basis()) {
    IntVec v(sup.ambient_rank(), Int(0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t t = 0; t < v.size(); ++t) v[t] += sol[i] * sup.basis()[i][t];
    vectors.push_back(std::move(v));
  }
  return hermite_normal_form(sup.ambient_rank(), vectors);
}

void require_glr_inputs(std::size_t r, const Int& q, const Int& n, const Int& a) {
  if (r == 0) fail(ErrorKind::constraint, "GL_r needs r >= 1");
  if (!is_prime_power(q)) fail(ErrorKind::constraint, "q must be a prime power");
  if (n < 1) fail(ErrorKind::constraint, "cover degree n must be positive");
  if (!divides(n, Int(q - 1)))
    fail(ErrorKind::constraint, "n must divide q-1 (n = " + to_string(n) + ", q = " + to_string(q) + ")");
  const Int big_n = power(q, r) - 1;
  if (a < 0 || a >= big_n)
    fail(ErrorKind::constraint, "character exponent a must satisfy 0 <= a < q^r - 1 = " + to_string(big_n));
}

void require_general_position(const GLrCharacter& chi) {
  if (!is_general_position(chi))
    fail(ErrorKind::not_general_position,
         "a = " + to_string(chi.a) + " is not in general position (fixed by a nontrivial power of Frobenius)");
}

// θ as integer numerators over a common denominator, entries in [0, den).
struct ScaledTheta {
  IntVec num;
  Int den;
};

ScaledTheta scale(const RatVec& theta, const Int& extra_den) {
  Int den = extra_den;
  for (const auto& t : theta) den = lcm(den, Int(t.get_den()));
  ScaledTheta out{IntVec(theta.size()), den};
  for (std::size_t i = 0; i < theta.size(); ++i)
    out.num[i] = mod(theta[i].get_num() * (den / theta[i].get_den()), den);
  return out;
}

IntVec act_mod(const IntMat& m, const IntVec& v, const Int& den) {
  IntVec out = multiply(m, v);
  for (auto& x : out) x = mod(x, den);
  return out;
}


}  // namespace

RatVec reduce_mod_one(RatVec v) {
  for (auto& x : v) x = frac(x);
  return v;
}

IntMat glr_coxeter_element(std::size_t r) {
  IntMat w = zero_matrix(r, r);
  for (std::size_t i = 0; i < r; ++i) w[(i + 1) % r][i] = 1;
  return w;
}

IntMat coxeter_element(const BasedRootDatum& rd) {
  IntMat w = identity(rd.rank());
  for (const auto& s : rd.simple_reflections()) w = multiply(w, s);
  return w;
}

IntMat twisted_frobenius(const CoverSpec& cover, const IntMat& w) {
  return multiply(w, cover.fr().matrix());
}

void validate_parameter(const CoverSpec& cover, const LusztigParameter& param) {
  const std::size_t d = cover.datum().rank();
  if (!is_square(param.w, d)) fail(ErrorKind::malformed, "Weyl element has the wrong size");
  if (param.theta.size() != d) fail(ErrorKind::malformed, "θ has the wrong number of entries");
  // Fr_w^{-1} on X is the transpose of Fr_w on Y.
  const IntMat fr_w_inv_x = transpose(twisted_frobenius(cover, param.w));
  const ScaledTheta theta = scale(param.theta, 1);
  const IntVec rhs = multiply(fr_w_inv_x, theta.num);
  for (std::size_t i = 0; i < d; ++i)
    if (!divides(theta.den, cover.q() * theta.num[i] - rhs[i]))
      fail(ErrorKind::constraint, "θ does not satisfy q·θ ≡ Fr_w^{-1}(θ) mod 1");
  for (const auto& x : param.theta)
    if (divides(cover.p(), x.get_den()))
      fail(ErrorKind::constraint, "θ has a denominator divisible by the residue characteristic");
  if (!is_integer(Rat(param.central_exponent * cover.q() - param.central_exponent)))
    fail(ErrorKind::constraint, "central exponent is not fixed by q-th powers");
}

LusztigParameter glr_coxeter_parameter(std::size_t r, const Int& q, const Int& a, const Int& n) {
  if (r == 0) fail(ErrorKind::constraint, "GL_r needs r >= 1");
  if (q < 2) fail(ErrorKind::constraint, "q must be at least 2");
  if (n < 1) fail(ErrorKind::constraint, "cover degree n must be positive");
  const Int big_n = power(q, r) - 1;
  if (a < 0 || a >= big_n)
    fail(ErrorKind::constraint, "character exponent a must satisfy 0 <= a < q^r - 1 = " + to_string(big_n));
  LusztigParameter out{glr_coxeter_element(r), RatVec(r), frac(Rat(Int(1), n))};
  Int qi = 1;
  for (std::size_t i = 0; i < r; ++i) {
    Rat t(Int(a * qi), big_n);
    t.canonicalize();
    out.theta[i] = frac(t);
    qi *= q;
  }
  // Postcondition: q θ_i ≡ θ_{i+1} (indices mod r).
  for (std::size_t i = 0; i < r; ++i)
    if (!is_integer(Rat(q * out.theta[i] - out.theta[(i + 1) % r])))
      fail(ErrorKind::internal, "Coxeter parameter violates the Frobenius equation");
  return out;
}

std::vector<LusztigParameter> lusztig_parameters(const CoverSpec& cover, const IntMat& w,
                                                 const Int& limit) {
  const std::size_t d = cover.datum().rank();
  if (!is_square(w, d)) fail(ErrorKind::malformed, "Weyl element has the wrong size");
  // A θ ∈ Z^d with A = q I - Fr_w^{-1}; θ ranges over A^{-1} Z^d / Z^d ≅ Z^d / A Z^d.
  IntMat a = transpose(twisted_frobenius(cover, w));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a[i][j] = (i == j ? cover.q() : Int(0)) - a[i][j];
  const RatMat a_inv = inverse(a);
  const Sublattice image = hermite_normal_form(d, transpose(a));
  std::vector<LusztigParameter> out;
  for (const auto& z : coset_representatives(Sublattice::full(d), image, limit)) {
    RatVec theta(d, Rat(0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) theta[i] += a_inv[i][j] * z[j];
    out.push_back(LusztigParameter{w, reduce_mod_one(std::move(theta)), frac(Rat(Int(1), cover.n()))});
  }
  return out;
}

Sublattice weyl_fixed(const BasedRootDatum& rd) {
  const auto gens = rd.simple_reflections();
  return fixed_sublattice(rd.rank(), gens);
}

Sublattice weyl_frobenius_fixed(const CoverSpec& cover) {
  auto gens = cover.datum().simple_reflections();
  gens.push_back(cover.fr().matrix());
  return fixed_sublattice(cover.datum().rank(), gens);
}

RatVec xi_of(const CoverSpec& cover, const IntVec& y) {
  const BasedRootDatum& rd = cover.datum();
  if (y.size() != rd.rank()) fail(ErrorKind::malformed, "vector has the wrong length");
  for (const auto& s : rd.simple_reflections())
    if (multiply(s, y) != y) fail(ErrorKind::constraint, "y is not fixed by the Weyl group");
  if (multiply(cover.fr().matrix(), y) != y) fail(ErrorKind::constraint, "y is not fixed by Frobenius");
  const IntVec by = multiply(cover.form().gram(), y);
  RatVec out(by.size());
  for (std::size_t i = 0; i < by.size(); ++i) {
    out[i] = Rat(by[i], cover.n());
    out[i].canonicalize();
  }
  return reduce_mod_one(std::move(out));
}

bool is_general_position(const GLrCharacter& chi) {
  const Int big_n = power(chi.q, chi.r) - 1;
  Int qs = chi.q;
  for (std::size_t s = 1; s < chi.r; ++s, qs *= chi.q)
    if (divides(big_n, Int(chi.a * (qs - 1)))) return false;
  return true;
}

// WhittakerContext ---------------------------------------------------------

WhittakerContext::WhittakerContext(CoverSpec cover)
    : cover_(std::move(cover)),
      weyl_(weyl_group(cover_.datum())),
      fixed_(weyl_frobenius_fixed(cover_)),
      fixed_qn_(intersect(fixed_, y_qn(cover_))) {
  for (std::size_t i = 0; i < weyl_.size(); ++i) {
    x_actions_.push_back(transpose(integer_inverse(weyl_.elements[i])));
    positions_.emplace(weyl_.elements[i], i);
  }
  coset_reps_ = coset_representatives(fixed_, fixed_qn_, coset_limit);
  for (const auto& y : coset_reps_) {
    IntVec num;
    for (const auto& x : xi_of(cover_, y)) num.push_back(x.get_num() * (cover_.n() / x.get_den()));
    coset_xi_.push_back(std::move(num));
  }
  reducer_ = std::make_unique<CosetReducer>(fixed_, fixed_qn_);
}

std::size_t WhittakerContext::weyl_position(const IntMat& w) const {
  auto it = positions_.find(w);
  if (it == positions_.end()) fail(ErrorKind::constraint, "twisting element is not in the Weyl group");
  return it->second;
}

const std::vector<std::size_t>& WhittakerContext::twisted_centralizer(const IntMat& w) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = centralizers_.find(w);
  if (it != centralizers_.end()) return it->second;
  // W^{Fr_w} = {w' : w Fr w' Fr^{-1} w^{-1} = w'}  <=>  (w Fr) w' = w' (w Fr).
  const IntMat fr_w = twisted_frobenius(cover_, w);
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < weyl_.size(); ++i)
    if (multiply(fr_w, weyl_.elements[i]) == multiply(weyl_.elements[i], fr_w)) members.push_back(i);
  return centralizers_.emplace(w, std::move(members)).first->second;
}


bool WhittakerContext::general_position_scaled(const IntMat& w, const IntVec& num, const Int& den) const {
  for (std::size_t i : twisted_centralizer(w)) {
    if (i == 0) continue;  // identity
    if (act_mod(x_actions_[i], num, den) == num) return false;
  }
  return true;
}

bool WhittakerContext::is_general_position(const LusztigParameter& param) const {
  validate_parameter(cover_, param);
  weyl_position(param.w);
  const ScaledTheta theta = scale(param.theta, 1);
  return general_position_scaled(param.w, theta.num, theta.den);
}

YxRho WhittakerContext::y_x_rho(const LusztigParameter& param) const {
  validate_parameter(cover_, param);
  weyl_position(param.w);
  // ξ_y has denominator dividing n, so one common denominator serves both.
  const ScaledTheta theta = scale(param.theta, cover_.n());
  if (!general_position_scaled(param.w, theta.num, theta.den))
    fail(ErrorKind::not_general_position, "parameter is not in general position");
  std::set<IntVec> orbit;
  for (const auto& m : x_actions_) orbit.insert(act_mod(m, theta.num, theta.den));

  const Int xi_scale = theta.den / cover_.n();
  std::vector<std::size_t> passing;
  for (std::size_t i = 0; i < coset_reps_.size(); ++i) {
    IntVec shifted = theta.num;
    for (std::size_t t = 0; t < shifted.size(); ++t)
      shifted[t] = mod(shifted[t] + coset_xi_[i][t] * xi_scale, theta.den);
    if (orbit.count(shifted)) passing.push_back(i);
  }

  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (auto it = subgroups_.find(passing); it != subgroups_.end()) return it->second;

  // The passing cosets must form a subgroup of Y^{W⋊Fr} / (Y^{W⋊Fr} ∩ Y_{Q,n}).
  std::set<IntVec> classes;
  for (std::size_t i : passing) classes.insert(reducer_->reduce(coset_reps_[i]));
  for (std::size_t i : passing)
    for (std::size_t j : passing) {
      IntVec s = coset_reps_[i];
      for (std::size_t t = 0; t < s.size(); ++t) s[t] += coset_reps_[j][t];
      if (!classes.count(reducer_->reduce(s)))
        fail(ErrorKind::internal, "passing cosets are not closed under addition");
    }

  IntMat generators;
  for (std::size_t i : passing) generators.push_back(coset_reps_[i]);
  Sublattice lattice = sum(fixed_qn_, hermite_normal_form(cover_.datum().rank(), generators));
  const Int idx = *index(fixed_, lattice);
  if (idx * static_cast<unsigned long>(passing.size()) != static_cast<unsigned long>(coset_reps_.size()))
    fail(ErrorKind::internal, "Y_{x,ρ} index disagrees with the coset count");
  return subgroups_.emplace(std::move(passing), YxRho{std::move(lattice), idx}).first->second;
}

bool is_general_position(const CoverSpec& cover, const LusztigParameter& param) {
  return WhittakerContext(cover).is_general_position(param);
}

YxRho y_x_rho(const CoverSpec& cover, const LusztigParameter& param) {
  return WhittakerContext(cover).y_x_rho(param);
}

// GL_r formulas ------------------------------------------------------------

Int wh_dim_glr_closed(std::size_t r, const Int& q, const Int& n, const Int& bold_p,
                      const Int& bold_q, const Int& a) {
  require_glr_inputs(r, q, n, a);
  require_general_position({r, q, a});
  const Int m = m_qr(r, bold_p, bold_q);
  const Int big_n = power(q, r) - 1;
  const Int c = mod(Int(m * (big_n / n)), big_n);
  const Int g = gcd(c, big_n);  // gcd(0, N) = N
  const Int reduced_modulus = big_n / g;
  std::optional<Int> best;
  Int qs = 1;
  for (std::size_t s = 0; s < r; ++s, qs *= q) {
    const Int t = mod(Int(a * (qs - 1)), big_n);
    if (!divides(g, t)) continue;
    Int k;
    if (reduced_modulus == 1) {
      k = 1;
    } else {
      Int inv;
      const Int cg = c / g;
      mpz_invert(inv.get_mpz_t(), cg.get_mpz_t(), reduced_modulus.get_mpz_t());
      k = mod(Int((t / g) * inv), reduced_modulus);
      if (k == 0) k = reduced_modulus;
    }
    if (!best || k < *best) best = k;
  }
  const Int bound = n / gcd(n, m);
  if (!best || !divides(*best, bound))
    fail(ErrorKind::internal, "closed-form dimension does not divide n / gcd(n, m)");
  return *best;
}

Int wh_dim_oracle(std::size_t r, const Int& q, const Int& n, const Int& bold_p, const Int& bold_q,
                  const Int& a) {
  require_glr_inputs(r, q, n, a);
  require_general_position({r, q, a});
  const Int m = m_qr(r, bold_p, bold_q);
  const Int big_n = power(q, r) - 1;
  const Rat theta1(a, big_n);
  for (Int k = 1; k <= n; ++k) {
    const Rat shifted = frac(Rat(Rat(Int(m * k), n) + theta1));
    Int qs = 1;
    for (std::size_t s = 0; s < r; ++s, qs *= q)
      if (shifted == frac(Rat(theta1 * qs))) return k;
  }
  fail(ErrorKind::internal, "oracle scan exhausted k <= n without a solution");
}

SqueezeBounds squeeze_bounds(const CoverSpec& cover) {
  const Sublattice fixed = weyl_frobenius_fixed(cover);
  const Int upper = *index(fixed, intersect(fixed, y_qn(cover)));
  const Sublattice invariant = weyl_fixed(cover.datum());
  IntMat functionals;
  for (const auto& y : invariant.basis())
    functionals.push_back(multiply(cover.form().gram(), y));
  const Int lower = *index(fixed, congruence_sublattice(fixed, functionals, cover.n()));
  return {lower, upper};
}

CoverSpec glr_cover(std::size_t r, const Int& q, const Int& n, const Int& bold_p, const Int& bold_q) {
  return CoverSpec(build_glr(r), form_from_glr_invariants(r, bold_p, bold_q), n, q);
}

GLrTable enumerate_glr_table(std::size_t r, const Int& q, const Int& n, const Int& bold_p,
                             const Int& bold_q, const Int& bound) {
  require_glr_inputs(r, q, n, Int(0));
  const Int big_n = power(q, r) - 1;
  if (big_n > bound)
    fail(ErrorKind::constraint, "q^r - 1 = " + to_string(big_n) + " exceeds the table bound " + to_string(bound));
  const unsigned long size = big_n.get_ui();
  const unsigned long qq = mod(q, big_n).get_ui();
  std::vector<bool> visited(size, false);
  GLrTable table;
  for (unsigned long a = 0; a < size; ++a) {
    if (visited[a]) continue;
    std::size_t class_size = 0;
    unsigned long x = a;
    do {
      visited[x] = true;
      ++class_size;
      x = static_cast<unsigned long>((static_cast<unsigned __int128>(x) * qq) % size);
    } while (x != a);
    const Int rep = a;
    if (!is_general_position(GLrCharacter{r, q, rep})) continue;
    const Int dim = wh_dim_glr_closed(r, q, n, bold_p, bold_q, rep);
    table.rows.push_back({rep, class_size, dim});
    ++table.histogram[dim];
  }
  return table;
}

}  // namespace whitdim
