#include "whitdim/root_datum.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace whitdim {

namespace {

std::optional<std::size_t> find_row(const IntMat& rows, const IntVec& v) {
  auto it = std::find(rows.begin(), rows.end(), v);
  if (it == rows.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rows.begin());
}

IntVec unit(std::size_t d, std::size_t i) {
  IntVec v(d, Int(0));
  v[i] = 1;
  return v;
}

IntVec difference(const IntVec& a, const IntVec& b) {
  IntVec out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

IntVec negate(IntVec v) {
  for (auto& x : v) x = -x;
  return v;
}

}  // namespace

// FrobeniusAction ----------------------------------------------------------

FrobeniusAction::FrobeniusAction(IntMat matrix, int order_bound) : matrix_(std::move(matrix)) {
  const std::size_t d = matrix_.size();
  if (d == 0 || !is_square(matrix_, d))
    fail(ErrorKind::malformed, "Frobenius must be a non-empty square integer matrix");
  const IntMat one = identity(d);
  IntMat power = matrix_;
  for (int k = 1; k <= order_bound; ++k) {
    if (power == one) {
      order_ = k;
      return;
    }
    power = multiply(power, matrix_);
  }
  fail(ErrorKind::constraint,
       "Frobenius matrix does not have finite order <= " + std::to_string(order_bound));
}

FrobeniusAction FrobeniusAction::trivial(std::size_t d) { return FrobeniusAction(identity(d)); }

IntMat FrobeniusAction::x_action() const { return transpose(integer_inverse(matrix_)); }

// BasedRootDatum -----------------------------------------------------------

BasedRootDatum::BasedRootDatum(std::size_t rank, IntMat roots, IntMat coroots,
                               std::vector<std::size_t> simple, FrobeniusAction fr)
    : rank_(rank),
      roots_(std::move(roots)),
      coroots_(std::move(coroots)),
      simple_(std::move(simple)),
      fr_(std::move(fr)) {
  validate();
}

BasedRootDatum::BasedRootDatum(std::size_t rank, IntMat roots, IntMat coroots,
                               std::vector<std::size_t> simple)
    : BasedRootDatum(rank, std::move(roots), std::move(coroots), std::move(simple),
                     FrobeniusAction::trivial(rank == 0 ? 1 : rank)) {}

void BasedRootDatum::validate() const {
  if (rank_ == 0) fail(ErrorKind::malformed, "root datum rank must be positive");
  require_rectangular(roots_, rank_, "roots");
  require_rectangular(coroots_, rank_, "coroots");
  if (roots_.size() != coroots_.size())
    fail(ErrorKind::malformed, "roots and coroots must be paired one to one");
  if (fr_.matrix().size() != rank_)
    fail(ErrorKind::malformed, "Frobenius matrix size does not match the rank");
  for (std::size_t s : simple_)
    if (s >= roots_.size()) fail(ErrorKind::malformed, "simple root index out of range");
  if (std::set<std::size_t>(simple_.begin(), simple_.end()).size() != simple_.size())
    fail(ErrorKind::malformed, "simple root indices repeat");
  if (std::set<IntVec>(roots_.begin(), roots_.end()).size() != roots_.size())
    fail(ErrorKind::constraint, "roots are not distinct");

  for (std::size_t k = 0; k < roots_.size(); ++k)
    if (dot(roots_[k], coroots_[k]) != 2)
      fail(ErrorKind::constraint, "pairing <α, α^∨> must equal 2 (root " + std::to_string(k) + ")");

  if (roots_.empty()) {
    if (!simple_.empty()) fail(ErrorKind::constraint, "simple roots given without roots");
  } else {
    const IntMat cartan = cartan_matrix();
    for (std::size_t i = 0; i < simple_.size(); ++i)
      for (std::size_t j = 0; j < simple_.size(); ++j)
        if (i != j && (cartan[i][j] > 0 || cartan[i][j] < -3))
          fail(ErrorKind::constraint, "Cartan matrix entry outside {0,-1,-2,-3}");
    if (determinant(cartan) == 0)
      fail(ErrorKind::constraint, "simple roots are not linearly independent");
    // Every root must be an integral combination of simple roots, all of one sign.
    const RatMat inv_t = inverse(transpose(cartan));
    for (std::size_t k = 0; k < roots_.size(); ++k) {
      IntVec pairings(simple_.size());
      for (std::size_t j = 0; j < simple_.size(); ++j) pairings[j] = dot(roots_[k], simple_coroot(j));
      IntVec combo(rank_, Int(0));
      int sign = 0;
      for (std::size_t i = 0; i < simple_.size(); ++i) {
        Rat c = 0;
        for (std::size_t j = 0; j < simple_.size(); ++j) c += inv_t[i][j] * pairings[j];
        if (!is_integer(c)) fail(ErrorKind::constraint, "root is not an integral combination of simple roots");
        const int s = sgn(c);
        if (s != 0 && sign != 0 && s != sign)
          fail(ErrorKind::constraint, "root has simple-root coefficients of mixed sign");
        if (s != 0) sign = s;
        for (std::size_t t = 0; t < rank_; ++t) combo[t] += c.get_num() * simple_root(i)[t];
      }
      if (combo != roots_[k]) fail(ErrorKind::constraint, "root does not lie in the span of the simple roots");
    }
  }

  // Simple reflections permute (root, coroot) pairs.
  for (std::size_t i = 0; i < simple_.size(); ++i) {
    const IntVec& a = roots_[simple_[i]];
    const IntVec& av = coroots_[simple_[i]];
    for (std::size_t k = 0; k < roots_.size(); ++k) {
      IntVec root = roots_[k];
      IntVec coroot = coroots_[k];
      const Int x = dot(root, av);
      const Int y = dot(a, coroot);
      for (std::size_t t = 0; t < rank_; ++t) {
        root[t] -= x * a[t];
        coroot[t] -= y * av[t];
      }
      auto ri = find_row(roots_, root);
      auto ci = find_row(coroots_, coroot);
      if (!ri || !ci || *ri != *ci)
        fail(ErrorKind::constraint, "simple reflection does not permute the roots and coroots");
    }
  }

  // Frobenius permutes (root, coroot) pairs and preserves the simple set.
  const IntMat fr_x = fr_.x_action();
  std::set<std::size_t> simple_set(simple_.begin(), simple_.end());
  for (std::size_t k = 0; k < roots_.size(); ++k) {
    auto ri = find_row(roots_, multiply(fr_x, roots_[k]));
    auto ci = find_row(coroots_, multiply(fr_.matrix(), coroots_[k]));
    if (!ri || !ci || *ri != *ci)
      fail(ErrorKind::constraint, "Frobenius does not permute the roots and coroots");
    if (simple_set.count(k) != simple_set.count(*ci))
      fail(ErrorKind::constraint, "Frobenius does not preserve the simple roots");
  }
}

IntMat BasedRootDatum::reflection(std::size_t k) const {
  IntMat m = identity(rank_);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) m[i][j] -= coroots_[k][i] * roots_[k][j];
  return m;
}

std::vector<IntMat> BasedRootDatum::simple_reflections() const {
  std::vector<IntMat> out;
  for (std::size_t s : simple_) out.push_back(reflection(s));
  return out;
}

IntMat BasedRootDatum::cartan_matrix() const {
  const std::size_t l = simple_.size();
  IntMat c = zero_matrix(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) c[i][j] = dot(roots_[simple_[i]], coroots_[simple_[j]]);
  return c;
}

BasedRootDatum BasedRootDatum::with_frobenius(FrobeniusAction fr) const {
  return BasedRootDatum(rank_, roots_, coroots_, simple_, std::move(fr));
}

// Weyl group ---------------------------------------------------------------

WeylGroup weyl_group(const BasedRootDatum& rd, std::size_t size_limit) {
  if (rd.semisimple_rank() > 8)
    fail(ErrorKind::constraint, "Weyl group enumeration is limited to semisimple rank <= 8");
  const auto gens = rd.simple_reflections();
  WeylGroup w;
  std::set<IntMat> seen;
  std::deque<IntMat> frontier;
  const IntMat one = identity(rd.rank());
  seen.insert(one);
  w.elements.push_back(one);
  frontier.push_back(one);
  while (!frontier.empty()) {
    IntMat g = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& s : gens) {
      IntMat h = multiply(s, g);
      if (seen.count(h)) continue;
      if (w.elements.size() >= size_limit)
        fail(ErrorKind::constraint, "Weyl group exceeds the size limit " + std::to_string(size_limit));
      seen.insert(h);
      w.elements.push_back(h);
      frontier.push_back(std::move(h));
    }
  }
  return w;
}

Sublattice coroot_lattice(const BasedRootDatum& rd) {
  return hermite_normal_form(rd.rank(), rd.coroots());
}

bool is_derived_simply_connected(const BasedRootDatum& rd) {
  return is_saturated(coroot_lattice(rd));
}

// Constructors -------------------------------------------------------------

BasedRootDatum build_glr(std::size_t r) {
  if (r == 0) fail(ErrorKind::constraint, "GL_r needs r >= 1");
  IntMat roots;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) roots.push_back(difference(unit(r, i), unit(r, j)));
  const std::size_t positive = roots.size();
  for (std::size_t k = 0; k < positive; ++k) roots.push_back(negate(roots[k]));
  std::vector<std::size_t> simple;
  for (std::size_t i = 0; i + 1 < r; ++i)
    simple.push_back(*find_row(roots, difference(unit(r, i), unit(r, i + 1))));
  IntMat coroots = roots;
  return BasedRootDatum(r, std::move(roots), std::move(coroots), std::move(simple));
}

BasedRootDatum build_slr(std::size_t r) {
  if (r < 2) fail(ErrorKind::constraint, "SL_r needs r >= 2");
  const BasedRootDatum gl = build_glr(r);
  const std::size_t d = r - 1;
  // Y has basis α_1^∨, ..., α_{r-1}^∨; X the dual basis of fundamental weights.
  IntMat roots, coroots;
  for (std::size_t k = 0; k < gl.roots().size(); ++k) {
    const IntVec& v = gl.roots()[k];
    IntVec x(d), y(d, Int(0));
    for (std::size_t t = 0; t < d; ++t) x[t] = dot(v, gl.simple_coroot(t));
    // e_i - e_j = sum of simple coroots between i and j
    Int running = 0;
    for (std::size_t t = 0; t < d; ++t) {
      running += v[t];
      y[t] = running;
    }
    roots.push_back(std::move(x));
    coroots.push_back(std::move(y));
  }
  return BasedRootDatum(d, std::move(roots), std::move(coroots), gl.simple_indices());
}

BasedRootDatum build_sp2r(std::size_t r) {
  if (r < 2) fail(ErrorKind::constraint, "Sp_2r needs r >= 2");
  IntMat roots, coroots;
  auto add = [&](IntVec root, IntVec coroot) {
    roots.push_back(root);
    coroots.push_back(coroot);
    roots.push_back(negate(std::move(root)));
    coroots.push_back(negate(std::move(coroot)));
  };
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      IntVec minus = difference(unit(r, i), unit(r, j));
      IntVec plus = unit(r, i);
      plus[j] = 1;
      add(minus, minus);
      add(plus, plus);
    }
  for (std::size_t i = 0; i < r; ++i) {
    IntVec two = unit(r, i);
    two[i] = 2;
    add(two, unit(r, i));
  }
  std::vector<std::size_t> simple;
  for (std::size_t i = 0; i + 1 < r; ++i)
    simple.push_back(*find_row(roots, difference(unit(r, i), unit(r, i + 1))));
  IntVec last = unit(r, r - 1);
  last[r - 1] = 2;
  simple.push_back(*find_row(roots, last));
  return BasedRootDatum(r, std::move(roots), std::move(coroots), std::move(simple));
}

BasedRootDatum build_torus(std::size_t d, const IntMat& fr) {
  if (d == 0) fail(ErrorKind::constraint, "torus rank must be >= 1");
  return BasedRootDatum(d, {}, {}, {}, FrobeniusAction(fr));
}

BasedRootDatum build_torus(std::size_t d) {
  if (d == 0) fail(ErrorKind::constraint, "torus rank must be >= 1");
  return build_torus(d, identity(d));
}

}  // namespace whitdim
