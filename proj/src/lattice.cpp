#include "whitdim/lattice.hpp"

#include <algorithm>
#include <utility>

namespace whitdim {

namespace {

void swap_rows(IntMat& a, IntMat& u, std::size_t i, std::size_t j) {
  std::swap(a[i], a[j]);
  std::swap(u[i], u[j]);
}

// row_i -= f * row_j in both the matrix and its transform.
void add_multiple(IntMat& a, IntMat& u, std::size_t i, std::size_t j, const Int& f) {
  if (f == 0) return;
  for (std::size_t c = 0; c < a[i].size(); ++c) a[i][c] -= f * a[j][c];
  for (std::size_t c = 0; c < u[i].size(); ++c) u[i][c] -= f * u[j][c];
}

// Replaces rows (r, i) by a unimodular combination leaving gcd(a, b) in
// row r and zero in row i at the given column.
void gcd_combine(IntMat& a, IntMat& u, std::size_t r, std::size_t i, std::size_t col) {
  const Int x = a[r][col];
  const Int y = a[i][col];
  Int g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  const Int xg = x / g;
  const Int yg = y / g;
  auto mix = [&](IntVec& ra, IntVec& rb) {
    for (std::size_t c = 0; c < ra.size(); ++c) {
      Int top = s * ra[c] + t * rb[c];
      Int bottom = xg * rb[c] - yg * ra[c];
      ra[c] = std::move(top);
      rb[c] = std::move(bottom);
    }
  };
  mix(a[r], a[i]);
  mix(u[r], u[i]);
}

std::optional<IntVec> hnf_coordinates(const IntMat& basis, IntVec v) {
  IntVec coords(basis.size(), Int(0));
  std::size_t col = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    while (basis[i][col] == 0) ++col;
    const Int& pivot = basis[i][col];
    if (!mpz_divisible_p(v[col].get_mpz_t(), pivot.get_mpz_t())) return std::nullopt;
    coords[i] = v[col] / pivot;
    for (std::size_t c = col; c < v.size(); ++c) v[c] -= coords[i] * basis[i][c];
  }
  if (!is_zero(v)) return std::nullopt;
  return coords;
}

void require_same_ambient(const Sublattice& a, const Sublattice& b) {
  if (a.ambient_rank() != b.ambient_rank())
    fail(ErrorKind::malformed, "sublattices live in ambient lattices of different rank (" +
                                   std::to_string(a.ambient_rank()) + " vs " +
                                   std::to_string(b.ambient_rank()) + ")");
}

void require_contained(const Sublattice& sup, const Sublattice& sub) {
  require_same_ambient(sup, sub);
  if (!sup.contains(sub))
    fail(ErrorKind::constraint, "sublattice is not contained in the given superlattice");
}

// Basis of sub written in sup-coordinates.
IntMat relative_coordinates(const Sublattice& sup, const Sublattice& sub) {
  IntMat rows;
  rows.reserve(sub.rank());
  for (const auto& v : sub.basis()) rows.push_back(*sup.coordinates(v));
  return rows;
}

}  // namespace

RowReduction hermite_reduce(std::size_t cols, const IntMat& rows) {
  require_rectangular(rows, cols, "hermite_normal_form");
  RowReduction out{rows, identity(rows.size()), 0};
  IntMat& a = out.reduced;
  IntMat& u = out.transform;
  const std::size_t m = a.size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < m; ++col) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (a[i][col] == 0) continue;
      if (a[r][col] == 0)
        swap_rows(a, u, r, i);
      else
        gcd_combine(a, u, r, i, col);
    }
    if (a[r][col] == 0) continue;
    if (a[r][col] < 0) {
      for (auto& x : a[r]) x = -x;
      for (auto& x : u[r]) x = -x;
    }
    for (std::size_t k = 0; k < r; ++k) add_multiple(a, u, k, r, floor_div(a[k][col], a[r][col]));
    ++r;
  }
  out.rank = r;
  return out;
}

// Sublattice ---------------------------------------------------------------

Sublattice::Sublattice(std::size_t ambient_rank) : ambient_rank_(ambient_rank) {
  if (ambient_rank == 0) fail(ErrorKind::malformed, "ambient rank must be positive");
}

Sublattice::Sublattice(std::size_t ambient_rank, IntMat basis)
    : ambient_rank_(ambient_rank), basis_(std::move(basis)) {}

Sublattice Sublattice::full(std::size_t ambient_rank) {
  Sublattice l(ambient_rank);
  l.basis_ = identity(ambient_rank);
  return l;
}

Sublattice Sublattice::span(std::size_t ambient_rank, const IntMat& rows) {
  return hermite_normal_form(ambient_rank, rows);
}

bool Sublattice::is_full() const {
  return rank() == ambient_rank_ && basis_ == identity(ambient_rank_);
}

std::optional<IntVec> Sublattice::coordinates(const IntVec& v) const {
  if (v.size() != ambient_rank_)
    fail(ErrorKind::malformed, "vector length does not match the ambient rank");
  return hnf_coordinates(basis_, v);
}

bool Sublattice::contains(const IntVec& v) const { return coordinates(v).has_value(); }

bool Sublattice::contains(const Sublattice& other) const {
  if (other.ambient_rank_ != ambient_rank_) return false;
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [this](const IntVec& v) { return contains(v); });
}

Int FiniteAbelianStructure::torsion_order() const {
  Int p = 1;
  for (const auto& f : invariant_factors) p *= f;
  return p;
}

Sublattice hermite_normal_form(std::size_t d, const IntMat& rows) {
  if (d == 0) fail(ErrorKind::malformed, "rows must have positive length");
  RowReduction red = hermite_reduce(d, rows);
  red.reduced.resize(red.rank);
  return Sublattice(d, std::move(red.reduced));
}

Sublattice hermite_normal_form(const IntMat& rows) {
  if (rows.empty()) fail(ErrorKind::malformed, "cannot infer the ambient rank of an empty row list");
  return hermite_normal_form(rows[0].size(), rows);
}

std::vector<Int> smith_diagonal(const IntMat& m) {
  IntMat a = m;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<Int> diag;

  auto min_abs_in = [&](std::size_t t, bool whole) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (!whole && i != t && j != t) continue;
        if (a[i][j] == 0) continue;
        if (!best || abs(a[i][j]) < abs(a[best->first][best->second])) best = {i, j};
      }
    return best;
  };
  auto move_to = [&](std::size_t t, std::pair<std::size_t, std::size_t> at) {
    std::swap(a[t], a[at.first]);
    for (auto& row : a) std::swap(row[t], row[at.second]);
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    auto start = min_abs_in(t, true);
    if (!start) break;
    move_to(t, *start);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const Int f = floor_div(a[i][t], a[t][t]);
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= f * a[t][j];
        clean = clean && a[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const Int f = floor_div(a[t][j], a[t][t]);
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= f * a[i][t];
        clean = clean && a[t][j] == 0;
      }
      if (clean) break;
      move_to(t, *min_abs_in(t, false));
    }
    diag.push_back(abs(a[t][t]));
  }

  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      Int g = gcd(diag[i], diag[j]);
      Int l = lcm(diag[i], diag[j]);
      diag[i] = std::move(g);
      diag[j] = std::move(l);
    }
  return diag;
}

FiniteAbelianStructure smith_invariants(const Sublattice& sup, const Sublattice& sub) {
  require_contained(sup, sub);
  FiniteAbelianStructure out;
  const auto diag = smith_diagonal(relative_coordinates(sup, sub));
  out.free_rank = sup.rank() - diag.size();
  for (const auto& d : diag)
    if (d > 1) out.invariant_factors.push_back(d);
  return out;
}

std::optional<Int> index(const Sublattice& sup, const Sublattice& sub) {
  require_contained(sup, sub);
  if (sub.rank() < sup.rank()) return std::nullopt;
  Int product = 1;
  for (const auto& d : smith_diagonal(relative_coordinates(sup, sub))) product *= d;
  return product;
}

Sublattice integer_kernel(std::size_t d, const IntMat& a) {
  for (const auto& row : a)
    if (row.size() != d) fail(ErrorKind::malformed, "kernel: matrix has the wrong number of columns");
  // Reduce the d rows of a^T; rows of the transform that map to zero span the kernel.
  IntMat at = zero_matrix(d, a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) at[j][i] = a[i][j];
  RowReduction red = hermite_reduce(a.size(), at);
  IntMat kernel(red.transform.begin() + static_cast<std::ptrdiff_t>(red.rank), red.transform.end());
  return hermite_normal_form(d, kernel);
}

Sublattice intersect(const Sublattice& a, const Sublattice& b) {
  require_same_ambient(a, b);
  const std::size_t d = a.ambient_rank();
  if (a.is_zero() || b.is_zero()) return Sublattice(d);
  IntMat stacked = a.basis();
  stacked.insert(stacked.end(), b.basis().begin(), b.basis().end());
  // Integer relations c with c * stacked = 0; the a-part of each relation
  // gives a vector of the intersection.
  Sublattice relations = integer_kernel(stacked.size(), transpose(stacked));
  IntMat vectors;
  for (const auto& c : relations.basis()) {
    IntVec v(d, Int(0));
    for (std::size_t i = 0; i < a.rank(); ++i)
      for (std::size_t j = 0; j < d; ++j) v[j] += c[i] * a.basis()[i][j];
    vectors.push_back(std::move(v));
  }
  return hermite_normal_form(d, vectors);
}

Sublattice sum(const Sublattice& a, const Sublattice& b) {
  require_same_ambient(a, b);
  IntMat rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return hermite_normal_form(a.ambient_rank(), rows);
}

Sublattice saturation(const Sublattice& l) {
  const std::size_t d = l.ambient_rank();
  if (l.is_zero()) return l;
  const Sublattice orthogonal = integer_kernel(d, l.basis());
  return integer_kernel(d, orthogonal.basis());
}

bool is_saturated(const Sublattice& l) { return saturation(l) == l; }

Sublattice fixed_sublattice(std::size_t d, std::span<const IntMat> endomorphisms) {
  IntMat equations;
  const IntMat one = identity(d);
  for (const auto& m : endomorphisms) {
    if (!is_square(m, d))
      fail(ErrorKind::malformed, "fixed_sublattice: expected " + std::to_string(d) + "x" +
                                     std::to_string(d) + " matrices");
    for (auto& row : subtract(m, one)) equations.push_back(std::move(row));
  }
  return integer_kernel(d, equations);
}

std::optional<IntVec> solve_integer_system(std::size_t unknowns, const IntMat& a,
                                           const IntVec& b) {
  require_rectangular(a, unknowns, "solve_integer_system");
  if (b.size() != a.size()) fail(ErrorKind::malformed, "solve_integer_system: size mismatch");
  if (a.empty()) return IntVec(unknowns, Int(0));
  RowReduction red = hermite_reduce(a.size(), transpose(a));
  IntMat image(red.reduced.begin(), red.reduced.begin() + static_cast<std::ptrdiff_t>(red.rank));
  auto coords = hnf_coordinates(image, b);
  if (!coords) return std::nullopt;
  IntVec x(unknowns, Int(0));
  for (std::size_t i = 0; i < red.rank; ++i)
    for (std::size_t j = 0; j < unknowns; ++j) x[j] += (*coords)[i] * red.transform[i][j];
  return x;
}

std::vector<IntVec> coset_representatives(const Sublattice& sup, const Sublattice& sub,
                                          const Int& limit) {
  const auto idx = index(sup, sub);
  if (!idx) fail(ErrorKind::constraint, "quotient is infinite; no finite coset enumeration");
  if (*idx > limit)
    fail(ErrorKind::constraint, "quotient of order " + to_string(*idx) +
                                    " exceeds the enumeration limit " + to_string(limit));
  const std::size_t r = sup.rank();
  const IntMat h = hermite_normal_form(r == 0 ? 1 : r, relative_coordinates(sup, sub)).basis();
  std::vector<IntVec> reps;
  IntVec digits(r, Int(0));
  while (true) {
    IntVec v(sup.ambient_rank(), Int(0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += digits[i] * sup.basis()[i][j];
    reps.push_back(std::move(v));
    std::size_t pos = 0;
    while (pos < r) {
      if (++digits[pos] < h[pos][pos]) break;
      digits[pos] = 0;
      ++pos;
    }
    if (pos == r) break;
  }
  return reps;
}

CosetReducer::CosetReducer(const Sublattice& sup, const Sublattice& sub) : sup_(sup) {
  if (!index(sup, sub)) fail(ErrorKind::constraint, "coset reduction needs a finite-index sublattice");
  if (sup.rank() > 0)
    sub_coords_ = hermite_normal_form(sup.rank(), relative_coordinates(sup, sub)).basis();
}

IntVec CosetReducer::reduce(const IntVec& ambient_vector) const {
  auto c = sup_.coordinates(ambient_vector);
  if (!c) fail(ErrorKind::constraint, "vector is not in the superlattice");
  IntVec& coords = *c;
  for (std::size_t i = 0; i < sub_coords_.size(); ++i) {
    const Int f = floor_div(coords[i], sub_coords_[i][i]);
    if (f == 0) continue;
    for (std::size_t j = i; j < coords.size(); ++j) coords[j] -= f * sub_coords_[i][j];
  }
  return coords;
}

}  // namespace whitdim
