#include "whitdim/parahoric.hpp"

#include <algorithm>
#include <functional>

namespace whitdim {

namespace {

void require_point(const BasedRootDatum& rd, const ApartmentPoint& x) {
  if (x.coords.size() != rd.rank())
    fail(ErrorKind::malformed, "point has " + std::to_string(x.coords.size()) +
                                   " coordinates, expected " + std::to_string(rd.rank()));
  if (multiply(rd.frobenius().matrix(), x.coords) != x.coords)
    fail(ErrorKind::constraint, "point is not fixed by Frobenius");
}

bool is_irreducible(const IntMat& cartan) {
  const std::size_t l = cartan.size();
  if (l == 0) return true;
  std::vector<bool> seen(l, false);
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    seen[i] = true;
    for (std::size_t j = 0; j < l; ++j)
      if (!seen[j] && cartan[i][j] != 0) visit(j);
  };
  visit(0);
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace

ApartmentPoint parse_point(std::string_view text) { return ApartmentPoint{parse_rational_list(text)}; }

Rat root_value(const BasedRootDatum& rd, std::size_t k, const ApartmentPoint& x) {
  return dot(rd.roots()[k], x.coords);
}

std::vector<std::size_t> phi_x(const BasedRootDatum& rd, const ApartmentPoint& x) {
  require_point(rd, x);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < rd.roots().size(); ++k)
    if (is_integer(root_value(rd, k, x))) out.push_back(k);
  return out;
}

ResidualRootData residual_extension(const CoverSpec& cover, const ApartmentPoint& x) {
  const BasedRootDatum& rd = cover.datum();
  ResidualRootData out;
  out.phi_x = phi_x(rd, x);
  for (std::size_t k : out.phi_x) {
    IntVec row = rd.coroots()[k];
    row.push_back(root_value(rd, k, x).get_num() * cover.form().quadratic(rd.coroots()[k]));
    out.iota.push_back(std::move(row));
  }
  return out;
}

Sublattice residual_lattice(const CoverSpec& cover, const ApartmentPoint& x) {
  return hermite_normal_form(cover.datum().rank() + 1, residual_extension(cover, x).iota);
}

bool is_hyperspecial(const BasedRootDatum& rd, const ApartmentPoint& x) {
  return phi_x(rd, x).size() == rd.roots().size();
}

bool is_vertex(const BasedRootDatum& rd, const ApartmentPoint& x) {
  IntMat roots;
  for (std::size_t k : phi_x(rd, x)) roots.push_back(rd.roots()[k]);
  return rank(roots) == rank(rd.roots());
}

bool residual_derived_simply_connected(const CoverSpec& cover, const ApartmentPoint& x) {
  return is_saturated(residual_lattice(cover, x));
}

bool residual_splits(const CoverSpec& cover, const ApartmentPoint& x) {
  const BasedRootDatum& rd = cover.datum();
  const std::size_t d = rd.rank();
  const ResidualRootData res = residual_extension(cover, x);
  IntMat equations;
  IntVec targets;
  for (const auto& row : res.iota) {
    equations.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(d));
    targets.push_back(row[d]);
  }
  // κ ∘ Fr = κ  <=>  (Fr^T - I) κ = 0
  for (auto& row : subtract(transpose(rd.frobenius().matrix()), identity(d))) {
    equations.push_back(std::move(row));
    targets.push_back(0);
  }
  return solve_integer_system(d, equations, targets).has_value();
}

IntVec simple_root_coefficients(const BasedRootDatum& rd, std::size_t k) {
  const std::size_t l = rd.semisimple_rank();
  const RatMat inv_t = inverse(transpose(rd.cartan_matrix()));
  IntVec out(l);
  for (std::size_t i = 0; i < l; ++i) {
    Rat c = 0;
    for (std::size_t j = 0; j < l; ++j) c += inv_t[i][j] * dot(rd.roots()[k], rd.simple_coroot(j));
    out[i] = c.get_num();
  }
  return out;
}

std::vector<ApartmentPoint> fundamental_alcove_vertices(const BasedRootDatum& rd) {
  const std::size_t d = rd.rank();
  std::vector<ApartmentPoint> out{ApartmentPoint{RatVec(d, Rat(0))}};
  const std::size_t l = rd.semisimple_rank();
  if (l == 0) return out;
  const IntMat cartan = rd.cartan_matrix();
  if (!is_irreducible(cartan))
    fail(ErrorKind::constraint, "alcove vertices are only computed for irreducible root systems");

  IntVec highest;
  Int best_height = -1;
  for (std::size_t k = 0; k < rd.roots().size(); ++k) {
    IntVec c = simple_root_coefficients(rd, k);
    Int height = 0;
    for (const auto& v : c) height += v;
    if (height > best_height) {
      best_height = height;
      highest = std::move(c);
    }
  }

  // Fundamental coweight ω_i^∨ = Σ_j a_j α_j^∨ with C a = e_i.
  const RatMat inv = inverse(cartan);
  for (std::size_t i = 0; i < l; ++i) {
    RatVec x(d, Rat(0));
    for (std::size_t j = 0; j < l; ++j) {
      const IntVec coroot = rd.simple_coroot(j);
      for (std::size_t t = 0; t < d; ++t) x[t] += inv[j][i] * coroot[t];
    }
    for (auto& v : x) v /= highest[i];
    out.push_back(ApartmentPoint{std::move(x)});
  }
  return out;
}

ConductorVector conductor_shift(const ConductorVector& c, const std::vector<Int>& valuations) {
  if (c.values.size() != valuations.size())
    fail(ErrorKind::malformed, "one valuation per simple relative root is required");
  ConductorVector out = c;
  for (std::size_t i = 0; i < valuations.size(); ++i) out.values[i] += valuations[i];
  return out;
}

ConductorVector hyperspecial_conductors(const BasedRootDatum& rd, const ApartmentPoint& x) {
  if (!is_hyperspecial(rd, x)) fail(ErrorKind::constraint, "point is not hyperspecial");
  ConductorVector out;
  for (std::size_t i = 0; i < rd.semisimple_rank(); ++i)
    out.values.push_back(root_value(rd, rd.simple_indices()[i], x).get_num() + 1);
  return out;
}

}  // namespace whitdim
