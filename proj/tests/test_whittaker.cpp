#include "oracles.hpp"

#include "whitdim/whittaker.hpp"

#include <doctest.h>

using namespace whitdim;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::internal;
}

/// Smallest k in [1, n] with m k (q^r-1)/n ≡ a (q^s - 1) mod q^r - 1 for some s,
/// scanned directly over integers.
Int scan_dimension(std::size_t r, const Int& q, const Int& n, const Int& m, const Int& a) {
  const Int big = oracle::power(q, static_cast<unsigned>(r)) - 1;
  for (Int k = 1; k <= n; ++k)
    for (unsigned s = 0; s < r; ++s) {
      Int diff = m * k * (big / n) - a * (oracle::power(q, s) - 1);
      if (diff % big == 0) return k;
    }
  return 0;
}

}  // namespace

TEST_CASE("Coxeter parameters for GL_r") {
  auto p = glr_coxeter_parameter(2, 5, 1);
  CHECK(p.theta == RatVec{Rat(1, 24), Rat(5, 24)});
  CHECK(p.w == glr_coxeter_element(2));
  p = glr_coxeter_parameter(1, 5, 2);
  CHECK(p.theta == RatVec{Rat(1, 2)});
  p = glr_coxeter_parameter(3, 3, 0);
  CHECK(p.theta == RatVec(3, Rat(0)));
  CHECK(kind_of([] { (void)glr_coxeter_parameter(2, 5, 24); }) == ErrorKind::constraint);
  CHECK(kind_of([] { (void)glr_coxeter_parameter(2, 5, -1); }) == ErrorKind::constraint);
  CHECK(glr_coxeter_element(3) == IntMat{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
}

TEST_CASE("general position") {
  CHECK(!is_general_position(GLrCharacter{2, 5, 0}));
  CHECK(!is_general_position(GLrCharacter{2, 5, 6}));
  CHECK(is_general_position(GLrCharacter{2, 5, 1}));
  CHECK(is_general_position(GLrCharacter{1, 5, 0}));
  const auto cover = glr_cover(2, 5, 4, 0, 1);
  CHECK(!is_general_position(cover, glr_coxeter_parameter(2, 5, 0, 4)));
  CHECK(is_general_position(cover, glr_coxeter_parameter(2, 5, 1, 4)));
}

TEST_CASE("both general-position tests agree on GL_r Coxeter inputs") {
  const std::vector<Int> qs{3, 4, 5, 7};
  for (std::size_t r = 1; r <= 3; ++r)
    for (const auto& q : qs) {
      const WhittakerContext ctx(glr_cover(r, q, 1, 0, 0));
      const Int big = oracle::power(q, static_cast<unsigned>(r)) - 1;
      for (Int a = 0; a < big; ++a) {
        const bool closed = is_general_position(GLrCharacter{r, q, a});
        CHECK(closed == ctx.is_general_position(glr_coxeter_parameter(r, q, a)));
      }
    }
}

TEST_CASE("ξ_y") {
  const auto kp = glr_cover(2, 5, 4, 0, 1);
  CHECK(xi_of(kp, {1, 1}) == RatVec{Rat(1, 4), Rat(1, 4)});
  CHECK(xi_of(kp, {4, 4}) == RatVec(2, Rat(0)));
  CHECK(xi_of(glr_cover(2, 5, 1, 0, 1), {3, 3}) == RatVec(2, Rat(0)));
  CHECK(kind_of([&] { (void)xi_of(kp, {1, 0}); }) == ErrorKind::constraint);
}

TEST_CASE("property: ξ is additive, q-stable and vanishes exactly on Y_{Q,n}") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coef(-3, 3), kk(-12, 12);
  const std::vector<std::pair<Int, Int>> qn{{5, 4}, {7, 3}, {7, 6}, {13, 12}};
  for (std::size_t r = 1; r <= 3; ++r)
    for (const auto& [q, n] : qn) {
      const auto cover = glr_cover(r, q, n, coef(rng), coef(rng));
      const auto ycap = y_qn(cover);
      for (int t = 0; t < 10; ++t) {
        const int k1 = kk(rng), k2 = kk(rng);
        const IntVec y1(r, Int(k1)), y2(r, Int(k2)), y12(r, Int(k1 + k2));
        const RatVec x1 = xi_of(cover, y1), x2 = xi_of(cover, y2);
        RatVec s(r);
        for (std::size_t i = 0; i < r; ++i) s[i] = x1[i] + x2[i];
        CHECK(reduce_mod_one(s) == xi_of(cover, y12));
        CHECK((x1 == RatVec(r, Rat(0))) == ycap.contains(y1));
        RatVec scaled = x1;
        for (auto& v : scaled) v *= q;
        CHECK(reduce_mod_one(scaled) == x1);
      }
    }
}

TEST_CASE("Y_{x,ρ} on the KP GL_2 cover") {
  const WhittakerContext ctx(glr_cover(2, 5, 4, 0, 1));
  auto y = ctx.y_x_rho(glr_coxeter_parameter(2, 5, 3, 4));
  CHECK(y.index == 2);
  CHECK(y.lattice == hermite_normal_form({{2, 2}}));
  y = ctx.y_x_rho(glr_coxeter_parameter(2, 5, 1, 4));
  CHECK(y.index == 4);
  CHECK(kind_of([&] { (void)ctx.y_x_rho(glr_coxeter_parameter(2, 5, 0, 4)); }) ==
        ErrorKind::not_general_position);
  CHECK(ctx.fixed() == hermite_normal_form({{1, 1}}));
  CHECK(ctx.fixed_qn() == hermite_normal_form({{4, 4}}));
}

TEST_CASE("Y_{x,ρ} is everything when L lies in Y_{Q,n}") {
  const auto cover = glr_cover(3, 5, 1, 1, 1);
  CHECK(y_x_rho(cover, glr_coxeter_parameter(3, 5, 1)).index == 1);
  // n | m_{Q,r}: B(e_0, ·) = 4 e_0^* vanishes mod 4.
  const auto c4 = glr_cover(3, 5, 4, 1, 1);
  CHECK(y_qn(c4).contains(IntVec{1, 1, 1}));
  CHECK(y_x_rho(c4, glr_coxeter_parameter(3, 5, 1, 4)).index == 1);
}

TEST_CASE("Lusztig parameters on semisimple data") {
  const auto sl2 = build_slr(2);
  const CoverSpec c(sl2, form_from_coroot_values(sl2, {1}), 4, 5);
  const IntMat w = coxeter_element(sl2);
  const auto params = lusztig_parameters(c, w);
  // Solutions of (q - Fr_w^T) θ ∈ Z^d: |det(q I - (w Fr)^T)| of them.
  IntMat a = identity(1);
  a[0][0] = 5 - w[0][0];
  CHECK(Int(params.size()) == abs(oracle::det(a)));
  std::size_t general = 0;
  for (const auto& p : params) {
    validate_parameter(c, p);
    if (!is_general_position(c, p)) continue;
    ++general;
    const auto y = y_x_rho(c, p);
    CHECK(y.index == 1);
    CHECK(y.lattice.is_zero());
  }
  CHECK(general > 0);
}

TEST_CASE("parameter validation") {
  const auto cover = glr_cover(2, 5, 4, 0, 1);
  auto p = glr_coxeter_parameter(2, 5, 1, 4);
  validate_parameter(cover, p);
  p.theta[1] = Rat(1, 24);
  CHECK(kind_of([&] { validate_parameter(cover, p); }) == ErrorKind::constraint);
  p = glr_coxeter_parameter(2, 5, 1, 4);
  p.central_exponent = Rat(1, 3);
  CHECK(kind_of([&] { validate_parameter(cover, p); }) == ErrorKind::constraint);
}

TEST_CASE("closed-form dimension examples") {
  CHECK(wh_dim_glr_closed(2, 5, 4, 0, 1, 3) == 2);
  CHECK(wh_dim_glr_closed(2, 5, 4, 0, 1, 1) == 4);
  CHECK(wh_dim_glr_closed(1, 5, 4, 1, 0, 1) == 2);
  CHECK(wh_dim_glr_closed(3, 5, 4, 1, 1, 1) == 1);
  CHECK(wh_dim_oracle(2, 5, 4, 0, 1, 3) == 2);
  CHECK(wh_dim_oracle(2, 5, 4, 0, 1, 1) == 4);
  CHECK(wh_dim_oracle(2, 5, 1, 0, 1, 1) == 1);
  CHECK(wh_dim_oracle(2, 5, 4, 1, 2, 1) == 1);
  CHECK(kind_of([] { (void)wh_dim_glr_closed(2, 5, 4, 0, 1, 0); }) == ErrorKind::not_general_position);
  CHECK(kind_of([] { (void)wh_dim_glr_closed(2, 5, 3, 0, 1, 1); }) == ErrorKind::constraint);
  CHECK(kind_of([] { (void)wh_dim_oracle(2, 5, 4, 0, 1, 6); }) == ErrorKind::not_general_position);
}

TEST_CASE("closed form agrees with a direct integer scan") {
  const std::vector<Int> qs{3, 5, 7, 9};
  for (std::size_t r = 1; r <= 3; ++r)
    for (const auto& q : qs)
      for (Int n = 1; n < q; ++n) {
        if ((q - 1) % n != 0) continue;
        for (int p = -2; p <= 2; ++p)
          for (int qq = -2; qq <= 2; ++qq) {
            const Int m = m_qr(r, p, qq);
            const Int big = oracle::power(q, static_cast<unsigned>(r)) - 1;
            for (Int a = 0; a < big; a += 1 + big / 40) {
              if (!is_general_position(GLrCharacter{r, q, a})) continue;
              const Int k = scan_dimension(r, q, n, m, a);
              CHECK(wh_dim_glr_closed(r, q, n, p, qq, a) == k);
              CHECK(wh_dim_oracle(r, q, n, p, qq, a) == k);
              CHECK((n / gcd(n, m)) % k == 0);
            }
          }
      }
}

TEST_CASE("squeeze bounds") {
  auto b = squeeze_bounds(glr_cover(1, 5, 4, 1, 0));
  CHECK(b.lower == 2);
  CHECK(b.upper == 2);
  b = squeeze_bounds(glr_cover(2, 5, 4, 0, 1));
  CHECK(b.lower == 2);
  CHECK(b.upper == 4);
  const auto sl3 = build_slr(3);
  b = squeeze_bounds(CoverSpec(sl3, form_from_coroot_values(sl3, {1, 1}), 2, 3));
  CHECK(b.lower == 1);
  CHECK(b.upper == 1);
}

TEST_CASE("GL_r class tables") {
  auto t = enumerate_glr_table(2, 5, 4, 0, 1);
  std::size_t covered = 0;
  for (const auto& row : t.rows) {
    CHECK((row.dimension == 2 || row.dimension == 4));
    covered += row.class_size;
  }
  // General-position a in [0, 24): exclude multiples of 6.
  CHECK(covered == 20);
  CHECK(t.rows.size() == 10);
  CHECK(t.histogram == std::map<Int, std::size_t>{{2, 2}, {4, 8}});

  t = enumerate_glr_table(3, 5, 1, 1, 1);
  CHECK(t.histogram.size() == 1);
  CHECK(t.histogram.begin()->first == 1);

  // Determinantal (p, q) = (1, 2) for r = 2: m = 4, and n = 4 divides it.
  t = enumerate_glr_table(2, 5, 4, 1, 2);
  CHECK(t.histogram.size() == 1);
  CHECK(t.histogram.begin()->first == 1);
  t = enumerate_glr_table(2, 5, 4, 2, 4);
  CHECK(m_qr(2, 2, 4) == 8);
  CHECK(t.histogram == std::map<Int, std::size_t>{{1, t.rows.size()}});
  CHECK(kind_of([] { (void)enumerate_glr_table(3, 13, 4, 0, 1, 100); }) == ErrorKind::constraint);
}

TEST_CASE("property: dimension is constant on Frobenius orbits") {
  for (std::size_t r = 2; r <= 3; ++r) {
    const Int q = 5, n = 4;
    const Int big = oracle::power(q, static_cast<unsigned>(r)) - 1;
    for (Int a = 0; a < big; ++a) {
      if (!is_general_position(GLrCharacter{r, q, a})) continue;
      const Int d = wh_dim_glr_closed(r, q, n, 0, 1, a);
      CHECK(wh_dim_glr_closed(r, q, n, 0, 1, mod(a * q, big)) == d);
    }
  }
}
