#pragma once

// Brute-force reference computations used only by the tests. Nothing here
// goes through Hermite or Smith reduction.

#include "whitdim/arith.hpp"

#include <optional>
#include <random>
#include <set>

namespace oracle {

using whitdim::Int;
using whitdim::IntMat;
using whitdim::IntVec;
using whitdim::Rat;
using whitdim::RatVec;

/// Solves c · B = v for a square nonsingular B by plain Gaussian elimination.
inline std::optional<RatVec> solve_left(const IntMat& b, const IntVec& v) {
  const std::size_t d = b.size();
  // Augmented system B^T c = v.
  std::vector<RatVec> m(d, RatVec(d + 1));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m[i][j] = b[j][i];
    m[i][d] = v[i];
  }
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && m[piv][col] == 0) ++piv;
    if (piv == d) return std::nullopt;
    std::swap(m[piv], m[col]);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == col || m[i][col] == 0) continue;
      const Rat f = m[i][col] / m[col][col];
      for (std::size_t j = col; j <= d; ++j) m[i][j] -= f * m[col][j];
    }
  }
  RatVec c(d);
  for (std::size_t i = 0; i < d; ++i) c[i] = m[i][d] / m[i][i];
  return c;
}

/// v lies in the lattice with square nonsingular basis B.
inline bool member(const IntMat& b, const IntVec& v) {
  auto c = solve_left(b, v);
  if (!c) return false;
  for (const auto& x : *c)
    if (x.get_den() != 1) return false;
  return true;
}

inline IntVec minus(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

/// |Z^d / span(B)| by breadth-first search over the generators e_i with a
/// linear scan for already-seen cosets. B must be square and nonsingular.
inline std::size_t coset_count(const IntMat& b, std::size_t cap = 100000) {
  const std::size_t d = b.size();
  std::vector<IntVec> reps{IntVec(d, Int(0))};
  for (std::size_t head = 0; head < reps.size() && reps.size() <= cap; ++head) {
    for (std::size_t i = 0; i < d; ++i) {
      IntVec next = reps[head];
      next[i] += 1;
      bool seen = false;
      for (const auto& r : reps)
        if (member(b, minus(next, r))) {
          seen = true;
          break;
        }
      if (!seen) reps.push_back(next);
    }
  }
  return reps.size();
}

/// Largest element order in Z^d / span(B), found by scanning the cosets.
inline std::size_t group_exponent(const IntMat& b) {
  const std::size_t d = b.size();
  const std::size_t n = coset_count(b);
  std::size_t best = 1;
  // Every coset has a representative in the box [0, n)^d; d <= 2 here.
  std::vector<IntVec> box;
  if (d == 1) {
    for (std::size_t x = 0; x < n; ++x) box.push_back({Int(x)});
  } else {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) box.push_back({Int(x), Int(y)});
  }
  for (const auto& v : box) {
    std::size_t k = 1;
    IntVec acc = v;
    while (!member(b, acc)) {
      for (std::size_t i = 0; i < d; ++i) acc[i] += v[i];
      ++k;
    }
    best = std::max(best, k);
  }
  return best;
}

/// All integer vectors with entries in [-bound, bound].
inline std::vector<IntVec> box(std::size_t d, int bound) {
  std::vector<IntVec> out{IntVec{}};
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<IntVec> next;
    for (const auto& v : out)
      for (int x = -bound; x <= bound; ++x) {
        IntVec w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

/// Integer combinations Σ c_i rows_i with |c_i| <= bound.
inline std::set<IntVec> combinations(const IntMat& rows, std::size_t d, int bound) {
  std::set<IntVec> out;
  for (const auto& c : box(rows.size(), bound)) {
    IntVec v(d, Int(0));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < d; ++j) v[j] += c[i] * rows[i][j];
    out.insert(std::move(v));
  }
  return out;
}

inline Int det(const IntMat& m) {
  const std::size_t d = m.size();
  std::vector<RatVec> a(d, RatVec(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a[i][j] = m[i][j];
  Rat out = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    while (p < d && a[p][c] == 0) ++p;
    if (p == d) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      out = -out;
    }
    out *= a[c][c];
    for (std::size_t i = c + 1; i < d; ++i) {
      const Rat f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < d; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return out.get_num();
}

inline IntMat random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMat m(rows, IntVec(cols));
  for (auto& row : m)
    for (auto& x : row) x = dist(rng);
  return m;
}

/// Square basis with 1 <= |det| <= max_index.
inline IntMat random_full_rank(std::mt19937& rng, std::size_t d, int bound, long max_index) {
  for (;;) {
    IntMat m = random_matrix(rng, d, d, bound);
    const Int dt = abs(det(m));
    if (dt != 0 && dt <= max_index) return m;
  }
}

/// A random unimodular matrix built from elementary row operations.
inline IntMat random_unimodular(std::mt19937& rng, std::size_t d, int steps = 8) {
  IntMat u(d, IntVec(d, Int(0)));
  for (std::size_t i = 0; i < d; ++i) u[i][i] = 1;
  if (d < 2) return u;
  std::uniform_int_distribution<std::size_t> pick(0, d - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i == j) {
      for (auto& x : u[i]) x = -x;
      continue;
    }
    const int c = coef(rng);
    for (std::size_t k = 0; k < d; ++k) u[i][k] += c * u[j][k];
  }
  return u;
}

inline IntMat mul(const IntMat& a, const IntMat& b) {
  IntMat out(a.size(), IntVec(b.empty() ? 0 : b[0].size(), Int(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < out[i].size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline Int power(const Int& q, unsigned e) {
  Int out = 1;
  for (unsigned i = 0; i < e; ++i) out *= q;
  return out;
}

}  // namespace oracle
