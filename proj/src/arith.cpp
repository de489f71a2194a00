#include "whitdim/arith.hpp"

#include <algorithm>
#include <cctype>

namespace whitdim {

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rat parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view num = s;
  std::string_view den = "1";
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den))
    fail(ErrorKind::malformed, "not a rational number: \"" + std::string(text) + "\"");
  Int n(std::string(num), 10);
  Int d(std::string(den), 10);
  if (d == 0) fail(ErrorKind::malformed, "zero denominator in \"" + std::string(text) + "\"");
  Rat r(negative ? Int(-n) : n, d);
  r.canonicalize();
  return r;
}

RatVec parse_rational_list(std::string_view text) {
  RatVec out;
  if (trim(text).empty()) fail(ErrorKind::malformed, "empty rational list");
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string to_string(const Int& v) { return v.get_str(); }
std::string to_string(const Rat& v) { return v.get_str(); }

Rat frac(const Rat& v) {
  Rat r(mod(v.get_num(), v.get_den()), v.get_den());
  r.canonicalize();
  return r;
}

bool is_integer(const Rat& v) { return v.get_den() == 1; }

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

IntMat identity(std::size_t d) {
  IntMat m = zero_matrix(d, d);
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

IntMat zero_matrix(std::size_t rows, std::size_t cols) {
  return IntMat(rows, IntVec(cols, Int(0)));
}

IntMat transpose(const IntMat& m) {
  if (m.empty()) return {};
  IntMat t = zero_matrix(m[0].size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

IntMat multiply(const IntMat& a, const IntMat& b) {
  const std::size_t inner = b.size();
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  IntMat c = zero_matrix(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        mpz_addmul(c[i][j].get_mpz_t(), a[i][k].get_mpz_t(), b[k][j].get_mpz_t());
    }
  return c;
}

IntVec multiply(const IntMat& a, const IntVec& v) {
  IntVec out(a.size(), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], v);
  return out;
}

RatVec multiply(const IntMat& a, const RatVec& v) {
  RatVec out(a.size(), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], v);
  return out;
}

IntMat subtract(const IntMat& a, const IntMat& b) {
  IntMat c = a;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] -= b[i][j];
  return c;
}

Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return s;
}

Rat dot(const IntVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += a[i] * b[i];
  return s;
}

bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

bool is_square(const IntMat& m, std::size_t d) {
  return m.size() == d &&
         std::all_of(m.begin(), m.end(), [d](const IntVec& row) { return row.size() == d; });
}

void require_rectangular(const IntMat& m, std::size_t cols, std::string_view what) {
  for (const auto& row : m)
    if (row.size() != cols)
      fail(ErrorKind::malformed, std::string(what) + ": expected rows of length " +
                                     std::to_string(cols) + ", found " +
                                     std::to_string(row.size()));
}

RatMat to_rational(const IntMat& m) {
  RatMat r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i].assign(m[i].begin(), m[i].end());
  return r;
}

RatMat inverse(const IntMat& m) {
  const std::size_t d = m.size();
  if (!is_square(m, d)) fail(ErrorKind::malformed, "inverse of a non-square matrix");
  RatMat a = to_rational(m);
  RatMat inv = to_rational(identity(d));
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && a[piv][col] == 0) ++piv;
    if (piv == d) fail(ErrorKind::constraint, "matrix is singular");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rat p = a[col][col];
    for (std::size_t j = 0; j < d; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const Rat f = a[i][col];
      for (std::size_t j = 0; j < d; ++j) {
        a[i][j] -= f * a[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

IntMat integer_inverse(const IntMat& m) {
  RatMat inv = inverse(m);
  IntMat out = zero_matrix(inv.size(), inv.size());
  for (std::size_t i = 0; i < inv.size(); ++i)
    for (std::size_t j = 0; j < inv.size(); ++j) {
      if (!is_integer(inv[i][j])) fail(ErrorKind::constraint, "matrix inverse is not integral");
      out[i][j] = inv[i][j].get_num();
    }
  return out;
}

Int determinant(const IntMat& m) {
  const std::size_t d = m.size();
  if (!is_square(m, d)) fail(ErrorKind::malformed, "determinant of a non-square matrix");
  RatMat a = to_rational(m);
  Rat det = 1;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && a[piv][col] == 0) ++piv;
    if (piv == d) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t i = col + 1; i < d; ++i) {
      if (a[i][col] == 0) continue;
      const Rat f = a[i][col] / a[col][col];
      for (std::size_t j = col; j < d; ++j) a[i][j] -= f * a[col][j];
    }
  }
  return det.get_num();
}

std::size_t rank(const IntMat& rows) {
  RatMat a = to_rational(rows);
  if (a.empty()) return 0;
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < a.size(); ++col) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][col] == 0) continue;
      const Rat f = a[i][col] / a[r][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace whitdim
