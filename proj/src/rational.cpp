#include "zonomorse/rational.hpp"

#include <cassert>

namespace zm {

std::string Vec::str() const {
  std::string s = "(";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += c[i].get_str();
  }
  return s + ")";
}

Q dot(const Vec& a, const Vec& b) {
  assert(a.dim() == b.dim());
  Q s = 0;
  for (int i = 0; i < a.dim(); ++i) s += a.c[i] * b.c[i];
  return s;
}

Vec primitive(const Vec& v) {
  if (v.is_zero()) return v;
  Z l = 1;
  for (const auto& x : v.c) {
    Z d = x.get_den();
    Z g;
    mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    l = l / g * d;
  }
  std::vector<Z> w;
  w.reserve(v.c.size());
  for (const auto& x : v.c) {
    Q y = x * Q(l);
    assert(y.get_den() == 1);
    w.push_back(y.get_num());
  }
  Z g = 0;
  for (const auto& x : w) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  Vec r((int)w.size());
  int lead = -1;
  for (size_t i = 0; i < w.size(); ++i) {
    r.c[i] = Q(w[i] / g);
    if (lead < 0 && r.c[i] != 0) lead = (int)i;
  }
  if (lead >= 0 && r.c[lead] < 0) r = -r;
  return r;
}

LinearSolution solve_linear(std::vector<Vec> rows, Vec rhs) {
  const int m = (int)rows.size();
  const int n = m ? rows[0].dim() : 0;
  assert((int)rhs.dim() == m);
  std::vector<int> pivot_col;
  int r = 0;
  for (int col = 0; col < n && r < m; ++col) {
    int p = -1;
    for (int i = r; i < m; ++i)
      if (rows[i][col] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[p], rows[r]);
    std::swap(rhs[p], rhs[r]);
    Q inv = rows[r][col];
    for (int j = col; j < n; ++j) rows[r][j] /= inv;
    rhs[r] /= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || rows[i][col] == 0) continue;
      Q f = rows[i][col];
      for (int j = col; j < n; ++j) rows[i][j] -= f * rows[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(col);
    ++r;
  }
  LinearSolution out;
  out.rank = r;
  for (int i = r; i < m; ++i)
    if (rhs[i] != 0) {
      out.kind = LinearSolution::None;
      return out;
    }
  out.x = Vec(n);
  for (int i = 0; i < r; ++i) out.x[pivot_col[i]] = rhs[i];
  if (r == n) {
    out.kind = LinearSolution::Unique;
    return out;
  }
  out.kind = LinearSolution::Many;
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (int col = 0; col < n; ++col) {
    if (is_pivot[col]) continue;
    Vec k(n);
    k[col] = 1;
    for (int i = 0; i < r; ++i) k[pivot_col[i]] = -rows[i][col];
    out.kernel.push_back(k);
  }
  return out;
}

int rank_of(std::vector<Vec> rows) {
  const int m = (int)rows.size();
  if (!m) return 0;
  const int n = rows[0].dim();
  int r = 0;
  for (int col = 0; col < n && r < m; ++col) {
    int p = -1;
    for (int i = r; i < m; ++i)
      if (rows[i][col] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[p], rows[r]);
    for (int i = r + 1; i < m; ++i) {
      if (rows[i][col] == 0) continue;
      Q f = rows[i][col] / rows[r][col];
      for (int j = col; j < n; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

Vec project_span(const std::vector<Vec>& basis, const Vec& x) {
  if (basis.empty()) return Vec(x.dim());
  const int k = (int)basis.size();
  std::vector<Vec> gram(k, Vec(k));
  Vec rhs(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], x);
  }
  LinearSolution s = solve_linear(gram, rhs);
  // Gram systems are always consistent; dependent bases give Many.
  assert(s.kind != LinearSolution::None);
  Vec p(x.dim());
  for (int i = 0; i < k; ++i) p += s.x[i] * basis[i];
  return p;
}

}  // namespace zm
