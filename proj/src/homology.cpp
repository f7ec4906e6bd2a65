#include "zonomorse/homology.hpp"

#include <algorithm>
#include <sstream>

namespace zm {

long BettiReport::btilde(int i) const {
  if (i == -1) return reduced_minus1;
  if (i < 0 || i > dim) return 0;
  return reduced[i];
}

bool BettiReport::acyclic() const {
  if (reduced_minus1 != 0) return false;
  for (long b : reduced)
    if (b != 0) return false;
  return true;
}

bool BettiReport::spherical(int d) const {
  if (d == -1) return empty();
  if (dim != d) return false;
  if (reduced_minus1 != 0) return false;
  for (int i = 0; i < d; ++i)
    if (reduced[i] != 0) return false;
  return true;
}

std::string BettiReport::str() const {
  std::ostringstream os;
  os << "dim=" << dim << " btilde=[" << reduced_minus1;
  for (long b : reduced) os << "," << b;
  os << "]";
  for (int i = 0; i < (int)torsion.size(); ++i)
    if (!torsion[i].empty()) {
      os << " T" << i << "=(";
      for (size_t j = 0; j < torsion[i].size(); ++j)
        os << (j ? "," : "") << torsion[i][j].get_str();
      os << ")";
    }
  return os.str();
}

ChainComplex::ChainComplex(const Complex& c) {
  int d = c.dim();
  cells.resize(d + 1);
  index.resize(d + 1);
  for (const auto& s : c.cells) cells[(int)s.size() - 1].push_back(s);
  for (int k = 0; k <= d; ++k) {
    std::sort(cells[k].begin(), cells[k].end());
    for (int j = 0; j < (int)cells[k].size(); ++j) index[k][cells[k][j]] = j;
  }
  boundary.resize(d + 1);
  for (int k = 1; k <= d; ++k) {
    boundary[k].resize(cells[k].size());
    for (int j = 0; j < (int)cells[k].size(); ++j) {
      const Simplex& s = cells[k][j];
      for (int p = 0; p < (int)s.size(); ++p) {
        Simplex face;
        face.reserve(s.size() - 1);
        for (int q = 0; q < (int)s.size(); ++q)
          if (q != p) face.push_back(s[q]);
        auto it = index[k - 1].find(face);
        require(it != index[k - 1].end(), ErrorKind::Precondition,
                "complex is not closed under faces");
        boundary[k][j].push_back({it->second, (p % 2 == 0) ? 1 : -1});
      }
    }
  }
}

long ChainComplex::rank_boundary(int k) const {
  if (k <= 0 || k >= (int)boundary.size()) return 0;
  int nrows = (int)cells[k - 1].size();
  // rank is transpose-invariant: use one row per k-cell
  std::vector<Vec> m(boundary[k].size(), Vec(nrows));
  for (size_t j = 0; j < boundary[k].size(); ++j)
    for (auto [r, sg] : boundary[k][j]) m[j][r] = Q(sg);
  return rank_of(std::move(m));
}

namespace {

// Smith normal form over Z for small dense matrices; returns the invariant
// factors (diagonal entries), nonnegative, divisibility-ordered.
std::vector<Z> smith_invariants(std::vector<std::vector<Z>> m) {
  std::vector<Z> out;
  size_t r0 = 0, c0 = 0;
  size_t nr = m.size(), nc = nr ? m[0].size() : 0;
  while (r0 < nr && c0 < nc) {
    // find a pivot of minimal absolute value
    size_t pr = nr, pc = nc;
    Z best = 0;
    for (size_t i = r0; i < nr; ++i)
      for (size_t j = c0; j < nc; ++j)
        if (m[i][j] != 0) {
          Z a = abs(m[i][j]);
          if (best == 0 || a < best) {
            best = a;
            pr = i;
            pc = j;
          }
        }
    if (pr == nr) break;
    std::swap(m[r0], m[pr]);
    for (size_t i = 0; i < nr; ++i) std::swap(m[i][c0], m[i][pc]);
    const Z piv = m[r0][c0];
    // one reduction round on the pivot row/column, then re-pick the pivot:
    // residues have smaller absolute value, so this terminates
    bool reduced = false;
    for (size_t i = r0 + 1; i < nr; ++i) {
      if (m[i][c0] == 0) continue;
      Z q = m[i][c0] / piv;
      for (size_t j = c0; j < nc; ++j) m[i][j] -= q * m[r0][j];
      if (m[i][c0] != 0) reduced = true;  // nonzero residue remains
    }
    for (size_t j = c0 + 1; j < nc; ++j) {
      if (m[r0][j] == 0) continue;
      Z q = m[r0][j] / piv;
      for (size_t i = r0; i < nr; ++i) m[i][j] -= q * m[i][c0];
      if (m[r0][j] != 0) reduced = true;
    }
    if (reduced) continue;
    // row/column are clear; the pivot must divide the remaining block
    size_t bad = nr;
    for (size_t i = r0 + 1; i < nr && bad == nr; ++i)
      for (size_t j = c0 + 1; j < nc; ++j)
        if (m[i][j] % piv != 0) {
          bad = i;
          break;
        }
    if (bad != nr) {
      for (size_t j = c0; j < nc; ++j) m[r0][j] += m[bad][j];
      continue;
    }
    out.push_back(abs(piv));
    ++r0;
    ++c0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

BettiReport betti_numbers(const Complex& c, bool with_torsion) {
  BettiReport rep;
  rep.dim = c.dim();
  if (rep.dim < 0) {
    rep.reduced_minus1 = 1;
    return rep;
  }
  ChainComplex cc(c);
  int d = rep.dim;
  std::vector<long> nk(d + 1), rk(d + 2, 0);
  for (int k = 0; k <= d; ++k) nk[k] = (long)cc.cells[k].size();
  for (int k = 1; k <= d; ++k) rk[k] = cc.rank_boundary(k);
  // reduced: augmentation map C_0 -> Z has rank 1 on a nonempty complex
  long aug = 1;
  rep.reduced.assign(d + 1, 0);
  rep.reduced_minus1 = 0;
  for (int k = 0; k <= d; ++k) {
    long cycles = (k == 0) ? nk[0] - aug : nk[k] - rk[k];
    rep.reduced[k] = cycles - rk[k + 1];
    require(rep.reduced[k] >= 0, ErrorKind::Precondition, "negative Betti number");
  }
  if (with_torsion) {
    rep.torsion.assign(d + 1, {});
    for (int k = 1; k <= d; ++k) {
      std::vector<std::vector<Z>> m(cc.cells[k - 1].size(),
                                    std::vector<Z>(cc.cells[k].size(), Z(0)));
      for (size_t j = 0; j < cc.boundary[k].size(); ++j)
        for (auto [r, sg] : cc.boundary[k][j]) m[r][j] = sg;
      for (const Z& v : smith_invariants(std::move(m)))
        if (v > 1) rep.torsion[k - 1].push_back(v);
    }
  }
  return rep;
}

bool is_acyclic(const Complex& c) { return betti_numbers(c).acyclic(); }

bool is_spherical_of_dim(const Complex& c, int d) {
  return betti_numbers(c).spherical(d);
}

}  // namespace zm
