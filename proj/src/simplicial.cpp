#include "zonomorse/simplicial.hpp"

#include <cassert>

namespace zm {

void Complex::add_closed(const Simplex& s) {
  assert(std::is_sorted(s.begin(), s.end()));
  const int n = (int)s.size();
  assert(n > 0);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Simplex f;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) f.push_back(s[i]);
    cells.insert(std::move(f));
  }
}

std::set<int> Complex::vertex_set() const {
  std::set<int> vs;
  for (const auto& s : cells)
    if (s.size() == 1) vs.insert(s[0]);
  return vs;
}

std::vector<Simplex> Complex::cells_of_dim(int d) const {
  std::vector<Simplex> out;
  for (const auto& s : cells)
    if ((int)s.size() == d + 1) out.push_back(s);
  return out;
}

std::vector<Simplex> Complex::maximal_cells() const {
  std::vector<Simplex> out;
  for (const auto& s : cells) {
    bool maximal = true;
    for (const auto& t : cells) {
      if (t.size() <= s.size() || t == s) continue;
      if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(s);
  }
  return out;
}

Complex Complex::full_subcomplex(const std::set<int>& keep) const {
  Complex out;
  for (const auto& s : cells) {
    bool ok = true;
    for (int v : s)
      if (!keep.count(v)) {
        ok = false;
        break;
      }
    if (ok) out.cells.insert(s);
  }
  return out;
}

Complex Complex::link(const Simplex& s) const {
  Complex out;
  for (const auto& t : cells) {
    Simplex inter;
    std::set_intersection(t.begin(), t.end(), s.begin(), s.end(), std::back_inserter(inter));
    if (!inter.empty()) continue;
    Simplex u;
    std::set_union(t.begin(), t.end(), s.begin(), s.end(), std::back_inserter(u));
    if (cells.count(u)) out.cells.insert(t);
  }
  return out;
}

Complex join(const Complex& a, const Complex& b) {
  Complex out;
  out.cells = a.cells;
  for (const auto& t : b.cells) out.cells.insert(t);
  for (const auto& s : a.cells)
    for (const auto& t : b.cells) {
      Simplex u;
      std::set_union(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(u));
      assert(u.size() == s.size() + t.size() && "join factors must have disjoint vertices");
      out.cells.insert(std::move(u));
    }
  return out;
}

std::vector<Simplex> nonempty_faces(const Simplex& s) {
  std::vector<Simplex> out;
  const int n = (int)s.size();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Simplex f;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) f.push_back(s[i]);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Simplex> proper_faces(const Simplex& s) {
  std::vector<Simplex> out = nonempty_faces(s);
  out.erase(std::remove(out.begin(), out.end(), s), out.end());
  return out;
}

Complex chain_complex_of_subsets(const std::vector<Simplex>& elems) {
  const int n = (int)elems.size();
  auto below = [&](int i, int j) {  // elems[i] proper subset of elems[j]
    return elems[i].size() < elems[j].size() &&
           std::includes(elems[j].begin(), elems[j].end(), elems[i].begin(), elems[i].end());
  };
  Complex out;
  // Chains listed by their size-increasing representation, so each chain is
  // produced exactly once. n stays small (faces of one simplex).
  std::vector<int> chain;
  auto rec = [&](auto&& self, int last) -> void {
    Simplex s(chain.begin(), chain.end());
    std::sort(s.begin(), s.end());
    out.cells.insert(std::move(s));
    for (int i = 0; i < n; ++i)
      if (below(last, i)) {
        chain.push_back(i);
        self(self, i);
        chain.pop_back();
      }
  };
  for (int i = 0; i < n; ++i) {
    chain = {i};
    rec(rec, i);
  }
  return out;
}

}  // namespace zm
