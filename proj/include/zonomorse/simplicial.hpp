#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace zm {

// Abstract simplex: strictly increasing vertex ids.
using Simplex = std::vector<int>;

inline Simplex sorted_simplex(Simplex s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// Finite abstract simplicial complex, stored as the full set of nonempty
// simplices. Sizes in this project stay in the low thousands.
struct Complex {
  std::set<Simplex> cells;

  bool empty() const { return cells.empty(); }
  int dim() const {
    int d = -1;
    for (const auto& s : cells) d = std::max(d, (int)s.size() - 1);
    return d;
  }
  bool contains(const Simplex& s) const { return cells.count(s) > 0; }

  void add_closed(const Simplex& s);  // s and all nonempty faces
  std::set<int> vertex_set() const;
  std::vector<Simplex> cells_of_dim(int d) const;
  std::vector<Simplex> maximal_cells() const;

  // Largest subcomplex whose simplices use only `keep` vertices.
  Complex full_subcomplex(const std::set<int>& keep) const;
  // Link of s: all t disjoint from s with t ∪ s in the complex.
  Complex link(const Simplex& s) const;

  bool operator==(const Complex& o) const { return cells == o.cells; }
};

// Join: every union of a simplex of a and a simplex of b (plus both factors).
// Vertex sets must be disjoint.
Complex join(const Complex& a, const Complex& b);

std::vector<Simplex> proper_faces(const Simplex& s);
std::vector<Simplex> nonempty_faces(const Simplex& s);

// Order complex of a finite poset given by a strict-containment test over
// `elems`; vertex i of the result stands for elems[i]. Used for barycentric
// subdivisions of face posets.
Complex chain_complex_of_subsets(const std::vector<Simplex>& elems);

}  // namespace zm
