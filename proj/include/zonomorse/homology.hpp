#pragma once

#include "zonomorse/rational.hpp"
#include "zonomorse/simplicial.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zm {

// Simplicial chain complex with exact rational rank computations.
// Reduced homology throughout: the empty complex has btilde_{-1} = 1.
struct BettiReport {
  int dim = -1;                       // dim of the complex, -1 if empty
  std::vector<long> reduced;          // reduced[i] = btilde_{i}, i = 0..dim
  long reduced_minus1 = 0;            // btilde_{-1} (1 iff complex empty)
  std::vector<std::vector<Z>> torsion;  // torsion[i]: invariant factors > 1 of H_i

  long btilde(int i) const;
  bool acyclic() const;               // all reduced Betti numbers vanish
  bool spherical(int d) const;        // btilde_i = 0 for i < d (wedge of d-spheres)
  bool empty() const { return dim < 0; }
  std::string str() const;
};

// Boundary matrices of a complex: rows are (k-1)-cells, columns are k-cells,
// entries +-1 with signs from the position parity of the removed vertex
// (cells carry the orientation of their sorted vertex list).
struct ChainComplex {
  std::vector<std::vector<Simplex>> cells;      // cells[k], sorted
  std::vector<std::map<Simplex, int>> index;    // cell -> column in cells[k]
  // boundary[k]: (#cells[k-1]) x (#cells[k]) sparse columns: (row, sign)
  std::vector<std::vector<std::vector<std::pair<int, int>>>> boundary;

  explicit ChainComplex(const Complex& c);
  long rank_boundary(int k) const;    // rank over Q of boundary[k]
};

BettiReport betti_numbers(const Complex& c, bool with_torsion = false);

// Convenience verdicts used by the verification suites.
bool is_acyclic(const Complex& c);
bool is_spherical_of_dim(const Complex& c, int d);

}  // namespace zm
