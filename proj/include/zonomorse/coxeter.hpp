#pragma once

#include "zonomorse/rational.hpp"
#include "zonomorse/simplicial.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace zm {

// Affine hyperplane {x : <normal, x> = offset}. Linear walls have offset 0.
struct Wall {
  Vec normal;
  Q offset;

  bool operator==(const Wall& o) const { return normal == o.normal && offset == o.offset; }
  bool operator<(const Wall& o) const {
    if (normal != o.normal) return normal < o.normal;
    return offset < o.offset;
  }
};

// Reflection across a wall; involutive isometry fixing the wall pointwise.
Vec reflect(const Wall& w, const Vec& v);
// Sign of <n, v> - offset.
int side_of(const Wall& w, const Vec& v);
// True iff u and v lie strictly on opposite sides.
bool separates(const Wall& w, const Vec& u, const Vec& v);

// Small dense rational matrix, rows-first.
struct Mat {
  std::vector<Vec> rows;

  static Mat identity(int n);
  int dim() const { return (int)rows.size(); }
  Vec apply(const Vec& v) const;
  Mat mul(const Mat& o) const;
  bool operator==(const Mat& o) const { return rows == o.rows; }
  bool operator<(const Mat& o) const { return rows < o.rows; }
};

// Linear reflection fixing the hyperplane orthogonal to `normal`.
Mat reflection_matrix(const Vec& normal, int ambient);

// Finite crystallographic root system in an exact rational realization.
// A- and G-types live in the zero-sum hyperplane of Q^3 (resp. Q^4) so that
// every root is integral; B/C-types use standard coordinates.
struct RootSystem {
  std::string name;          // a1, a2, b2, c2, g2, a3, b3, c3
  int rank = 0;
  int ambient = 0;
  std::vector<Vec> simple;   // simple roots, ordered
  Vec highest;               // highest root
  std::vector<Vec> roots;    // all roots, closed under negation and reflection
  std::vector<Vec> span_complement;  // basis of the orthogonal complement of span(roots)

  // Roots with positive leading coordinate: one representative per wall family.
  std::vector<Vec> positive_roots() const;
};

struct WeylGroup {
  std::vector<Mat> generators;  // simple reflections
  std::vector<Mat> elements;    // full group, from closure
};

std::pair<RootSystem, WeylGroup> build_system(const std::string& type);

// Affine tags append 't': a1t a2t c2t g2t a3t b3t c3t.
bool is_affine_tag(const std::string& tag);
std::string finite_part(const std::string& affine_tag);

// Vertices of the fundamental alcove; slot i is the vertex off the i-th
// bounding wall (slot 0 = origin, walls = simple roots and highest root = 1).
std::vector<Vec> fundamental_alcove(const RootSystem& rs);

// All affine walls <alpha, x> = k (alpha a positive root, k integral) that
// contain every point of `pts`.
std::vector<Wall> walls_through(const RootSystem& rs, const std::vector<Vec>& pts);

// Finite face-closed piece of the euclidean Coxeter complex around a base
// special vertex: all alcoves within gallery distance R-1 of the closed star
// of the base vertex.
struct Patch {
  std::string type;  // affine tag
  int radius = 0;
  RootSystem rs;
  WeylGroup weyl;
  Vec base;

  std::vector<Vec> coords;       // vertex id -> coordinates
  std::map<Vec, int> vid;        // inverse of coords
  std::vector<int> vtype;        // vertex id -> affine diagram node (alcove slot)
  std::vector<bool> special;     // <alpha, v> integral for every root
  Complex complex;               // all simplices on vertex ids
  std::vector<Simplex> alcoves;  // top-dimensional cells, sorted ids
  std::set<Simplex> alcove_set;

  int dim() const { return rs.rank; }
  int id_of(const Vec& p) const;  // -1 when absent
  std::vector<Simplex> alcoves_containing(const Simplex& s) const;
  // Every alcove and panel-neighbor around s is present, so links at s are
  // the true links of the full complex.
  bool star_complete(const Simplex& s) const;
  // The affine wall spanned by a panel (codimension-1 simplex).
  Wall panel_wall(const Simplex& panel) const;
};

Patch generate_patch(const std::string& affine_tag, int radius,
                     std::optional<Vec> base = std::nullopt);

// Link of a simplex, with the geometry needed on top of the abstract complex:
// one direction per link vertex (orthogonal to the carrier's affine span) and
// the decomposition into irreducible finite Coxeter factors.
struct LinkComplex {
  Simplex carrier;
  std::vector<int> verts;        // link vertices (patch ids)
  std::map<int, Vec> direction;  // orthogonal direction toward each vertex
  Complex complex;               // abstract link

  std::vector<std::vector<Vec>> factor_normals;  // irreducible wall-normal groups
  std::vector<std::string> factor_type;          // a1 a2 b2 g2 a3 b3
  std::vector<long> factor_order;                // reflection group order per factor
  std::map<int, int> factor_of;                  // link vertex -> factor index

  std::string type() const;      // factor tags sorted, joined with " x "
  long chamber_group_order() const;  // product of factor orders
};

LinkComplex link_of(const Patch& patch, const Simplex& sigma);

// Name an irreducible finite reflection group by (rank, order).
std::string coxeter_factor_name(int rank, long order);

// One euclidean apartment glued to a second copy of itself with the identity
// as opposition; codistance between opposite halves is plain distance under
// that identification.
struct TwinApartmentModel {
  Patch patch;
};

struct CodistanceResult {
  Q dist2;                   // squared codistance from x to op(y)
  std::optional<Vec> coray;  // primitive direction from op(y) through x
};

CodistanceResult codistance_and_coray(const TwinApartmentModel& m, const Vec& x, const Vec& y);

}  // namespace zm
