#pragma once

#include "zonomorse/coxeter.hpp"
#include "zonomorse/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zm {

enum class Richness { OrbitClosure, AlmostRich, Rich };

std::string richness_name(Richness r);
std::optional<Richness> richness_from_name(const std::string& s);

// Finite W-invariant generator set for the height zonotope.
struct GeneratorSet {
  std::vector<Vec> vectors;  // distinct, nonzero
  Richness level = Richness::OrbitClosure;
  bool invariance_verified = false;

  bool contains(const Vec& v) const;
};

// AlmostRich: all differences of adjacent patch vertices.
// Rich: all differences of distinct vertices whose closed stars intersect.
// OrbitClosure: W-orbit closure of a seed (default: the simple roots).
GeneratorSet build_generators(const Patch& patch, Richness level,
                              const std::vector<Vec>* orbit_seed = nullptr);

// Convex zonotope Z(D) = { sum_v t_v v : t_v in [0,1] }, held in both a
// vertex list and a facet list which are cross-validated at construction.
struct Zonotope {
  GeneratorSet gens;
  int ambient = 0;
  int deff = 0;  // dimension of span(D)

  // parallel generators merged into one segment per line: Z = t0 + Z(merged)
  Vec t0;
  std::vector<Vec> merged;
  std::vector<Vec> span_basis;       // independent generators spanning span(D)
  std::vector<Vec> span_complement;  // orthogonal complement basis

  std::vector<Vec> vertices;
  struct Facet {
    Vec normal;  // primitive
    Q offset;    // <normal, x> <= offset on Z, with equality on the facet
  };
  std::vector<Facet> facets;

  // faces as sorted vertex-index sets, closed under intersection; the last
  // entry is the improper face (all of Z)
  struct Face {
    std::vector<int> vertex_ids;
    std::vector<int> active_facets;
    std::vector<Vec> basis;  // affine direction basis
    int dim = 0;
  };
  std::vector<Face> faces;

  bool in_span(const Vec& x) const;
  bool contains(const Vec& x) const;
  Q support(const Vec& n) const;  // max of <n, .> over Z
  Vec center() const;             // half-sum of the generators
};

Zonotope zonotope_of(const GeneratorSet& d);

// Degenerate zonotope {0}: turns the height machinery into plain distance
// from the origin.
Zonotope point_zonotope(int ambient);

// Check that every w maps the vertex set of Z onto itself.
bool zonotope_invariant_under(const Zonotope& z, const WeylGroup& w);

// Face of Z in direction n, in the translation + sub-zonotope form.
struct ZFace {
  Vec n;                     // supporting direction
  Vec translation;           // sum of generators pairing positively with n
  std::vector<Vec> residual; // generators orthogonal to n (D_n)
  std::vector<Vec> vertices;
  int dim = 0;
};

// Halfspace description of the normal cone N(F): pairings with `nonneg`
// must be >= 0, with `zero` exactly 0, with `nonpos` <= 0. The description
// constrains only span(D); the orthogonal complement is lineality.
struct NormalConeDesc {
  std::vector<Vec> nonneg;
  std::vector<Vec> zero;
  std::vector<Vec> nonpos;
  std::vector<Vec> rays;  // extreme rays of N(F) within span(D), primitive

  bool contains(const Vec& y) const;
};

std::pair<ZFace, NormalConeDesc> face_and_cone(const Zonotope& z, const Vec& n);

struct ProjResult {
  Vec point;
  Q dist2;
};

// Exact closest point of Z to x.
ProjResult project(const Zonotope& z, const Vec& x);

struct MinSimplexResult {
  Q dist2;
  std::vector<int> witness;  // indices into the simplex vertex list (carrier face)
  Vec argmin;                // minimizing point of the simplex
  Vec closest;               // matching closest point of Z
  bool vertex_certified = false;  // found by the vertex optimality certificate
};

// Exact minimum of squared distance to Z over the simplex conv(pts).
MinSimplexResult min_on_simplex(const Zonotope& z, const std::vector<Vec>& pts);

// True iff no reflection wall of W strictly separates any pair of
// {v_F, v_N, v_F + v_N} over the sampled points: v_F from the face
// (vertices + random convex combinations), v_N from the normal cone
// (extreme rays + random conic combinations).
bool weyl_chamber_check(const Zonotope& z, const WeylGroup& w, const ZFace& f,
                        int samples, uint64_t seed = 1);

// True iff some t in [0,1] keeps both z - t v and z + (1-t) v inside Z.
bool segment_through(const Zonotope& zon, const Vec& z, const Vec& v);

}  // namespace zm
