#pragma once

#include "zonomorse/coxeter.hpp"
#include "zonomorse/morse.hpp"
#include "zonomorse/simplicial.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zm {

// One irreducible factor of a finite spherical building: a thin Coxeter
// complex at q = 1, or a hard-coded thick geometry (projective line,
// projective plane, symplectic generalized quadrangle).
struct FactorSpec {
  std::string type;  // a1 a2 b2 c2 g2 a3 b3 c3; thick: a1 q<=5, a2 q<=3, b2/c2 q=2
  int q = 1;         // panel size q + 1
};

struct BuildingSpec {
  std::vector<FactorSpec> factors;
  std::string str() const;
};

// "a2(2)", "b2", "a1(2)*a1(2)". Factors joined with '*', thickness in
// parentheses, omitted for thin.
BuildingSpec parse_building_spec(const std::string& text);

// Finite reflection group of one factor with precomputed tables.
struct FactorGroup {
  RootSystem rs;
  std::vector<Mat> elements;
  int order = 0;
  int ident = -1;
  int w0 = -1;                         // longest element
  std::vector<int> len;                // Coxeter length
  std::vector<std::vector<int>> mul;   // composition, mul[a][b] = a * b
  std::vector<int> inv;
  std::vector<int> gens;               // simple reflections, in rs.simple order
};

// Finite spherical building as a generator-colored chamber system, realized
// as the flag complex of its corank-1 residues. Weyl distances take values
// in the product of the factor groups; product elements are mixed-radix
// encoded over factor element indices.
struct SphericalBuildingCx {
  BuildingSpec spec;
  int rank = 0;                   // colors across all factors
  std::vector<int> color_factor;  // color -> factor
  std::vector<int> color_local;   // color -> simple reflection within the factor
  std::vector<FactorGroup> groups;

  int chambers = 0;
  std::vector<std::vector<int>> panel_of;             // [color][chamber] -> panel
  std::vector<std::vector<std::vector<int>>> panels;  // [color][panel] -> chambers

  int nverts = 0;
  std::vector<int> vcolor;               // vertex -> color
  std::vector<std::vector<int>> cverts;  // chamber -> vertex of each color
  Complex complex;

  // base apartment: convex hull of the base chamber and a fixed opposite one
  int base_chamber = 0;
  int opposite_chamber = -1;
  std::vector<int> apartment;  // sorted chambers
  std::map<int, int> ap_elem;  // apartment chamber -> product element

  // mixed-radix product-group helpers
  std::vector<long> stride;
  long worder = 1;
  int wident = 0;
  int wpart(int w, int k) const;         // factor component
  int wmul(int a, int b) const;
  int winv(int a) const;
  int wlen(int w) const;
  int wmul_gen(int w, int color) const;  // w * s_color
  int wlongest() const;

  bool thick() const;  // every panel has at least 3 chambers
  int factor_of_vertex(int v) const { return color_factor[vcolor[v]]; }
};

SphericalBuildingCx build_building(const BuildingSpec& spec);

// Distances from c to every chamber, by breadth-first search.
std::vector<int> gallery_distances(const SphericalBuildingCx& b, int c);
std::vector<int> weyl_distances(const SphericalBuildingCx& b, int c);
// Colors along one minimal gallery from c to d; a reduced word for the
// Weyl distance.
std::vector<int> delta_word(const SphericalBuildingCx& b, int c, int d);

// Chamber map of the retraction onto the base apartment centered at c; fixes
// the apartment and preserves Weyl distance to c.
std::vector<int> retraction(const SphericalBuildingCx& b, int c);

// Chambers whose flag contains every vertex of `face`.
std::vector<int> residue_of(const SphericalBuildingCx& b, const Simplex& face);
// The gate: the unique chamber of the residue nearest to c.
int residue_projection(const SphericalBuildingCx& b, const std::vector<int>& residue, int c);

std::vector<int> opposite_chambers(const SphericalBuildingCx& b, int c);

// Apartment spanned by the base chamber and an opposite chamber, with the
// chamber -> element identification propagated gallery by gallery. Built
// without the retraction, so it can cross-check retraction-based charts.
struct ApartmentMap {
  std::vector<int> chamber_list;  // sorted
  std::map<int, int> elem;
};
ApartmentMap chart_apartment(const SphericalBuildingCx& b, int copp);

// Rational directions on the model sphere. Standalone realizations place the
// base apartment on the Coxeter fans of the factors in block coordinates;
// link realizations borrow the link's patch directions. Every vertex carries
// the direction of its retraction image; base-apartment vertices are fixed.
struct RealizedBuilding {
  const SphericalBuildingCx* b = nullptr;
  std::vector<Vec> direction;
  std::vector<int> retract_vertex;               // vertex -> base-apartment vertex
  std::optional<std::vector<Q>> height;          // squared heights (link realizations)
  std::optional<std::vector<int>> patch_vertex;  // vertex -> patch vertex id
};

RealizedBuilding realize(const SphericalBuildingCx& b);

// Identify the base apartment with the link of a positive-height horizontal
// simplex, anchoring the base chamber at a link chamber whose closed cone
// contains `pole`, and transport directions and squared heights through the
// retraction.
RealizedBuilding realize_on_link(const SphericalBuildingCx& b, const HeightTable& t,
                                 const LinkComplex& lk, const Vec& pole);

enum class AngleClass { Acute, Equatorial, Obtuse };

// Per-vertex class by the sign of <pole, direction>; no angle values.
struct PoleData {
  Vec pole;
  std::vector<AngleClass> cls;
};

PoleData angle_classify(const RealizedBuilding& rb, const Vec& pole);

// closed/open/equator are the full subcomplexes on the non-acute, obtuse,
// and equatorial vertices; hor joins the factors lying entirely in the
// equator, ver joins the rest, and hor * ver must reproduce the building.
struct HemisphereComplexes {
  Complex closed, open, equator, hor, ver;
  std::vector<bool> factor_equatorial;
};

HemisphereComplexes hemisphere_complexes(const RealizedBuilding& rb, const PoleData& pd);

// Bad sets whose maximal avoiding subcomplex reduces to a vertex predicate;
// each kind records the per-apartment convexity argument behind that
// reduction.
struct SubcomplexSpec {
  enum Kind { EmptyBadSet, ClosedHemisphere, OpenHemisphere, Equator, HeightAtMost };
  Kind kind = EmptyBadSet;
  Vec pole;         // hemisphere kinds
  Q threshold = 0;  // squared height bound
  std::string justification() const;
};

Complex complement_complex(const RealizedBuilding& rb, const SubcomplexSpec& spec);

// Thick model matching the factors of a link at panel size q + 1.
BuildingSpec thick_spec_for_link(const LinkComplex& lk, int q);

// Descending link of a self-minimal horizontal simplex with its link
// thickened to the given model: boundary-sphere part * equal-height part of
// the horizontal factors, barycentrically subdivided * open hemisphere
// complex of the vertical factors. Squared heights of model vertices are
// those of their retraction images; that transport is a modeling choice and
// is flagged on the result.
struct ThickDescendingLink {
  Simplex sigma;
  Q h2;
  Vec pole;
  std::vector<Simplex> face_elems;  // face-part vertex -> proper face of sigma
  std::vector<Simplex> hor_elems;   // hor-part vertex -> simplex of the horizontal factors
  std::vector<int> ver_verts;       // ver-part vertex -> model vertex
  Complex face_part, hor_part, ver_part;  // disjoint label ranges
  Complex assembled;                      // join of the three parts
  bool retraction_transport = true;
};

ThickDescendingLink thick_descending_link(HorizontalRegistry& r, const Simplex& sigma,
                                          const SphericalBuildingCx& model);

}  // namespace zm
