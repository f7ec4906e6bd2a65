#pragma once

#include "zonomorse/coxeter.hpp"
#include "zonomorse/simplicial.hpp"
#include "zonomorse/zonotope.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zm {

// Squared height h² = d(Z,·)² at every patch vertex, with the closest points.
// With the degenerate zonotope {0} this is the squared codistance.
struct HeightTable {
  const Patch* patch = nullptr;
  const Zonotope* zono = nullptr;
  std::vector<Q> h2;
  std::vector<Vec> closest;
};

HeightTable build_height_table(const Patch& p, const Zonotope& z);

// h² at an arbitrary patch point; gradient x - proj(x) when the height is
// positive, nothing on the zero level.
std::pair<Q, std::optional<Vec>> height_and_gradient(const HeightTable& t, const Vec& x);

struct ClassifyResult {
  bool horizontal = false;
  // vertex classes of equal h², each spanning a maximal horizontal face
  std::vector<Simplex> classes;
};
ClassifyResult classify_horizontal(const HeightTable& t, const Simplex& s);

struct EdgeReport {
  bool monotone = false;
  // sign of <gradient, other - this> per endpoint; empty at zero height
  std::array<std::optional<int>, 2> angle_sign;
  bool consistent = false;
};
EdgeReport edge_check(const HeightTable& t, const Simplex& e);

struct HorizontalInfo {
  Simplex simplex;
  Q h2;
  Vec gradient;                      // zero vector iff h2 == 0
  std::optional<Simplex> sigma_min;  // filled by moves_and_depth where resolvable
  int dp = 0;
  bool dp_certified = false;
};

// Link of a horizontal simplex with its factors classified against the
// gradient pole: a factor is horizontal iff all its vertex directions pair
// to zero with the gradient.
struct SplitLink {
  LinkComplex link;
  Vec gradient;
  std::vector<bool> factor_horizontal;
  std::vector<int> equatorial;  // link vertex positions with zero pairing
};

struct MoveGraph {
  std::vector<Simplex> nodes;  // positive-height horizontal simplices
  std::map<Simplex, int> node_id;
  std::vector<std::vector<int>> up;    // node -> cofaces it goes up to
  std::vector<std::vector<int>> down;  // node -> faces it goes down to
  std::vector<bool> resolved;          // sigma_min known
  std::vector<int> dp;                 // longest move sequence over known edges
  std::vector<bool> certified;         // dp authoritative (full star knowledge)
};

struct HorizontalRegistry {
  const Patch* patch = nullptr;
  const Zonotope* zono = nullptr;
  HeightTable table;
  std::vector<HorizontalInfo> infos;
  std::map<Simplex, int> index;
  bool moves_ready = false;
  std::optional<MoveGraph> moves;
  std::map<Simplex, SplitLink> link_cache;

  bool registered(const Simplex& s) const { return index.count(s) > 0; }
  const HorizontalInfo& info(const Simplex& s) const;
  HorizontalInfo& info(const Simplex& s);
};

// Classifies every patch simplex; registers the horizontal ones with their
// heights and gradients.
HorizontalRegistry build_registry(const Patch& p, const Zonotope& z);

// Cached factor split of the link of a positive-height horizontal simplex.
const SplitLink& split_link(HorizontalRegistry& r, const Simplex& s);

// The unique face t0 with: s\t in the horizontal link of t  <=>  t0 <= t,
// over all proper faces t of s.
Simplex sigma_min(HorizontalRegistry& r, const Simplex& s);

// Builds the move graph on positive-height horizontal simplices, verifies
// acyclicity, and computes depths as longest move sequences.
const MoveGraph& moves_and_depth(HorizontalRegistry& r);

// Subdivision whose vertices are the horizontal simplices: a set spans iff
// the union of its members' vertices spans a patch simplex and members of
// equal height are nested.
struct SubdividedComplex {
  const Patch* patch = nullptr;
  HorizontalRegistry* reg = nullptr;
  std::vector<Simplex> carriers;  // subdivision vertex -> horizontal simplex
  std::map<Simplex, int> vid;
  std::vector<Vec> barycenters;
  Complex complex;
};

SubdividedComplex subdivide(const Patch& p, HorizontalRegistry& r);

struct SubMorseValue {
  Q h2;
  int dp = 0;
  int dim = 0;

  bool operator==(const SubMorseValue& o) const {
    return h2 == o.h2 && dp == o.dp && dim == o.dim;
  }
  bool operator!=(const SubMorseValue& o) const { return !(*this == o); }
  bool operator<(const SubMorseValue& o) const {
    if (h2 != o.h2) return h2 < o.h2;
    if (dp != o.dp) return dp < o.dp;
    return dim < o.dim;
  }
  std::string str() const;
};

SubMorseValue sub_morse(const SubdividedComplex& sub, int v);

// Descending link of a subdivision vertex: the direct computation plus the
// predicted decomposition face * horizontal * vertical.
struct DescendingLink {
  int vertex = -1;
  Complex direct;     // on subdivision vertex ids
  Complex face_part;  // descending barycenters of proper carrier faces
  Complex hor_part;   // equal-height coface directions inside horizontal factors
  Complex ver_part;   // strictly lower neighbors (subdivided open hemisphere)
  Complex predicted;  // join of the three parts
  bool lemma_checked = false;  // depth lemmas were asserted (carrier = its min)
};

DescendingLink descending_link(SubdividedComplex& sub, int v);

struct DownUp {
  std::vector<int> down;  // link vertices strictly lower than the simplex
  std::vector<int> up;    // link vertices strictly higher
  std::optional<Q> up_hull_min;  // exact min of h² over conv(up)
  int up_witness = -1;           // member vertex attaining it
  bool separated = false;
  std::optional<Wall> witness;   // hyperplane between the simplex and conv(up)
};

DownUp down_up_sets(HorizontalRegistry& r, const Simplex& s);

// Distinct sub-Morse values over the subdivision, sorted increasingly.
std::vector<SubMorseValue> filtration_values(const SubdividedComplex& sub);

// Full subcomplex on vertices with at most j distinct values strictly below.
Complex filtration_stage(const SubdividedComplex& sub, int j);

}  // namespace zm
