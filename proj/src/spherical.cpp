#include "zonomorse/spherical.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace zm {

std::string BuildingSpec::str() const {
  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += "*";
    out += f.type;
    if (f.q > 1) out += "(" + std::to_string(f.q) + ")";
  }
  return out;
}

BuildingSpec parse_building_spec(const std::string& text) {
  BuildingSpec spec;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, '*')) {
    std::string s;
    for (char ch : part)
      if (!std::isspace((unsigned char)ch)) s += ch;
    require(!s.empty(), ErrorKind::Config, "empty factor in building spec: " + text);
    FactorSpec f;
    auto open = s.find('(');
    if (open == std::string::npos) {
      f.type = s;
    } else {
      std::string num = s.substr(open + 1);
      require(s.back() == ')' && num.size() >= 2, ErrorKind::Config,
              "malformed thickness in building spec: " + text);
      num.pop_back();
      require(num.find_first_not_of("0123456789") == std::string::npos, ErrorKind::Config,
              "malformed thickness in building spec: " + text);
      f.type = s.substr(0, open);
      f.q = std::stoi(num);
    }
    spec.factors.push_back(f);
  }
  require(!spec.factors.empty(), ErrorKind::Config, "empty building spec");
  return spec;
}

int SphericalBuildingCx::wpart(int w, int k) const {
  return (int)((w / stride[k]) % groups[k].order);
}

int SphericalBuildingCx::wmul(int a, int b) const {
  long out = 0;
  for (int k = 0; k < (int)groups.size(); ++k)
    out += (long)groups[k].mul[wpart(a, k)][wpart(b, k)] * stride[k];
  return (int)out;
}

int SphericalBuildingCx::winv(int a) const {
  long out = 0;
  for (int k = 0; k < (int)groups.size(); ++k)
    out += (long)groups[k].inv[wpart(a, k)] * stride[k];
  return (int)out;
}

int SphericalBuildingCx::wlen(int w) const {
  int n = 0;
  for (int k = 0; k < (int)groups.size(); ++k) n += groups[k].len[wpart(w, k)];
  return n;
}

int SphericalBuildingCx::wmul_gen(int w, int color) const {
  const int k = color_factor[color];
  const FactorGroup& g = groups[k];
  int p = wpart(w, k);
  int p2 = g.mul[p][g.gens[color_local[color]]];
  return (int)(w + ((long)p2 - p) * stride[k]);
}

int SphericalBuildingCx::wlongest() const {
  long out = 0;
  for (int k = 0; k < (int)groups.size(); ++k) out += (long)groups[k].w0 * stride[k];
  return (int)out;
}

bool SphericalBuildingCx::thick() const {
  for (int t = 0; t < rank; ++t)
    for (const auto& p : panels[t])
      if (p.size() < 3) return false;
  return true;
}

namespace {

FactorGroup make_factor_group(const std::string& type) {
  auto [rs, weyl] = build_system(type);
  FactorGroup g;
  g.rs = rs;
  g.elements = weyl.elements;
  g.order = (int)g.elements.size();
  std::map<Mat, int> index;
  for (int i = 0; i < g.order; ++i) index[g.elements[i]] = i;
  g.ident = index.at(Mat::identity(rs.ambient));
  for (const auto& s : rs.simple) g.gens.push_back(index.at(reflection_matrix(s, rs.ambient)));

  // lengths count root hyperplanes separating a chamber from its image; u is
  // an interior chamber point, so no root pairs to zero with it
  auto alcove = fundamental_alcove(rs);
  Vec u(rs.ambient);
  for (int i = 1; i <= rs.rank; ++i) u += alcove[i];
  g.len.assign(g.order, 0);
  for (int w = 0; w < g.order; ++w) {
    int n = 0;
    for (const auto& a : rs.roots)
      if (dot(a, u) > 0 && dot(g.elements[w].apply(a), u) < 0) ++n;
    g.len[w] = n;
  }
  require(g.len[g.ident] == 0, ErrorKind::PaperContradiction, "identity has nonzero length");
  g.w0 = (int)(std::max_element(g.len.begin(), g.len.end()) - g.len.begin());
  require(std::count(g.len.begin(), g.len.end(), g.len[g.w0]) == 1,
          ErrorKind::PaperContradiction, "longest element is not unique");

  g.mul.assign(g.order, std::vector<int>(g.order));
  for (int a = 0; a < g.order; ++a)
    for (int c = 0; c < g.order; ++c) g.mul[a][c] = index.at(g.elements[a].mul(g.elements[c]));
  g.inv.assign(g.order, -1);
  for (int a = 0; a < g.order; ++a)
    for (int c = 0; c < g.order; ++c)
      if (g.mul[a][c] == g.ident) g.inv[a] = c;
  return g;
}

// chamber system of one factor, colors local
struct FactorChambers {
  int n = 0;
  std::vector<std::vector<int>> panel_of;
  std::vector<std::vector<std::vector<int>>> panels;
};

FactorChambers thin_chambers(const FactorGroup& g) {
  FactorChambers fc;
  fc.n = g.order;
  const int r = (int)g.gens.size();
  fc.panel_of.assign(r, std::vector<int>(fc.n, -1));
  fc.panels.assign(r, {});
  for (int i = 0; i < r; ++i)
    for (int w = 0; w < fc.n; ++w) {
      if (fc.panel_of[i][w] >= 0) continue;
      int w2 = g.mul[w][g.gens[i]];
      int pid = (int)fc.panels[i].size();
      fc.panel_of[i][w] = fc.panel_of[i][w2] = pid;
      fc.panels[i].push_back({std::min(w, w2), std::max(w, w2)});
    }
  return fc;
}

FactorChambers line_chambers(int q) {
  FactorChambers fc;
  fc.n = q + 1;
  fc.panel_of.assign(1, std::vector<int>(fc.n, 0));
  std::vector<int> all(fc.n);
  std::iota(all.begin(), all.end(), 0);
  fc.panels = {{all}};
  return fc;
}

// flags of the projective plane over the prime field of order q; points and
// lines are both normalized triples, incidence is a vanishing dot product
FactorChambers plane_chambers(int q) {
  std::set<std::array<int, 3>> seen;
  std::vector<std::array<int, 3>> pts;
  for (int a = 0; a < q; ++a)
    for (int c = 0; c < q; ++c)
      for (int e = 0; e < q; ++e) {
        std::array<int, 3> v = {a, c, e};
        int lead = a ? a : (c ? c : e);
        if (!lead) continue;
        int linv = 0;
        for (int j = 1; j < q; ++j)
          if (lead * j % q == 1) linv = j;
        for (auto& x : v) x = x * linv % q;
        if (seen.insert(v).second) pts.push_back(v);
      }
  require((int)pts.size() == q * q + q + 1, ErrorKind::PaperContradiction,
          "projective plane has the wrong number of points");

  FactorChambers fc;
  fc.panel_of.assign(2, {});
  fc.panels.assign(2, std::vector<std::vector<int>>(pts.size()));
  for (int p = 0; p < (int)pts.size(); ++p)
    for (int l = 0; l < (int)pts.size(); ++l) {
      int d = 0;
      for (int j = 0; j < 3; ++j) d += pts[p][j] * pts[l][j];
      if (d % q) continue;
      int flag = fc.n++;
      fc.panel_of[0].push_back(l);  // color 0 varies the point along a line
      fc.panel_of[1].push_back(p);  // color 1 varies the line through a point
      fc.panels[0][l].push_back(flag);
      fc.panels[1][p].push_back(flag);
    }
  require(fc.n == (q * q + q + 1) * (q + 1), ErrorKind::PaperContradiction,
          "projective plane has the wrong number of flags");
  for (int t = 0; t < 2; ++t)
    for (const auto& p : fc.panels[t])
      require((int)p.size() == q + 1, ErrorKind::PaperContradiction,
              "projective plane panel size off");
  return fc;
}

// flags of the symplectic generalized quadrangle over the two-element field:
// all 15 nonzero vectors are points, lines are the totally isotropic planes
FactorChambers quadrangle_chambers() {
  auto form = [](int x, int y) {
    auto bit = [](int v, int j) { return (v >> j) & 1; };
    return (bit(x, 0) & bit(y, 1)) ^ (bit(x, 1) & bit(y, 0)) ^ (bit(x, 2) & bit(y, 3)) ^
           (bit(x, 3) & bit(y, 2));
  };
  std::set<std::array<int, 3>> lineset;
  for (int x = 1; x < 16; ++x)
    for (int y = x + 1; y < 16; ++y) {
      if (form(x, y)) continue;
      std::array<int, 3> l = {x, y, x ^ y};
      std::sort(l.begin(), l.end());
      lineset.insert(l);
    }
  std::vector<std::array<int, 3>> lines(lineset.begin(), lineset.end());
  require((int)lines.size() == 15, ErrorKind::PaperContradiction,
          "quadrangle has the wrong number of isotropic lines");

  FactorChambers fc;
  fc.panel_of.assign(2, {});
  fc.panels.assign(2, {});
  fc.panels[0].assign(lines.size(), {});
  fc.panels[1].assign(15, {});
  for (int l = 0; l < (int)lines.size(); ++l)
    for (int x : lines[l]) {
      int flag = fc.n++;
      fc.panel_of[0].push_back(l);
      fc.panel_of[1].push_back(x - 1);
      fc.panels[0][l].push_back(flag);
      fc.panels[1][x - 1].push_back(flag);
    }
  require(fc.n == 45, ErrorKind::PaperContradiction, "quadrangle has the wrong number of flags");
  for (int t = 0; t < 2; ++t)
    for (const auto& p : fc.panels[t])
      require((int)p.size() == 3, ErrorKind::PaperContradiction, "quadrangle panel size off");
  return fc;
}

FactorChambers factor_chambers(const FactorSpec& f, const FactorGroup& g) {
  require(f.q >= 1, ErrorKind::Unsupported, "thickness must be positive");
  if (f.q == 1) return thin_chambers(g);
  if (f.type == "a1") {
    require(f.q <= 5, ErrorKind::Unsupported, "projective line supported up to q = 5");
    return line_chambers(f.q);
  }
  if (f.type == "a2") {
    require(f.q == 2 || f.q == 3, ErrorKind::Unsupported,
            "projective plane supported for q in {2, 3}");
    return plane_chambers(f.q);
  }
  if (f.type == "b2" || f.type == "c2") {
    require(f.q == 2, ErrorKind::Unsupported, "quadrangle supported for q = 2 only");
    return quadrangle_chambers();
  }
  fail(ErrorKind::Unsupported, "no thick model for " + f.type);
}

}  // namespace

std::vector<int> gallery_distances(const SphericalBuildingCx& b, int c) {
  require(0 <= c && c < b.chambers, ErrorKind::Precondition, "chamber out of range");
  std::vector<int> d(b.chambers, -1);
  std::deque<int> bfs = {c};
  d[c] = 0;
  while (!bfs.empty()) {
    int a = bfs.front();
    bfs.pop_front();
    for (int t = 0; t < b.rank; ++t)
      for (int n : b.panels[t][b.panel_of[t][a]])
        if (d[n] < 0) {
          d[n] = d[a] + 1;
          bfs.push_back(n);
        }
  }
  require(std::find(d.begin(), d.end(), -1) == d.end(), ErrorKind::PaperContradiction,
          "chamber system disconnected");
  return d;
}

std::vector<int> weyl_distances(const SphericalBuildingCx& b, int c) {
  require(0 <= c && c < b.chambers, ErrorKind::Precondition, "chamber out of range");
  std::vector<int> wd(b.chambers, -1);
  std::deque<int> bfs = {c};
  wd[c] = b.wident;
  while (!bfs.empty()) {
    int a = bfs.front();
    bfs.pop_front();
    for (int t = 0; t < b.rank; ++t)
      for (int n : b.panels[t][b.panel_of[t][a]])
        if (wd[n] < 0) {
          wd[n] = b.wmul_gen(wd[a], t);
          bfs.push_back(n);
        }
  }
  return wd;
}

std::vector<int> delta_word(const SphericalBuildingCx& b, int c, int d) {
  require(0 <= c && c < b.chambers && 0 <= d && d < b.chambers, ErrorKind::Precondition,
          "chamber out of range");
  std::vector<int> parent(b.chambers, -1), via(b.chambers, -1);
  std::vector<bool> seen(b.chambers, false);
  std::deque<int> bfs = {c};
  seen[c] = true;
  while (!bfs.empty()) {
    int a = bfs.front();
    bfs.pop_front();
    for (int t = 0; t < b.rank; ++t)
      for (int n : b.panels[t][b.panel_of[t][a]])
        if (!seen[n]) {
          seen[n] = true;
          parent[n] = a;
          via[n] = t;
          bfs.push_back(n);
        }
  }
  std::vector<int> word;
  for (int a = d; a != c; a = parent[a]) word.push_back(via[a]);
  std::reverse(word.begin(), word.end());
  return word;
}

SphericalBuildingCx build_building(const BuildingSpec& spec) {
  require(!spec.factors.empty(), ErrorKind::Unsupported, "building spec needs a factor");
  SphericalBuildingCx b;
  b.spec = spec;
  std::vector<FactorChambers> fcs;
  for (const auto& f : spec.factors) {
    b.groups.push_back(make_factor_group(f.type));
    fcs.push_back(factor_chambers(f, b.groups.back()));
    int k = (int)b.groups.size() - 1;
    for (int i = 0; i < b.groups[k].rs.rank; ++i) {
      b.color_factor.push_back(k);
      b.color_local.push_back(i);
    }
  }
  b.rank = (int)b.color_factor.size();

  const int K = (int)b.groups.size();
  b.stride.assign(K, 1);
  b.worder = 1;
  long wid = 0;
  for (int k = 0; k < K; ++k) {
    b.stride[k] = b.worder;
    b.worder *= b.groups[k].order;
    wid += (long)b.groups[k].ident * b.stride[k];
  }
  b.wident = (int)wid;

  std::vector<long> cstride(K, 1);
  long ctotal = 1;
  for (int k = 0; k < K; ++k) {
    cstride[k] = ctotal;
    ctotal *= fcs[k].n;
  }
  b.chambers = (int)ctotal;

  // product panels: one factor coordinate sweeps its local panel
  b.panel_of.assign(b.rank, std::vector<int>(b.chambers, -1));
  b.panels.assign(b.rank, {});
  for (int t = 0; t < b.rank; ++t) {
    const int k = b.color_factor[t], i = b.color_local[t];
    std::map<std::pair<int, long>, int> pid;
    for (int c = 0; c < b.chambers; ++c) {
      int ck = (int)((c / cstride[k]) % fcs[k].n);
      long rest = c - (long)ck * cstride[k];
      auto key = std::make_pair(fcs[k].panel_of[i][ck], rest);
      auto [it, fresh] = pid.emplace(key, (int)b.panels[t].size());
      if (fresh) b.panels[t].push_back({});
      b.panel_of[t][c] = it->second;
      b.panels[t][it->second].push_back(c);
    }
    int expect = spec.factors[k].q + 1;
    for (const auto& p : b.panels[t])
      require((int)p.size() == expect, ErrorKind::PaperContradiction, "panel size off");
  }

  // one vertex per corank-1 residue: components over the other colors
  b.cverts.assign(b.chambers, std::vector<int>(b.rank, -1));
  for (int t = 0; t < b.rank; ++t)
    for (int c = 0; c < b.chambers; ++c) {
      if (b.cverts[c][t] >= 0) continue;
      int v = b.nverts++;
      b.vcolor.push_back(t);
      std::deque<int> bfs = {c};
      b.cverts[c][t] = v;
      while (!bfs.empty()) {
        int a = bfs.front();
        bfs.pop_front();
        for (int s = 0; s < b.rank; ++s) {
          if (s == t) continue;
          for (int d : b.panels[s][b.panel_of[s][a]])
            if (b.cverts[d][t] < 0) {
              b.cverts[d][t] = v;
              bfs.push_back(d);
            }
        }
      }
    }
  for (int c = 0; c < b.chambers; ++c) {
    Simplex s(b.cverts[c].begin(), b.cverts[c].end());
    std::sort(s.begin(), s.end());
    require(std::adjacent_find(s.begin(), s.end()) == s.end(), ErrorKind::PaperContradiction,
            "chamber flag repeats a vertex");
    b.complex.add_closed(s);
  }

  // gate law on every panel from every chamber: one nearest chamber, the
  // rest one step farther with the Weyl distance extended by the color
  for (int c = 0; c < b.chambers; ++c) {
    auto gd = gallery_distances(b, c);
    auto wd = weyl_distances(b, c);
    for (int d = 0; d < b.chambers; ++d)
      require(gd[d] == b.wlen(wd[d]), ErrorKind::PaperContradiction,
              "gallery distance differs from the Weyl length");
    for (int t = 0; t < b.rank; ++t)
      for (const auto& p : b.panels[t]) {
        int gate = p[0];
        for (int d : p)
          if (gd[d] < gd[gate]) gate = d;
        int at_min = 0;
        for (int d : p) {
          if (gd[d] == gd[gate]) {
            ++at_min;
            continue;
          }
          require(gd[d] == gd[gate] + 1, ErrorKind::PaperContradiction,
                  "panel spreads over more than two distances");
          require(wd[d] == b.wmul_gen(wd[gate], t), ErrorKind::PaperContradiction,
                  "panel Weyl distances do not differ by the color");
        }
        require(at_min == 1, ErrorKind::PaperContradiction, "panel gate is not unique");
      }
  }

  // base apartment: convex hull of the base chamber and its first opposite
  b.base_chamber = 0;
  auto gd0 = gallery_distances(b, b.base_chamber);
  auto wd0 = weyl_distances(b, b.base_chamber);
  const int L = b.wlen(b.wlongest());
  for (int c = 0; c < b.chambers && b.opposite_chamber < 0; ++c)
    if (wd0[c] == b.wlongest()) b.opposite_chamber = c;
  require(b.opposite_chamber >= 0, ErrorKind::PaperContradiction, "no opposite chamber");
  auto gd1 = gallery_distances(b, b.opposite_chamber);
  for (int c = 0; c < b.chambers; ++c)
    if (gd0[c] + gd1[c] == L) b.apartment.push_back(c);
  require((long)b.apartment.size() == b.worder, ErrorKind::PaperContradiction,
          "base apartment has the wrong number of chambers");
  std::set<int> elems;
  for (int a : b.apartment) {
    b.ap_elem[a] = wd0[a];
    elems.insert(wd0[a]);
  }
  require((long)elems.size() == b.worder, ErrorKind::PaperContradiction,
          "base apartment repeats a Weyl distance");
  for (int a : b.apartment) {
    for (int t = 0; t < b.rank; ++t) {
      int partners = 0;
      for (int d : b.panels[t][b.panel_of[t][a]])
        if (d != a && std::binary_search(b.apartment.begin(), b.apartment.end(), d)) ++partners;
      require(partners == 1, ErrorKind::PaperContradiction, "base apartment is not thin");
    }
    auto wda = weyl_distances(b, a);
    for (int d : b.apartment)
      require(wda[d] == b.wmul(b.winv(b.ap_elem.at(a)), b.ap_elem.at(d)),
              ErrorKind::PaperContradiction, "base apartment is not Weyl-isometric to its group");
  }
  return b;
}

std::vector<int> retraction(const SphericalBuildingCx& b, int c) {
  require(std::binary_search(b.apartment.begin(), b.apartment.end(), c),
          ErrorKind::Precondition, "retraction center must lie in the base apartment");
  auto wd = weyl_distances(b, c);
  std::map<int, int> to_ap;
  for (int a : b.apartment) to_ap[wd[a]] = a;
  std::vector<int> out(b.chambers);
  for (int d = 0; d < b.chambers; ++d) {
    auto it = to_ap.find(wd[d]);
    require(it != to_ap.end(), ErrorKind::PaperContradiction,
            "Weyl distance misses the base apartment");
    out[d] = it->second;
  }
  return out;
}

std::vector<int> residue_of(const SphericalBuildingCx& b, const Simplex& face) {
  std::vector<int> out;
  for (int c = 0; c < b.chambers; ++c) {
    bool ok = true;
    for (int v : face)
      if (b.cverts[c][b.vcolor[v]] != v) {
        ok = false;
        break;
      }
    if (ok) out.push_back(c);
  }
  require(!out.empty(), ErrorKind::Precondition, "face spans no chamber");
  return out;
}

int residue_projection(const SphericalBuildingCx& b, const std::vector<int>& residue, int c) {
  require(!residue.empty(), ErrorKind::Precondition, "empty residue");
  auto gd = gallery_distances(b, c);
  int gate = residue[0];
  for (int d : residue)
    if (gd[d] < gd[gate]) gate = d;
  int ties = 0;
  for (int d : residue)
    if (gd[d] == gd[gate]) ++ties;
  require(ties == 1, ErrorKind::Precondition, "gate is not unique; not a residue");
  return gate;
}

std::vector<int> opposite_chambers(const SphericalBuildingCx& b, int c) {
  auto wd = weyl_distances(b, c);
  std::vector<int> out;
  for (int d = 0; d < b.chambers; ++d)
    if (wd[d] == b.wlongest()) out.push_back(d);
  return out;
}

ApartmentMap chart_apartment(const SphericalBuildingCx& b, int copp) {
  auto gd0 = gallery_distances(b, b.base_chamber);
  auto gdo = gallery_distances(b, copp);
  const int L = b.wlen(b.wlongest());
  require(gd0[copp] == L, ErrorKind::Precondition, "chamber is not opposite the base chamber");
  std::set<int> in;
  for (int c = 0; c < b.chambers; ++c)
    if (gd0[c] + gdo[c] == L) in.insert(c);

  ApartmentMap am;
  am.elem[b.base_chamber] = b.wident;
  std::deque<int> bfs = {b.base_chamber};
  while (!bfs.empty()) {
    int a = bfs.front();
    bfs.pop_front();
    for (int t = 0; t < b.rank; ++t) {
      int partner = -1;
      for (int d : b.panels[t][b.panel_of[t][a]])
        if (d != a && in.count(d)) {
          require(partner < 0, ErrorKind::PaperContradiction, "apartment is not thin");
          partner = d;
        }
      require(partner >= 0, ErrorKind::PaperContradiction,
              "apartment chamber misses a panel partner");
      int e = b.wmul_gen(am.elem.at(a), t);
      auto it = am.elem.find(partner);
      if (it == am.elem.end()) {
        am.elem[partner] = e;
        bfs.push_back(partner);
      } else {
        require(it->second == e, ErrorKind::PaperContradiction,
                "apartment chart propagation inconsistent");
      }
    }
  }
  require((long)am.elem.size() == b.worder, ErrorKind::PaperContradiction,
          "apartment chart misses chambers");
  for (const auto& [c, e] : am.elem) am.chamber_list.push_back(c);
  return am;
}

namespace {

// vertex map of the retraction centered at the base chamber; also checks the
// retraction is simplicial and fixes the base apartment pointwise
std::vector<int> retract_vertices(const SphericalBuildingCx& b) {
  auto rho = retraction(b, b.base_chamber);
  std::vector<int> out(b.nverts, -1);
  for (int c = 0; c < b.chambers; ++c)
    for (int t = 0; t < b.rank; ++t) {
      int v = b.cverts[c][t];
      int img = b.cverts[rho[c]][t];
      if (out[v] < 0)
        out[v] = img;
      else
        require(out[v] == img, ErrorKind::PaperContradiction, "retraction is not simplicial");
    }
  for (int a : b.apartment)
    for (int v : b.cverts[a])
      require(out[v] == v, ErrorKind::PaperContradiction,
              "retraction moves a base-apartment vertex");
  return out;
}

}  // namespace

RealizedBuilding realize(const SphericalBuildingCx& b) {
  RealizedBuilding rb;
  rb.b = &b;
  int total = 0;
  std::vector<int> ofs;
  for (const auto& g : b.groups) {
    ofs.push_back(total);
    total += g.rs.ambient;
  }
  // fundamental weights: the nonzero vertices of the fundamental alcove
  std::vector<std::vector<Vec>> weight(b.groups.size());
  for (size_t k = 0; k < b.groups.size(); ++k) {
    auto fa = fundamental_alcove(b.groups[k].rs);
    weight[k].assign(fa.begin() + 1, fa.end());
  }
  rb.direction.assign(b.nverts, Vec());
  for (int a : b.apartment) {
    int e = b.ap_elem.at(a);
    for (int t = 0; t < b.rank; ++t) {
      int k = b.color_factor[t];
      Vec d = b.groups[k].elements[b.wpart(e, k)].apply(weight[k][b.color_local[t]]);
      Vec emb(total);
      for (int j = 0; j < b.groups[k].rs.ambient; ++j) emb[ofs[k] + j] = d[j];
      int v = b.cverts[a][t];
      if (rb.direction[v].dim() == 0)
        rb.direction[v] = emb;
      else
        require(rb.direction[v] == emb, ErrorKind::PaperContradiction,
                "apartment realization inconsistent across chambers");
    }
  }
  rb.retract_vertex = retract_vertices(b);
  for (int v = 0; v < b.nverts; ++v) {
    if (rb.direction[v].dim() == 0) rb.direction[v] = rb.direction[rb.retract_vertex[v]];
    require(rb.direction[v].dim() == total && !rb.direction[v].is_zero(),
            ErrorKind::PaperContradiction, "vertex direction degenerate");
  }
  return rb;
}

RealizedBuilding realize_on_link(const SphericalBuildingCx& b, const HeightTable& t,
                                 const LinkComplex& lk, const Vec& pole) {
  std::vector<std::string> btypes;
  for (const auto& g : b.groups) btypes.push_back(coxeter_factor_name(g.rs.rank, g.order));
  {
    auto bs = btypes, ls = lk.factor_type;
    std::sort(bs.begin(), bs.end());
    std::sort(ls.begin(), ls.end());
    require(bs == ls, ErrorKind::Precondition, "model factors differ from the link factors");
  }

  // the link as a thin chamber complex
  std::vector<Simplex> cells = lk.complex.cells_of_dim(b.rank - 1);
  require((long)cells.size() == b.worder, ErrorKind::PaperContradiction,
          "link chamber count differs from the model apartment");
  std::map<Simplex, std::vector<int>> over_panel;
  for (int i = 0; i < (int)cells.size(); ++i)
    for (int x : cells[i]) {
      Simplex panel;
      for (int y : cells[i])
        if (y != x) panel.push_back(y);
      over_panel[panel].push_back(i);
    }
  for (const auto& [p, cs] : over_panel)
    require(cs.size() == 2, ErrorKind::PaperContradiction, "link panel is not thin");

  // base link chamber: a closed chamber cone containing the pole
  int c0 = -1;
  for (int i = 0; i < (int)cells.size() && c0 < 0; ++i) {
    const auto& cell = cells[i];
    const int r = (int)cell.size();
    std::vector<Vec> rows(pole.dim(), Vec(r));
    for (int j = 0; j < pole.dim(); ++j)
      for (int x = 0; x < r; ++x) rows[j][x] = lk.direction.at(cell[x])[j];
    auto sol = solve_linear(rows, pole);
    if (sol.kind != LinearSolution::Unique) continue;
    bool inside = true;
    for (int x = 0; x < r; ++x)
      if (sol.x[x] < 0) {
        inside = false;
        break;
      }
    if (inside) c0 = i;
  }
  require(c0 >= 0, ErrorKind::PaperContradiction, "pole avoids every link chamber cone");

  // apartment partner per chamber and color
  std::map<int, std::vector<int>> partner;
  for (int a : b.apartment) {
    partner[a].assign(b.rank, -1);
    for (int tc = 0; tc < b.rank; ++tc)
      for (int d : b.panels[tc][b.panel_of[tc][a]])
        if (d != a && std::binary_search(b.apartment.begin(), b.apartment.end(), d))
          partner[a][tc] = d;
  }

  // gallery propagation of one color assignment; fails on any inconsistency
  auto try_match = [&](const std::vector<int>& m, std::map<int, int>& vmap) -> bool {
    vmap.clear();
    std::map<int, int> cmap;
    for (int tc = 0; tc < b.rank; ++tc) {
      auto [it, fresh] = vmap.emplace(b.cverts[b.base_chamber][tc], m[tc]);
      if (!fresh && it->second != m[tc]) return false;
    }
    cmap[b.base_chamber] = c0;
    std::deque<int> bfs = {b.base_chamber};
    while (!bfs.empty()) {
      int a = bfs.front();
      bfs.pop_front();
      for (int tc = 0; tc < b.rank; ++tc) {
        int a2 = partner.at(a)[tc];
        int x = vmap.at(b.cverts[a][tc]);
        Simplex panel;
        for (int y : cells[cmap.at(a)])
          if (y != x) panel.push_back(y);
        auto po = over_panel.find(panel);
        if (po == over_panel.end()) return false;
        int cell2 = po->second[0] == cmap.at(a) ? po->second[1] : po->second[0];
        int y2 = -1;
        for (int y : cells[cell2])
          if (!std::binary_search(panel.begin(), panel.end(), y)) y2 = y;
        if (y2 < 0) return false;
        auto [vit, vfresh] = vmap.emplace(b.cverts[a2][tc], y2);
        if (!vfresh && vit->second != y2) return false;
        auto [cit, cfresh] = cmap.emplace(a2, cell2);
        if (!cfresh && cit->second != cell2) return false;
        if (cfresh) bfs.push_back(a2);
      }
    }
    if (cmap.size() != b.apartment.size()) return false;
    std::set<int> image;
    for (const auto& [v, pv] : vmap) image.insert(pv);
    return image.size() == vmap.size() && vmap.size() == lk.verts.size();
  };

  // enumerate factor bijections and per-factor color orders until one
  // propagates consistently
  const int K = (int)b.groups.size();
  std::vector<std::vector<int>> colors_of(K);
  for (int tc = 0; tc < b.rank; ++tc) colors_of[b.color_factor[tc]].push_back(tc);
  std::vector<std::vector<int>> c0verts_of(lk.factor_type.size());
  for (int x : cells[c0]) c0verts_of[lk.factor_of.at(x)].push_back(x);

  std::map<int, int> vmap;
  std::vector<int> m(b.rank, -1), pi(K, -1);
  std::vector<bool> used(lk.factor_type.size(), false);
  bool found = false;
  std::function<void(int)> place = [&](int k) {
    if (found) return;
    if (k == K) {
      found = try_match(m, vmap);
      return;
    }
    for (int f = 0; f < (int)lk.factor_type.size() && !found; ++f) {
      if (used[f] || lk.factor_type[f] != btypes[k]) continue;
      if (c0verts_of[f].size() != colors_of[k].size()) continue;
      used[f] = true;
      pi[k] = f;
      std::vector<int> perm = c0verts_of[f];
      std::sort(perm.begin(), perm.end());
      do {
        for (size_t j = 0; j < perm.size(); ++j) m[colors_of[k][j]] = perm[j];
        place(k + 1);
      } while (!found && std::next_permutation(perm.begin(), perm.end()));
      used[f] = false;
    }
  };
  place(0);
  require(found, ErrorKind::Precondition,
          "no color-matched identification of the base apartment with the link");

  RealizedBuilding rb;
  rb.b = &b;
  rb.retract_vertex = retract_vertices(b);
  rb.direction.assign(b.nverts, Vec());
  rb.height = std::vector<Q>(b.nverts, Q(0));
  rb.patch_vertex = std::vector<int>(b.nverts, -1);
  for (int v = 0; v < b.nverts; ++v) {
    int pv = vmap.at(rb.retract_vertex[v]);
    (*rb.patch_vertex)[v] = pv;
    rb.direction[v] = lk.direction.at(pv);
    (*rb.height)[v] = t.h2[pv];
  }
  return rb;
}

PoleData angle_classify(const RealizedBuilding& rb, const Vec& pole) {
  require(!pole.is_zero(), ErrorKind::Precondition, "pole must be nonzero");
  PoleData pd;
  pd.pole = pole;
  pd.cls.reserve(rb.direction.size());
  for (const auto& d : rb.direction) {
    Q s = dot(pole, d);
    pd.cls.push_back(s > 0 ? AngleClass::Acute
                           : (s < 0 ? AngleClass::Obtuse : AngleClass::Equatorial));
  }
  return pd;
}

HemisphereComplexes hemisphere_complexes(const RealizedBuilding& rb, const PoleData& pd) {
  const SphericalBuildingCx& b = *rb.b;
  require((int)pd.cls.size() == b.nverts, ErrorKind::Precondition, "pole data size mismatch");
  HemisphereComplexes hc;
  std::set<int> nonacute, obtuse, equat;
  for (int v = 0; v < b.nverts; ++v) {
    if (pd.cls[v] != AngleClass::Acute) nonacute.insert(v);
    if (pd.cls[v] == AngleClass::Obtuse) obtuse.insert(v);
    if (pd.cls[v] == AngleClass::Equatorial) equat.insert(v);
  }
  hc.closed = b.complex.full_subcomplex(nonacute);
  hc.open = b.complex.full_subcomplex(obtuse);
  hc.equator = b.complex.full_subcomplex(equat);
  hc.factor_equatorial.assign(b.groups.size(), true);
  for (int v = 0; v < b.nverts; ++v)
    if (pd.cls[v] != AngleClass::Equatorial) hc.factor_equatorial[b.factor_of_vertex(v)] = false;
  std::set<int> hv, vv;
  for (int v = 0; v < b.nverts; ++v)
    (hc.factor_equatorial[b.factor_of_vertex(v)] ? hv : vv).insert(v);
  hc.hor = b.complex.full_subcomplex(hv);
  hc.ver = b.complex.full_subcomplex(vv);
  require(join(hc.hor, hc.ver) == b.complex, ErrorKind::PaperContradiction,
          "the building is not the join of its horizontal and vertical parts");
  return hc;
}

std::string SubcomplexSpec::justification() const {
  switch (kind) {
    case EmptyBadSet:
      return "empty bad set; the whole building survives";
    case ClosedHemisphere:
      return "the open half-ball of angular radius pi/2 about the pole meets every "
             "apartment through the base chamber in a proper open convex set";
    case OpenHemisphere:
      return "vertices inside the closed half-ball of angular radius pi/2 are removed; "
             "the survivors are the strictly obtuse ones";
    case Equator:
      return "the equator is the intersection of the two closed half-balls about the pole";
    case HeightAtMost:
      return "vertices above the threshold lie in the convex hull of the up set, which a "
             "hyperplane separates from the carrier in each apartment";
  }
  return "";
}

Complex complement_complex(const RealizedBuilding& rb, const SubcomplexSpec& spec) {
  const SphericalBuildingCx& b = *rb.b;
  switch (spec.kind) {
    case SubcomplexSpec::EmptyBadSet:
      return b.complex;
    case SubcomplexSpec::ClosedHemisphere:
    case SubcomplexSpec::OpenHemisphere:
    case SubcomplexSpec::Equator: {
      PoleData pd = angle_classify(rb, spec.pole);
      std::set<int> keep;
      for (int v = 0; v < b.nverts; ++v) {
        bool ok = spec.kind == SubcomplexSpec::ClosedHemisphere
                      ? pd.cls[v] != AngleClass::Acute
                      : (spec.kind == SubcomplexSpec::OpenHemisphere
                             ? pd.cls[v] == AngleClass::Obtuse
                             : pd.cls[v] == AngleClass::Equatorial);
        if (ok) keep.insert(v);
      }
      return b.complex.full_subcomplex(keep);
    }
    case SubcomplexSpec::HeightAtMost: {
      require(rb.height.has_value(), ErrorKind::Precondition,
              "height bound needs a link realization with propagated heights");
      std::set<int> keep;
      for (int v = 0; v < b.nverts; ++v)
        if ((*rb.height)[v] <= spec.threshold) keep.insert(v);
      return b.complex.full_subcomplex(keep);
    }
  }
  fail(ErrorKind::Config, "unsupported subcomplex kind");
}

BuildingSpec thick_spec_for_link(const LinkComplex& lk, int q) {
  BuildingSpec spec;
  for (const auto& tag : lk.factor_type) spec.factors.push_back({tag, q});
  return spec;
}

namespace {

Complex relabel(const Complex& c, const std::function<int(int)>& f) {
  Complex out;
  for (const auto& s : c.cells) {
    Simplex t;
    for (int v : s) t.push_back(f(v));
    std::sort(t.begin(), t.end());
    out.cells.insert(std::move(t));
  }
  return out;
}

}  // namespace

ThickDescendingLink thick_descending_link(HorizontalRegistry& r, const Simplex& sigma,
                                          const SphericalBuildingCx& model) {
  const HorizontalInfo& info = r.info(sigma);
  require(info.h2 > 0, ErrorKind::Precondition, "no descending link at zero height");
  Simplex mn = sigma_min(r, sigma);
  require(mn == sigma, ErrorKind::Precondition,
          "thick links assemble only where the simplex is its own minimum face");
  const SplitLink& sl = split_link(r, sigma);

  ThickDescendingLink out;
  out.sigma = sigma;
  out.h2 = info.h2;
  out.pole = info.gradient;

  RealizedBuilding rb = realize_on_link(model, r.table, sl.link, info.gradient);
  PoleData pd = angle_classify(rb, info.gradient);
  HemisphereComplexes hc = hemisphere_complexes(rb, pd);

  // the thick factor split must agree with the thin one under the chart
  std::vector<int> link_factor(model.groups.size(), -1);
  for (int v = 0; v < model.nverts; ++v) {
    int k = model.factor_of_vertex(v);
    int f = sl.link.factor_of.at((*rb.patch_vertex)[v]);
    if (link_factor[k] < 0) link_factor[k] = f;
    require(link_factor[k] == f, ErrorKind::PaperContradiction,
            "chart scatters a model factor across link factors");
  }
  for (size_t k = 0; k < model.groups.size(); ++k)
    require(hc.factor_equatorial[k] == sl.factor_horizontal[link_factor[k]],
            ErrorKind::PaperContradiction,
            "horizontal factors disagree between the thin and thick links");

  // transported heights obey the gradient criterion
  for (int v = 0; v < model.nverts; ++v)
    require(((*rb.height)[v] < info.h2) == (pd.cls[v] == AngleClass::Obtuse),
            ErrorKind::PaperContradiction, "transported heights break the gradient criterion");

  // horizontal part: equal-height vertices of the equatorial factors, with
  // the full subcomplex on them barycentrically subdivided
  std::set<int> hsel;
  for (int v = 0; v < model.nverts; ++v)
    if (hc.factor_equatorial[model.factor_of_vertex(v)] && (*rb.height)[v] <= info.h2) {
      require((*rb.height)[v] == info.h2, ErrorKind::PaperContradiction,
              "equatorial factor vertex below the carrier height");
      hsel.insert(v);
    }
  Complex hcx = model.complex.full_subcomplex(hsel);
  for (const auto& s : hcx.cells) {
    Simplex coface = sigma;
    for (int v : s) coface.push_back((*rb.patch_vertex)[v]);
    std::sort(coface.begin(), coface.end());
    require(r.registered(coface) && r.info(coface).h2 == info.h2, ErrorKind::PaperContradiction,
            "equal-height link simplex is not a horizontal coface");
    out.hor_elems.push_back(s);
  }

  out.face_elems = proper_faces(sigma);
  Complex face0 = chain_complex_of_subsets(out.face_elems);
  Complex hor0 = chain_complex_of_subsets(out.hor_elems);
  for (int v : hc.open.vertex_set()) out.ver_verts.push_back(v);

  const int F = (int)out.face_elems.size();
  const int H = (int)out.hor_elems.size();
  out.face_part = face0;
  out.hor_part = relabel(hor0, [&](int v) { return F + v; });
  std::map<int, int> vidx;
  for (int i = 0; i < (int)out.ver_verts.size(); ++i) vidx[out.ver_verts[i]] = F + H + i;
  out.ver_part = relabel(hc.open, [&](int v) { return vidx.at(v); });
  out.assembled = join(join(out.face_part, out.hor_part), out.ver_part);
  return out;
}

}  // namespace zm
