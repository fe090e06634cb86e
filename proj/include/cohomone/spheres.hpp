// Homogeneous spheres K/H and spherical subgroups, driven by the shipped
// tables of transitive sphere actions and simple spherical subgroups.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "data.hpp"
#include "embeddings.hpp"

namespace cohomone {

// SECTION table rows

struct SphereRow {
  int sphere_dim = 0;
  LieGroupRef K, H;
  std::vector<std::pair<std::string, int>> isotropy_rep;
  std::string row_id;  // e.g. "SU(n+1)/SU(n) at n=3"
};

struct SphericalRow {
  std::string G_family;  // "SU", "SO", "Sp", "G2" or "F4,E6,E7,E8"
  LieGroupRef H;         // SU(k) style rows use k = 0 as a placeholder
  std::string H_family;
  bool block = false;
  int min_n = 0;
  int k_min = 0, k_max = 0;
  std::string inclusion_label;
};

// Parametric rows are instantiated for n = n_min .. n_max.
inline std::vector<SphereRow> sphere_rows(int n_max = 12) {
  const json& t = cached_json("table2.json");
  std::vector<SphereRow> out;
  for (const json& r : t.at("rows")) {
    bool param = r.contains("n_min");
    int lo = param ? r.at("n_min").get<int>() : 0, hi = param ? n_max : 0;
    for (int n = lo; n <= hi; ++n) {
      SphereRow row;
      row.sphere_dim = eval_affine(r.at("dim").get<std::string>(), 'n', n);
      row.K = parse_group(expand_template(r.at("K").get<std::string>(), 'n', n));
      row.H = parse_group(expand_template(r.at("H").get<std::string>(), 'n', n));
      for (const json& iso : r.at("isotropy"))
        row.isotropy_rep.push_back({iso.at(0).get<std::string>(), eval_affine(iso.at(1).get<std::string>(), 'n', n)});
      row.row_id = r.at("K").get<std::string>() + "/" + r.at("H").get<std::string>();
      std::erase_if(row.row_id, [](char c) { return c == '{' || c == '}'; });
      if (param) row.row_id += " at n=" + std::to_string(n);
      out.push_back(std::move(row));
    }
  }
  return out;
}

inline std::vector<SphericalRow> spherical_rows() {
  const json& t = cached_json("table1.json");
  std::vector<SphericalRow> out;
  for (const json& r : t.at("rows")) {
    SphericalRow row;
    row.G_family = r.at("G").get<std::string>();
    std::string h = r.at("H").get<std::string>();
    row.block = r.value("block", false);
    row.min_n = r.value("min_n", 0);
    if (r.contains("k_range")) {
      row.k_min = r.at("k_range").at(0).get<int>();
      row.k_max = r.at("k_range").at(1).get<int>();
    }
    row.H_family = h.substr(0, h.find('('));
    if (!row.block && !r.contains("k_range")) row.H = parse_group(h);
    row.inclusion_label = r.at("inclusion").get<std::string>();
    out.push_back(std::move(row));
  }
  return out;
}

// The stored decomposition of a row.
inline std::vector<std::pair<std::string, int>> isotropy_rep_of_sphere(const SphereRow& row) {
  return row.isotropy_rep;
}

// Row whose (K, H) have the given Lie algebra types.
inline std::optional<SphereRow> find_sphere_row(const AlgebraType& K, const AlgebraType& H) {
  for (const SphereRow& r : sphere_rows())
    if (algebra_type(r.K) == K && algebra_type(r.H) == H) return r;
  return std::nullopt;
}

inline std::optional<SphereRow> find_sphere_row(const LieGroupRef& K, const LieGroupRef& H) {
  return find_sphere_row(algebra_type(K), algebra_type(H));
}

// SECTION recognition

namespace detail {

// Family of a simple group label as it names an inclusion: SO(n), O(n) and
// Spin(n) share the vector inclusion; S3 is Sp(1).
inline std::string inclusion_family(const LieGroupRef& g) {
  switch (g.family) {
    case Family::SO: case Family::O: case Family::Spin: return "SO";
    case Family::SU: return "SU";
    case Family::Sp: case Family::S3: return "Sp";
    case Family::G2: return "G2";
    default: return "";
  }
}

// A row found by algebra types only counts for two simple labels when the
// labels name the row's own inclusion (or its low-rank image SU(4) > Sp(2)
// = Spin(6) > Spin(5)).  SO(3) in SO(5), say, is not Sp(1) in Sp(2).
inline bool labels_match_row(const LieGroupRef& K, const LieGroupRef& H, const SphereRow& row) {
  const std::string fk = inclusion_family(K), fh = inclusion_family(H);
  if (fk.empty() || fh.empty()) return true;  // products, tori: algebra level only
  if (fk == inclusion_family(row.K) && fh == inclusion_family(row.H)) return true;
  return fk == "SU" && K.n == 4 && fh == "Sp" && H.n == 2 && inclusion_family(row.K) == "SO" && row.K.n == 6;
}

}  // namespace detail

struct SphereMatch {
  std::optional<int> l;   // none when K/H is not a sphere
  bool exact = false;     // decided on the concrete realization
  bool containment_unknown = false;
  std::string how;
};

namespace detail {

// Removes the simple ideals and the center shared by K and H.
inline std::pair<AlgebraType, AlgebraType> strip_common(AlgebraType k, AlgebraType h) {
  AlgebraType rk, rh;
  std::vector<std::string> hs = h.simple;
  for (const std::string& s : k.simple) {
    auto it = std::find(hs.begin(), hs.end(), s);
    if (it != hs.end()) hs.erase(it);
    else rk.simple.push_back(s);
  }
  rh.simple = hs;
  int common = std::min(k.abelian, h.abelian);
  rk.abelian = k.abelian - common;
  rh.abelian = h.abelian - common;
  return {rk, rh};
}

inline SphereMatch recognize_closed(const Closed& k, const Closed& h) {
  SphereMatch m;
  m.exact = true;
  // K = K0 . H, i.e. K/H connected
  auto connected_quotient = [&] {
    for (const QPair& f : k.finite) {
      bool hit = false;
      for (const QPair& g : h.finite)
        if (k.in_core(f * g.inv())) { hit = true; break; }
      if (!hit) return false;
    }
    return true;
  };
  // elements of H inside K0
  std::vector<QPair> meet;
  for (const QPair& g : h.finite)
    if (k.in_core(g) && !(h.core != Core::trivial && h.in_core(g))) meet.push_back(g);
  const int dk = k.dim(), dh = h.dim();
  if (dk == dh) {
    // S0: two components of K over H
    long nk = long(k.component_count()), nh = long(h.component_count());
    if (dk == 0) { nk = long(k.finite.size()); nh = long(h.finite.size()); }
    if (nk == 2 * nh) { m.l = 0; m.how = "two components over H"; }
    else m.how = "index " + std::to_string(nk) + "/" + std::to_string(nh) + " is not 2";
    return m;
  }
  if (!connected_quotient()) {
    m.how = "K/H is disconnected";
    return m;
  }
  if (k.core == Core::circle && h.core == Core::trivial) {
    m.l = 1;
    m.how = "circle over a finite group";
    return m;
  }
  if ((k.core == Core::diagonal || k.core == Core::left || k.core == Core::right) && h.core == Core::trivial) {
    if (meet.size() == 1) { m.l = 3; m.how = "S3 acting freely"; }
    else m.how = "K0 meets H in " + std::to_string(meet.size()) + " elements, quotient is a space form";
    return m;
  }
  if ((k.core == Core::diagonal || k.core == Core::left || k.core == Core::right) && h.core == Core::circle) {
    // S3/S1 = S2 needs H cap K0 = H0
    bool extra = false;
    for (const QPair& g : h.finite)
      if (k.in_core(g) && !h.in_core(g)) extra = true;
    if (!extra) { m.l = 2; m.how = "S3 over a circle"; }
    else m.how = "quotient of S2 by a reflection";
    return m;
  }
  if (k.core == Core::whole && (h.core == Core::diagonal || h.core == Core::left || h.core == Core::right)) {
    bool extra = false;
    for (const QPair& g : h.finite)
      if (!h.in_core(g)) extra = true;
    if (!extra) { m.l = 3; m.how = "S3xS3 over a three-dimensional subgroup"; }
    else m.how = "quotient of S3 by a finite group";
    return m;
  }
  m.how = "no transitive sphere action of this shape";
  return m;
}

}  // namespace detail

// l with K/H = S^l, or none.
inline SphereMatch recognize_sphere(const Embedding& K, const Embedding& H) {
  Tri c = contains(K, H);
  if (c == Tri::no) return {std::nullopt, true, false, "H is not contained in K"};
  if (K.quaternion()) return detail::recognize_closed(realize(K), realize(H));
  SphereMatch m;
  m.containment_unknown = c == Tri::unknown;
  const int l = K.dim() - H.dim();
  auto [rk, rh] = detail::strip_common(algebra_type(K.group), algebra_type(H.group));
  if (l == 0) {
    int nk = K.component_count(), nh = H.component_count();
    if (nk == 2 * nh) { m.l = 0; m.how = "two components over H"; }
    else m.how = "component counts " + std::to_string(nk) + ", " + std::to_string(nh);
    return m;
  }
  if (rk.simple.empty() && rh.simple.empty() && rk.abelian == 1 && rh.abelian == 0) {
    m.l = 1;
    m.how = "circle over H at the Lie algebra level";
    return m;
  }
  if (auto row = find_sphere_row(rk, rh)) {
    const bool h_discrete = H.dim() == 0;
    if (!rh.simple.empty() && !detail::labels_match_row(K.group, H.group, *row)) {
      m.how = H.group.name() + " in " + K.group.name() + " is not the inclusion of row " + row->row_id;
    } else if (h_discrete && K.group.family == Family::SO) {
      // K/H = S^3 with H discrete needs K simply connected; SO(3) gives RP^3
      m.how = K.group.name() + " over a discrete group is not simply connected";
    } else if (row->sphere_dim == l) {
      m.l = l;
      m.how = "matches " + row->row_id + " after removing common ideals";
    } else {
      m.how = "table row " + row->row_id + " has the wrong dimension";
    }
    return m;
  }
  m.how = "no table row for " + rk.str() + " over " + rh.str();
  return m;
}

// SECTION spherical subgroups

inline bool is_spherical_subgroup(const LieGroupRef& G, const LieGroupRef& H) {
  AlgebraType th = algebra_type(H);
  if (th.simple.empty()) return true;  // tori
  auto family_of = [](const LieGroupRef& g) -> std::pair<std::string, int> {
    switch (g.family) {
      case Family::SU: return {"SU", g.n};
      case Family::SO: case Family::O: case Family::Spin: return {"SO", g.n};
      case Family::Sp: return {"Sp", g.n};
      case Family::G2: return {"G2", 0};
      case Family::F4: return {"F4", 0};
      case Family::E6: return {"E6", 0};
      case Family::E7: return {"E7", 0};
      case Family::E8: return {"E8", 0};
      default: return {"", 0};
    }
  };
  auto [gf, n] = family_of(G);
  if (gf.empty() || th.simple.size() != 1 || th.abelian) return false;
  for (const SphericalRow& r : spherical_rows()) {
    if (r.G_family.find(gf) == std::string::npos) continue;
    if (r.block) {
      for (int k = 1; k <= n; ++k)
        if (algebra_type(parse_group(r.H_family + "(" + std::to_string(k) + ")")) == th) return true;
      continue;
    }
    if (r.k_max) {
      for (int k = r.k_min; k <= r.k_max; ++k)
        if (algebra_type(parse_group(r.H_family + "(" + std::to_string(k) + ")")) == th) return true;
      continue;
    }
    if (n < r.min_n) continue;
    if (algebra_type(r.H) == th) return true;
  }
  return false;
}

}  // namespace cohomone
