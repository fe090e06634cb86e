// Group diagrams H c {K-, K+} c G, their derived invariants, a normal form
// for diagrams in S3xS3 and the diagram file format.
#pragma once

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "data.hpp"
#include "embeddings.hpp"
#include "spheres.hpp"

namespace cohomone {

// SECTION verdicts

enum class Status { pass, fail, inconclusive, not_applicable };

inline const char* status_str(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
    case Status::not_applicable: return "not_applicable";
  }
  return "?";
}

inline Status parse_status(const std::string& s) {
  for (Status t : {Status::pass, Status::fail, Status::inconclusive, Status::not_applicable})
    if (s == status_str(t)) return t;
  fail("unknown verdict status '" + s + "'");
}

// One obstruction outcome.  Fail verdicts always carry numeric evidence.
struct Verdict {
  std::string check;
  Status status = Status::inconclusive;
  json evidence = json::object();
  std::string anchor;
  std::string note;

  bool operator==(const Verdict&) const = default;
};

using DiagramVerdict = Verdict;

inline void to_json(json& j, const Verdict& v) {
  j = json{{"check", v.check}, {"status", status_str(v.status)}, {"evidence", v.evidence}, {"anchor", v.anchor}};
  if (!v.note.empty()) j["note"] = v.note;
}

inline void from_json(const json& j, Verdict& v) {
  v.check = j.at("check").get<std::string>();
  v.status = parse_status(j.at("status").get<std::string>());
  v.evidence = j.value("evidence", json::object());
  v.anchor = j.value("anchor", std::string());
  v.note = j.value("note", std::string());
}

// Central registry of the statements each check mechanizes, so reports and
// documentation quote the same text.
inline const std::map<std::string, std::string>& anchor_registry() {
  static const std::map<std::string, std::string> reg = {
      {"diagram", "a group diagram with K+-/H = S^l+- defines a cohomogeneity one G-manifold"},
      {"connectedness", "Connectedness Lemma: the inclusion B+- -> M is l-+-connected"},
      {"simply_connected", "simply connected M with G connected: there are no exceptional orbits"},
      {"rank_lemma", "Rank Lemma: one of K+- has corank 0 if M is even dimensional and at most corank 1 if M is odd"},
      {"linear_primitivity", "Primitivity Lemma (a): g = sum over w in W of w k- w + w k+ w"},
      {"group_primitivity", "Primitivity Lemma (c): K- and n K+ n^-1 generate G as a group"},
      {"lower_weyl", "Primitivity Lemma (b): |W| >= 2 dim(G/H)/(l- + l+)"},
      {"upper_weyl", "Upper Weyl Group Bound: if H/H0 is trivial or cyclic then |W| <= 8"},
      {"core_weyl", "Core-Weyl Lemma: G0 is one of S1, S3, T2, S1xS3, U(2), S3xS3, SO(3)xS3 or SO(4)"},
      {"isotropy", "Isotropy Lemma (a): every irreducible summand of H on m is a subrepresentation of one of K+-/H"},
      {"totally_geodesic", "Totally Geodesic Lemma: if B- is totally geodesic then dim G/H <= 2 l- + l+"},
      {"partial_frankel", "Partial Frankel Lemma: no parallel vector field along c when II- and II+ vanish on complementary dimensions"},
      {"block_lemma", "Block Lemma: d - k <= r + 1"},
      {"codim2_shape", "Codimension Two Lemma: H = 1 and K+- = SO(2), or one of the two Z2 shapes"},
      {"ineffective_kernels", "Ineffective Kernel Lemma: the ineffective kernels H- and H+ of K+-/H intersect trivially"},
      {"min_slope", "slope normalization: 1 = min{|q+|, |q-|} = min{|p+|, |p-|}"},
      {"external_exclusion", "excluded by non trivial parallel Jacobi fields along a horizontal geodesic"},
      {"weyl", "W is the dihedral subgroup of N(H)/H generated by the involutions w+-"},
  };
  return reg;
}

inline std::string anchor(const std::string& key) {
  auto it = anchor_registry().find(key);
  if (it == anchor_registry().end()) fail("no anchor for '" + key + "'");
  return it->second;
}

// SECTION GroupDiagram

struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GroupDiagram {
  std::string name;
  LieGroupRef G;
  Embedding H, K_minus, K_plus;
  int l_minus = 0, l_plus = 0, dim_M = 0;
  int corank_H = 0, corank_minus = 0, corank_plus = 0;
  bool exact = false;                 // realized in S3xS3
  bool containment_unknown = false;   // data-only inclusions
  std::optional<int> table_weyl;      // |W| supplied with the diagram
  std::string how_minus, how_plus;    // sphere recognition notes
  Closed cH, cKm, cKp;                // valid when exact
  // totally geodesic certificates stated with data-only diagrams
  std::optional<std::string> declared_tg_minus, declared_tg_plus;

  int dim_G() const { return G.dim(); }
  int dim_GH() const { return G.dim() - H.dim(); }
  const Embedding& K(int side) const { return side < 0 ? K_minus : K_plus; }
  const Closed& cK(int side) const { return side < 0 ? cKm : cKp; }
  int l(int side) const { return side < 0 ? l_minus : l_plus; }
  int corank(int side) const { return side < 0 ? corank_minus : corank_plus; }
  const std::optional<std::string>& declared_tg(int side) const {
    return side < 0 ? declared_tg_minus : declared_tg_plus;
  }
};

// Sphere dimensions may be declared for data-only inputs where the tables
// of transitive actions cannot decide them.
struct DiagramOptions {
  std::optional<int> l_minus, l_plus;
  std::optional<int> weyl_order;
};

namespace detail {

inline bool closed_exact(const Closed& c) {
  if (!c.x1.exact() || !c.x2.exact() || !c.twist.exact()) return false;
  for (const QPair& g : c.finite)
    if (!g.exact()) return false;
  return true;
}

// Enumeration revisits the same subgroups and the same pairs K > H many
// times.  Exact realizations print faithfully, so text is a safe key.
template <typename V>
struct Memo {
  std::mutex mu;
  std::map<std::string, V> map;
  std::optional<V> get(const std::string& k) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = map.find(k);
    if (it == map.end()) return std::nullopt;
    return it->second;
  }
  void put(const std::string& k, const V& v) {
    std::lock_guard<std::mutex> lock(mu);
    map.emplace(k, v);
  }
};

inline Closed realize_cached(const Embedding& e) {
  static Memo<Closed> memo;
  const std::string key = e.str();
  if (auto c = memo.get(key)) return *c;
  Closed c = realize(e);
  c.component_count();
  if (closed_exact(c)) memo.put(key, c);
  return c;
}

struct SideResult {
  bool contained = false;
  SphereMatch match;
};

inline SideResult side_cached(const Embedding& K, const Closed& ck, const Embedding& H, const Closed& ch) {
  static Memo<SideResult> memo;
  const bool exact = closed_exact(ck) && closed_exact(ch);
  const std::string key = K.str() + " > " + H.str();
  if (exact)
    if (auto r = memo.get(key)) return *r;
  SideResult r;
  r.contained = K.kind == EmbKind::whole || contains(ck, ch);
  if (r.contained) r.match = recognize_closed(ck, ch);
  if (exact) memo.put(key, r);
  return r;
}

}  // namespace detail

inline GroupDiagram build_diagram(const LieGroupRef& G, const Embedding& H, const Embedding& Km, const Embedding& Kp,
                                  const std::string& name = "", const DiagramOptions& opt = {}) {
  for (const Embedding* e : {&H, &Km, &Kp})
    if (e->ambient.name() != G.name())
      throw DiagramError("embedding " + e->str() + " lives in " + e->ambient.name() + ", not in " + G.name());
  GroupDiagram d;
  d.name = name;
  d.G = G;
  d.H = H;
  d.K_minus = Km;
  d.K_plus = Kp;
  d.exact = H.quaternion();
  d.table_weyl = opt.weyl_order;
  if (d.exact) {
    d.cH = detail::realize_cached(H);
    d.cKm = detail::realize_cached(Km);
    d.cKp = detail::realize_cached(Kp);
  }
  auto side = [&](const Embedding& K, const std::optional<int>& declared, const char* tag, int& l, std::string& how) {
    SphereMatch m;
    if (d.exact) {
      auto r = detail::side_cached(K, d.cK(tag[0] == '-' ? -1 : 1), H, d.cH);
      if (!r.contained) throw DiagramError(std::string("H not contained in K") + tag);
      m = r.match;
    } else {
      Tri c = contains(K, H);
      if (c == Tri::no) throw DiagramError(std::string("H not contained in K") + tag);
      if (c == Tri::unknown) d.containment_unknown = true;
      m = recognize_sphere(K, H);
    }
    if (m.l) {
      if (declared && *declared != *m.l)
        throw DiagramError(std::string("not a diagram: K") + tag + "/H is S^" + std::to_string(*m.l) +
                           ", declared S^" + std::to_string(*declared));
      l = *m.l;
      how = m.how;
      return;
    }
    if (declared && !m.exact && K.dim() - H.dim() == *declared) {
      l = *declared;
      how = "declared; " + m.how;
      return;
    }
    throw DiagramError(std::string("not a diagram: K/H not a sphere (K") + tag + ": " + m.how + ")");
  };
  side(Km, opt.l_minus, "-", d.l_minus, d.how_minus);
  side(Kp, opt.l_plus, "+", d.l_plus, d.how_plus);
  if (d.l_minus == 0 && d.l_plus == 0) throw DiagramError("not a diagram: both l+- = 0");
  d.dim_M = G.dim() - H.dim() + 1;
  d.corank_H = G.rank() - H.rank();
  d.corank_minus = G.rank() - Km.rank();
  d.corank_plus = G.rank() - Kp.rank();
  return d;
}

inline GroupDiagram build_diagram(const std::string& G, const std::string& H, const std::string& Km,
                                  const std::string& Kp, const std::string& name = "", const DiagramOptions& opt = {}) {
  LieGroupRef g = parse_group(G);
  return build_diagram(g, parse_embedding(H, g), parse_embedding(Km, g), parse_embedding(Kp, g), name, opt);
}

inline json diagram_json(const GroupDiagram& d) {
  json j{{"G", d.G.name()}, {"H", d.H.str()}, {"Kminus", d.K_minus.str()}, {"Kplus", d.K_plus.str()},
         {"l", {d.l_minus, d.l_plus}}, {"dim_M", d.dim_M},
         {"coranks", {d.corank_H, d.corank_minus, d.corank_plus}}, {"exact", d.exact}};
  if (!d.name.empty()) j["name"] = d.name;
  if (d.table_weyl) j["W"] = *d.table_weyl;
  return j;
}

// SECTION connectivity

struct Connectivity {
  int B_minus = 0;    // inclusion B- -> M is l+-connected
  int B_plus = 0;     // inclusion B+ -> M is l--connected
  int principal = 0;  // G/H -> M is min(l-, l+)-connected
};

inline Connectivity connectivity_degrees(const GroupDiagram& d) {
  return {d.l_plus, d.l_minus, std::min(d.l_minus, d.l_plus)};
}

// SECTION simple connectivity

namespace detail {

// Components of an embedding: realized count in S3xS3, else the label's.
inline int components(const GroupDiagram& d, const Embedding& e, const Closed& c) {
  return d.exact ? c.component_count() : e.component_count();
}

// H/H0 cyclic, or unknown for labels with several finite factors.
inline Tri finite_part_cyclic(const GroupDiagram& d) {
  if (d.exact) {
    const Closed& h = d.cH;
    std::vector<QPair> reps;  // coset representatives of H0
    for (const QPair& f : h.finite) {
      bool seen = false;
      for (const QPair& r : reps)
        if (h.in_core(r.inv() * f)) { seen = true; break; }
      if (!seen) reps.push_back(f);
    }
    const int n = int(reps.size());
    for (const QPair& r : reps) {
      QPair x = r;
      int order = 1;
      while (!h.in_core(x) && order <= n) {
        x = x * r;
        ++order;
      }
      if (order == n) return Tri::yes;
    }
    return Tri::no;
  }
  int c = d.H.component_count();
  if (c <= 1) return Tri::yes;
  // one finite cyclic factor Zk, or a single O(n)-type component group
  std::vector<LieGroupRef> fs = d.H.group.family == Family::Product ? d.H.group.factors : std::vector<LieGroupRef>{d.H.group};
  int disconnected = 0;
  bool cyclic_labels = true;
  for (const LieGroupRef& f : fs) {
    if (f.component_count() <= 1) continue;
    ++disconnected;
    if (f.family == Family::Finite)
      cyclic_labels = cyclic_labels && f.finite_label.size() > 1 && f.finite_label[0] == 'Z' &&
                      f.finite_label.find('+') == std::string::npos;
  }
  if (disconnected == 1 && cyclic_labels) return Tri::yes;
  return Tri::unknown;
}

}  // namespace detail

// The clauses for simply connected M and connected G.  Case (d) is the
// fundamental group of M for simply connected G: H/H0 must be generated by
// the components of H meeting K-0 and K+0.
inline std::vector<Verdict> simply_connected_constraints(const GroupDiagram& d) {
  std::vector<Verdict> out;
  const std::string a = anchor("simply_connected");
  {
    Verdict v{"simply_connected(a)", Status::pass, {{"l", {d.l_minus, d.l_plus}}}, a, ""};
    if (d.l_minus == 0 || d.l_plus == 0) {
      v.status = Status::fail;
      v.note = "exceptional orbit";
    }
    out.push_back(v);
  }
  const int cH = detail::components(d, d.H, d.cH), cm = detail::components(d, d.K_minus, d.cKm),
            cp = detail::components(d, d.K_plus, d.cKp);
  json comps{{"H", cH}, {"Kminus", cm}, {"Kplus", cp}};
  if (d.l_minus >= 2 && d.l_plus >= 2) {
    Verdict v{"simply_connected(b)", Status::pass, comps, a, "both l >= 2: all isotropy groups connected"};
    if (cH != 1 || cm != 1 || cp != 1) v.status = Status::fail;
    out.push_back(v);
  }
  for (int s : {-1, 1}) {
    if (!(d.l(s) == 1 && d.l(-s) >= 2)) continue;
    Verdict v{"simply_connected(c)", Status::pass, comps, a,
              std::string("l") + (s < 0 ? "-" : "+") + " = 1: K" + (s < 0 ? "-" : "+") +
                  " connected and H/H0 = K" + (s < 0 ? "+" : "-") + "/K0 cyclic"};
    int other = s < 0 ? cp : cm, self = s < 0 ? cm : cp;
    Tri cyc = detail::finite_part_cyclic(d);
    v.evidence["H_mod_H0_cyclic"] = tri_str(cyc);
    if (self != 1 || other != cH || cyc == Tri::no) v.status = Status::fail;
    else if (cyc == Tri::unknown || d.containment_unknown) v.status = Status::inconclusive;
    out.push_back(v);
  }
  if (d.exact) {
    // generated by H cap K-0, H cap K+0 and H0
    std::vector<QPair> gens;
    for (const QPair& f : d.cH.finite)
      if (d.cKm.in_core(f) || d.cKp.in_core(f)) gens.push_back(f);
    std::vector<QPair> sub = closure(gens);
    int missing = 0;
    // a subgroup of the same order is everything
    if (sub.size() != d.cH.finite.size())
      for (const QPair& f : d.cH.finite) {
        bool hit = false;
        for (const QPair& g : sub)
          if (d.cH.in_core(g.inv() * f)) { hit = true; break; }
        missing += !hit;
      }
    Verdict v{"simply_connected(d)", missing ? Status::fail : Status::pass,
              {{"H_finite", int(d.cH.finite.size())}, {"generated", int(sub.size())}, {"missing", missing}}, a,
              "pi1(M) = H/<H cap K-0, H cap K+0, H0> for simply connected G"};
    if (missing) v.note += "; a component of H generates another component of K";
    out.push_back(v);
  }
  return out;
}

inline Verdict simply_connected_verdict(const GroupDiagram& d) {
  Verdict v{"simply_connected", Status::pass, json::object(), anchor("simply_connected"), ""};
  for (const Verdict& c : simply_connected_constraints(d)) {
    v.evidence[c.check.substr(c.check.find('('))] = json{{"status", status_str(c.status)}, {"evidence", c.evidence}};
    if (c.status == Status::fail && v.status != Status::fail) {
      v.status = Status::fail;
      v.note = c.check + ": " + c.note;
    } else if (c.status == Status::inconclusive && v.status == Status::pass) {
      v.status = Status::inconclusive;
    }
  }
  return v;
}

// SECTION normal form in S3xS3

namespace detail {

// Binary octahedral group with integer multiplication tables.  Conjugation
// by its elements permutes the signed coordinate axes.
struct Octa {
  std::vector<Quaternion> els;
  std::vector<std::array<int, 48>> mul;
  std::vector<int> inv, neg;
  std::vector<int> reps;                     // one of each pair +-g
  std::vector<std::array<int, 4>> axis_img;  // signed image of axis 1..3

  Octa() {
    els = binary_octahedral();
    const int n = int(els.size());
    mul.resize(n);
    inv.resize(n);
    neg.resize(n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) mul[a][b] = index(els[a] * els[b]);
      inv[a] = index(els[a].conj());
      neg[a] = index(-els[a]);
    }
    for (int a = 0; a < n; ++a) {
      const Quaternion& q = els[a];
      int first = 0;
      while (q[first].is_zero()) ++first;
      if (q[first].value() > 0) reps.push_back(a);
    }
    axis_img.resize(n);
    for (int a = 0; a < n; ++a)
      for (int ax = 1; ax <= 3; ++ax) axis_img[a][ax] = signed_axis(els[a] * Quaternion::unit(Axis(ax)) * els[a].conj());
  }
  int index(const Quaternion& q) const {
    for (size_t i = 0; i < els.size(); ++i)
      if (els[i] == q) return int(i);
    return -1;
  }
  static int signed_axis(const Quaternion& x) {
    for (int ax = 1; ax <= 3; ++ax) {
      if (x == Quaternion::unit(Axis(ax))) return ax;
      if (x == -Quaternion::unit(Axis(ax))) return -ax;
    }
    return 0;
  }
  int conj(int g, int e) const { return mul[mul[g][e]][inv[g]]; }
};

inline const Octa& octa() {
  static const Octa o;
  return o;
}

// Integer image of a connected piece K0.
struct Piece {
  Core core = Core::trivial;
  int a1 = 0, a2 = 0;  // positive axes after normalization
  int p = 0, q = 0;
  int tw = 0;          // twist index, normalized modulo sign

  void normalize() {
    if (core == Core::circle) {
      if (a1 < 0) { a1 = -a1; p = -p; }
      if (a2 < 0) { a2 = -a2; q = -q; }
      if (p < 0 || (p == 0 && q < 0)) { p = -p; q = -q; }
      if (p == 0) a1 = a2;
      if (q == 0) a2 = a1;
    }
    if (core == Core::diagonal) tw = std::min(tw, octa().neg[tw]);
  }
  Piece conj(int ga, int gb) const {
    const Octa& o = octa();
    Piece r = *this;
    if (core == Core::circle) {
      r.a1 = (a1 > 0 ? 1 : -1) * o.axis_img[ga][std::abs(a1)];
      r.a2 = (a2 > 0 ? 1 : -1) * o.axis_img[gb][std::abs(a2)];
    }
    if (core == Core::diagonal) r.tw = o.mul[o.mul[ga][tw]][o.inv[gb]];
    r.normalize();
    return r;
  }
  Piece swapped() const {
    Piece r = *this;
    if (core == Core::circle) {
      std::swap(r.a1, r.a2);
      std::swap(r.p, r.q);
    }
    if (core == Core::diagonal) r.tw = octa().inv[tw];
    if (core == Core::left) r.core = Core::right;
    if (core == Core::right) r.core = Core::left;
    r.normalize();
    return r;
  }
  void key(std::vector<int>& k, bool minus_side) const {
    if (core == Core::circle) {
      if (minus_side) k.insert(k.end(), {std::abs(p) != std::abs(q), -p, q < 0, a1, a2});
      else k.insert(k.end(), {p, std::abs(q), q < 0, a1, a2});
    }
    if (core == Core::diagonal) k.push_back(tw);
  }
};

inline std::optional<Piece> to_piece(const Closed& k) {
  const Octa& o = octa();
  Piece pc;
  pc.core = k.core;
  if (k.core == Core::circle) {
    pc.a1 = Octa::signed_axis(k.x1);
    pc.a2 = Octa::signed_axis(k.x2);
    if (!pc.a1 || !pc.a2) return std::nullopt;
    pc.p = k.p;
    pc.q = k.q;
  }
  if (k.core == Core::diagonal) {
    pc.tw = o.index(k.twist);
    if (pc.tw < 0) return std::nullopt;
  }
  pc.normalize();
  return pc;
}

inline std::optional<std::vector<int>> to_indices(const std::vector<QPair>& els) {
  const Octa& o = octa();
  std::vector<int> out;
  for (const QPair& g : els) {
    int a = o.index(g.a), b = o.index(g.b);
    if (a < 0 || b < 0) return std::nullopt;
    out.push_back(a * 48 + b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// K = K0 . H
inline bool generated_by_core_and(const Closed& k, const Closed& h) {
  for (const QPair& f : k.finite) {
    bool hit = false;
    for (const QPair& g : h.finite)
      if (k.in_core(f * g.inv())) { hit = true; break; }
    if (!hit) return false;
  }
  return true;
}

inline Embedding piece_embedding(const Piece& pc) {
  const Octa& o = octa();
  switch (pc.core) {
    case Core::trivial: return trivial(s3s3());
    case Core::whole: return whole(s3s3());
    case Core::left: return factor_s3(0);
    case Core::right: return factor_s3(1);
    case Core::diagonal: {
      Embedding e = diagonal_s3();
      e.twist = o.els[pc.tw];
      return e;
    }
    case Core::circle: {
      Embedding e = slope_circle(Axis(pc.a1), pc.p, pc.q);
      e.x2 = Quaternion::unit(Axis(pc.a2));
      return e;
    }
  }
  return trivial(s3s3());
}

inline std::string pair_text(const QPair& g) { return "(" + quat_text(g.a) + "," + quat_text(g.b) + ")"; }

// Finite subgroup from sorted indices, relabeled by its standard name when
// it is one of the named groups.
inline Embedding finite_embedding(const std::vector<int>& idx) {
  const Octa& o = octa();
  std::vector<QPair> els;
  for (int e : idx) els.push_back({o.els[e / 48], o.els[e % 48]});
  if (els.size() == 1) return trivial(s3s3());
  auto same_set = [&](const std::vector<QPair>& other) {
    if (other.size() != els.size()) return false;
    for (const QPair& g : other)
      if (!contains_element(els, g)) return false;
    return true;
  };
  std::vector<std::string> names = {"Q8", "Z4+Z2", "Q8+Z2"};
  for (int k = 2; k <= 8; ++k) names.push_back("Z(" + std::to_string(k) + ")");
  for (const std::string& n : names) {
    std::string label;
    auto cand = named_finite(n, label);
    if (same_set(cand)) return parse_embedding(n, s3s3());
  }
  // greedy generating set in index order
  std::vector<QPair> gens;
  std::vector<QPair> span{QPair()};
  for (const QPair& g : els) {
    if (contains_element(span, g)) continue;
    gens.push_back(g);
    span = closure(gens);
    if (span.size() == els.size()) break;
  }
  std::string label = "gen(";
  for (size_t n = 0; n < gens.size(); ++n) label += (n ? "," : "") + pair_text(gens[n]);
  label += ")";
  Embedding e = finite_group({}, label);
  e.elements = els;
  e.group = LieGroupRef::finite(label, int(els.size()));
  return e;
}

inline Embedding with_finite(const Piece& pc, const Closed& core_only, const Embedding& h, const std::vector<int>& idx) {
  Embedding base = piece_embedding(pc);
  const Octa& o = octa();
  bool inside = true;
  for (int e : idx) inside = inside && core_only.in_core({o.els[e / 48], o.els[e % 48]});
  if (inside || h.kind == EmbKind::trivial) return base;
  return extension(base, h);
}

}  // namespace detail

struct Canonical {
  GroupDiagram diagram;
  bool normalized = false;  // false: outside the normal-form family, unchanged
  std::string reason;
};

// Normal form of an S3xS3 diagram with finite H inside O* x O* and cores on
// coordinate axes.  The orbit under conjugation by O* x O*, exchange of the
// factors and exchange of K+- is searched for the least key:
// larger (l-, l+) first, then core types, then for non-central H the sorted
// element indices of H, then the slope pieces (K-: |p| = |q| first, larger p;
// K+: smaller p, q), and for central H its indices last.  A central H lets
// K- and K+ be conjugated independently, since N(H)0 = G.
inline Canonical canonicalize(const GroupDiagram& d) {
  using namespace detail;
  Canonical out{d, false, ""};
  if (!d.exact) {
    out.reason = "not in S3xS3";
    return out;
  }
  if (d.cH.core != Core::trivial) {
    out.reason = "H has positive dimension";
    return out;
  }
  auto hidx = to_indices(d.cH.finite);
  auto pm = to_piece(d.cKm), pp = to_piece(d.cKp);
  if (!hidx || !pm || !pp) {
    out.reason = "elements or axes outside the binary octahedral lattice";
    return out;
  }
  if (!generated_by_core_and(d.cKm, d.cH) || !generated_by_core_and(d.cKp, d.cH)) {
    out.reason = "K is not K0 . H";
    return out;
  }
  const Octa& o = octa();
  bool central = true;
  for (const QPair& g : d.cH.finite) central = central && g.is_central();

  auto swap_h = [](const std::vector<int>& h) {
    std::vector<int> r;
    for (int e : h) r.push_back((e % 48) * 48 + e / 48);
    std::sort(r.begin(), r.end());
    return r;
  };
  auto conj_h = [&](const std::vector<int>& h, int ga, int gb) {
    std::vector<int> r;
    for (int e : h) r.push_back(o.conj(ga, e / 48) * 48 + o.conj(gb, e % 48));
    std::sort(r.begin(), r.end());
    return r;
  };

  std::vector<int> best_key;
  Piece best_m, best_p;
  std::vector<int> best_h;
  int best_lm = 0, best_lp = 0;
  for (int swapK = 0; swapK < 2; ++swapK)
    for (int swapF = 0; swapF < 2; ++swapF) {
      Piece m = swapK ? *pp : *pm, p = swapK ? *pm : *pp;
      int lm = swapK ? d.l_plus : d.l_minus, lp = swapK ? d.l_minus : d.l_plus;
      std::vector<int> h = *hidx;
      if (swapF) {
        m = m.swapped();
        p = p.swapped();
        h = swap_h(h);
      }
      auto head = [&](const Piece& a, const Piece& b) {
        return std::vector<int>{-lm, -lp, int(a.core), int(b.core)};
      };
      if (central) {
        // independent conjugation of each side
        auto best_side = [&](const Piece& x, bool minus) {
          Piece bx = x;
          std::vector<int> bk;
          for (int ga : o.reps)
            for (int gb : o.reps) {
              Piece y = x.conj(ga, gb);
              std::vector<int> k;
              y.key(k, minus);
              if (bk.empty() && k.empty()) { bx = y; break; }
              if (bk.empty() || k < bk) { bk = k; bx = y; }
            }
          return bx;
        };
        Piece cm = best_side(m, true), cp = best_side(p, false);
        std::vector<int> key = head(cm, cp);
        cm.key(key, true);
        cp.key(key, false);
        key.insert(key.end(), h.begin(), h.end());
        if (best_key.empty() || key < best_key) {
          best_key = key; best_m = cm; best_p = cp; best_h = h; best_lm = lm; best_lp = lp;
        }
        continue;
      }
      for (int ga : o.reps)
        for (int gb : o.reps) {
          Piece cm = m.conj(ga, gb), cp = p.conj(ga, gb);
          std::vector<int> ch = conj_h(h, ga, gb);
          std::vector<int> key = head(cm, cp);
          key.insert(key.end(), ch.begin(), ch.end());
          cm.key(key, true);
          cp.key(key, false);
          if (best_key.empty() || key < best_key) {
            best_key = key; best_m = cm; best_p = cp; best_h = ch; best_lm = lm; best_lp = lp;
          }
        }
    }

  Embedding h = finite_embedding(best_h);
  Closed cm_core = realize(piece_embedding(best_m)), cp_core = realize(piece_embedding(best_p));
  Embedding km = with_finite(best_m, cm_core, h, best_h), kp = with_finite(best_p, cp_core, h, best_h);
  DiagramOptions opt;
  opt.weyl_order = d.table_weyl;
  out.diagram = build_diagram(d.G, h, km, kp, d.name, opt);
  if (out.diagram.l_minus != best_lm || out.diagram.l_plus != best_lp)
    fail("canonicalize changed the sphere dimensions");
  out.normalized = true;
  return out;
}

// Textual identity of a normalized diagram.
inline std::string diagram_signature(const GroupDiagram& d) {
  return d.G.name() + " | " + d.H.str() + " | " + d.K_minus.str() + " | " + d.K_plus.str();
}

// SECTION diagram files

struct DiagramParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "key = value" lines; '#' starts a comment.  Required keys: group, H,
// Kminus, Kplus.  Optional: name, W (order or D_k), l ("l-,l+" declared
// sphere dimensions for data-only groups).
struct DiagramText {
  std::map<std::string, std::string> fields;
};

inline DiagramText parse_diagram_text(const std::string& text, const std::string& origin = "<input>") {
  static const std::vector<std::string> required = {"group", "H", "Kminus", "Kplus"};
  static const std::vector<std::string> optional_keys = {"name", "W", "l"};
  DiagramText out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DiagramParseError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = detail::trim(line.substr(0, eq)), value = detail::trim(line.substr(eq + 1));
    bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                 std::find(optional_keys.begin(), optional_keys.end(), key) != optional_keys.end();
    if (!known) throw DiagramParseError(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (value.empty()) throw DiagramParseError(origin + ":" + std::to_string(lineno) + ": empty value for '" + key + "'");
    if (!out.fields.emplace(key, value).second)
      throw DiagramParseError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  for (const std::string& k : required)
    if (!out.fields.count(k)) throw DiagramParseError(origin + ": missing key '" + k + "'");
  return out;
}

// W = 6 or W = D3 (dihedral of order 2k)
inline int parse_weyl_order(const std::string& s) {
  std::string t = detail::trim(s);
  try {
    if (!t.empty() && t[0] == 'D') return 2 * detail::to_int(t.substr(1));
    return detail::to_int(t);
  } catch (const std::runtime_error&) {
    throw DiagramParseError("bad Weyl group '" + s + "'");
  }
}

// Syntax errors raise DiagramParseError; a well-formed file that is not a
// group diagram raises DiagramError.
inline GroupDiagram diagram_from_text(const DiagramText& t, const std::string& origin = "<input>") {
  LieGroupRef G;
  Embedding H, Km, Kp;
  DiagramOptions opt;
  try {
    G = parse_group(t.fields.at("group"));
    H = parse_embedding(t.fields.at("H"), G);
    Km = parse_embedding(t.fields.at("Kminus"), G);
    Kp = parse_embedding(t.fields.at("Kplus"), G);
    if (t.fields.count("W")) opt.weyl_order = parse_weyl_order(t.fields.at("W"));
    if (t.fields.count("l")) {
      auto parts = detail::split_args(t.fields.at("l"));
      if (parts.size() != 2) throw DiagramParseError("l needs two values");
      opt.l_minus = detail::to_int(parts[0]);
      opt.l_plus = detail::to_int(parts[1]);
    }
  } catch (const DiagramParseError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw DiagramParseError(origin + ": " + e.what());
  }
  std::string name = t.fields.count("name") ? t.fields.at("name") : "";
  try {
    return build_diagram(G, H, Km, Kp, name, opt);
  } catch (const DiagramError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw DiagramError(origin + ": " + e.what());
  }
}

inline GroupDiagram load_diagram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DiagramParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return diagram_from_text(parse_diagram_text(os.str(), path), path);
}

inline std::string diagram_to_text(const GroupDiagram& d) {
  std::string s;
  if (!d.name.empty()) s += "name = " + d.name + "\n";
  s += "group = " + d.G.name() + "\n";
  s += "H = " + d.H.str() + "\n";
  s += "Kminus = " + d.K_minus.str() + "\n";
  s += "Kplus = " + d.K_plus.str() + "\n";
  if (d.table_weyl) s += "W = " + std::to_string(*d.table_weyl) + "\n";
  return s;
}

}  // namespace cohomone
