// Curvature obstructions for cohomogeneity one diagrams, each an executable
// check returning a Verdict with numeric evidence.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "weyl.hpp"

namespace cohomone {

// SECTION weights of slope circles

// A real block of the isotropy representation: dimension 1 with weight 0,
// or dimension 2 with a single weight (the circle acts by e^{i w t}).
struct WeightBlock {
  std::string name;
  int dim = 2;
  std::vector<int> weights;
};

struct WeightMultiset {
  std::vector<WeightBlock> blocks;

  int dim() const {
    int d = 0;
    for (auto& b : blocks) d += b.dim;
    return d;
  }
  std::vector<int> weights() const {
    std::vector<int> out;
    for (auto& b : blocks) out.insert(out.end(), b.weights.begin(), b.weights.end());
    return out;
  }
};

struct SlopeWeights {
  WeightMultiset T, S2;
};

// Tangent space of B = G/K at p for K0 = C(p,q) and H finite:
// T = W0 + W1 + W2 with weights 0, 2p, 2q; S2(T) with block structure kept.
inline SlopeWeights slope_weights(int p, int q) {
  SlopeWeights s;
  s.T.blocks = {{"W0", 1, {0}}, {"W1", 2, {2 * p}}, {"W2", 2, {2 * q}}};
  s.S2.blocks = {{"S2(W0)", 1, {0}},          {"W0W1", 2, {2 * p}},
                 {"W0W2", 2, {2 * q}},        {"S2(W1)", 3, {4 * p, 0}},
                 {"W1W2", 4, {2 * p + 2 * q, 2 * p - 2 * q}}, {"S2(W2)", 3, {4 * q, 0}}};
  return s;
}

// Normal weight at the singular orbit of a slope circle: |H cap K0|.
inline int normal_weight(const Closed& k, const Closed& h) {
  int n = 0;
  for (const QPair& g : h.finite) n += k.in_core(g);
  return n;
}

// SECTION vanishing of the second fundamental form

struct Vanishing {
  int dim = 0;
  std::string subspace;
  std::string rule;
  bool totally_geodesic = false;
};

namespace detail {

struct VBlock {
  std::string name;
  int dim;
  int w;               // |weight|
  bool isotropic = false;  // S2 of the block is killed by the choice of block
};

// |weights| of the symmetric product of two blocks (a == b: S2)
inline std::vector<int> product_weights(const VBlock& a, const VBlock& b, bool same) {
  if (same) {
    if (a.dim == 1) return {0};
    return {2 * a.w, 0};
  }
  if (a.dim == 1) return {b.w};
  if (b.dim == 1) return {a.w};
  return {a.w + b.w, std::abs(a.w - b.w)};
}

inline bool misses(const std::vector<int>& ws, int nu) {
  for (int w : ws)
    if (w == nu) return false;
  return true;
}

// II restricted to S2(U) has no component of weight nu.
inline bool vanishes(const std::vector<VBlock>& U, int nu) {
  for (size_t i = 0; i < U.size(); ++i)
    for (size_t j = i; j < U.size(); ++j) {
      if (i == j && U[i].isotropic) continue;
      if (!misses(product_weights(U[i], U[j], i == j), nu)) return false;
    }
  return true;
}

inline bool tensor_vanishes(const std::vector<VBlock>& U, const VBlock& B, int nu) {
  for (const VBlock& u : U)
    if (!misses(product_weights(u, B, false), nu)) return false;
  return true;
}

inline std::string names(const std::vector<VBlock>& U) {
  std::string s;
  for (auto& b : U) s += (s.empty() ? "" : "+") + b.name;
  return s.empty() ? "0" : s;
}

// Largest certified vanishing dimension inside one block system: a vanishing
// sum U, or U + R v when also II(U, W_r) = 0 for a block W_r outside U
// (then II(w, w) = b^2 II(v, v) on W_v = U + R v).
inline Vanishing best_vanishing(const std::vector<VBlock>& blocks, int nu, const std::string& tag) {
  Vanishing best;
  const int n = int(blocks.size());
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<VBlock> U;
    int dim = 0;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) {
        U.push_back(blocks[i]);
        dim += blocks[i].dim;
      }
    if (!vanishes(U, nu)) continue;
    if (dim > best.dim) best = {dim, "S2(" + names(U) + ")", tag + "block weights miss the normal weight", false};
    for (int r = 0; r < n; ++r) {
      if (mask >> r & 1 || blocks[r].dim != 2) continue;
      if (tensor_vanishes(U, blocks[r], nu) && dim + 1 > best.dim)
        best = {dim + 1, "W_v = " + names(U) + " + Rv, v in " + blocks[r].name, tag + "W_v intersection argument", false};
    }
  }
  return best;
}

}  // namespace detail

// Vanishing dimension of II at a slope-circle orbit with normal weight nu.
// For |p| = |q| the weight-nu part of II on W1 + W2 = C^2 is a complex
// quadratic form, so an isotropic complex line L exists and S2(L) vanishes.
inline Vanishing vanishing_dimension(int p, int q, int nu) {
  using detail::VBlock;
  const int a = std::abs(2 * p), b = std::abs(2 * q);
  std::vector<VBlock> blocks = {{"W0", 1, 0}, {"W1", 2, a}, {"W2", 2, b}};
  Vanishing v = detail::best_vanishing(blocks, nu, "");
  if (v.dim == 5) v.totally_geodesic = true;
  if (p != 0 && std::abs(p) == std::abs(q)) {
    std::vector<VBlock> iso = {{"W0", 1, 0}, {"L", 2, a, true}};
    Vanishing w = detail::best_vanishing(iso, nu, "isotropic line L in W1+W2; ");
    if (w.dim > v.dim) v = w;
  }
  return v;
}

// SECTION totally geodesic orbits

struct TGCertificate {
  std::string kind;    // "central" or "weight-parity" or "declared"
  std::string detail;
};

// Certificates that B_side is totally geodesic: a central element of G in
// K_side outside H, or a normal weight absent from all S2 weights.
inline std::optional<TGCertificate> detect_totally_geodesic(const GroupDiagram& d, int side) {
  if (const auto& c = d.declared_tg(side)) return TGCertificate{"declared", *c};
  if (!d.exact) return std::nullopt;
  const Closed& k = d.cK(side);
  for (int s : {1, -1})
    for (int t : {1, -1}) {
      QPair z = QPair::from_signs(s, t);
      if (z.is_one()) continue;
      if (k.contains(z) && !d.cH.contains(z))
        return TGCertificate{"central", "central element " + detail::pair_text(z) + " in K but not in H"};
    }
  if (k.core == Core::circle && d.cH.core == Core::trivial) {
    int nu = normal_weight(k, d.cH);
    auto ws = slope_weights(k.p, k.q).S2.weights();
    bool hit = false;
    for (int w : ws) hit = hit || std::abs(w) == nu;
    if (!hit) return TGCertificate{"weight-parity", "normal weight " + std::to_string(nu) + " absent from S2 weights"};
  }
  return std::nullopt;
}

// Excluded iff dim G/H > 2 l_side + l_other.
inline Verdict check_totally_geodesic_bound(int dim_GH, int l_side, int l_other, const std::optional<TGCertificate>& cert,
                                            const std::string& check = "totally_geodesic") {
  Verdict v{check, Status::not_applicable, json::object(), anchor("totally_geodesic"), ""};
  if (!cert) {
    v.note = "no totally geodesic certificate";
    return v;
  }
  const int rhs = 2 * l_side + l_other;
  v.evidence = {{"dim_G/H", dim_GH}, {"2*l_side+l_other", rhs}, {"l_side", l_side}, {"l_other", l_other},
                {"certificate", cert->kind}};
  v.status = dim_GH <= rhs ? Status::pass : Status::fail;
  v.note = cert->detail + "; " + std::to_string(dim_GH) + " <= " + std::to_string(rhs) + (dim_GH <= rhs ? " holds" : " fails");
  return v;
}

inline Verdict check_totally_geodesic_bound(const GroupDiagram& d, int side) {
  std::optional<TGCertificate> cert = detect_totally_geodesic(d, side);
  std::string name = side < 0 ? "totally_geodesic-" : "totally_geodesic+";
  if (!cert && !d.exact) {
    Verdict v{name, Status::inconclusive, json::object(), anchor("totally_geodesic"), "no certificate computable for data-only groups"};
    return v;
  }
  return check_totally_geodesic_bound(d.dim_GH(), d.l(side), d.l(-side), cert, name);
}

// SECTION partial Frankel

// Excluded iff the two vanishing dimensions reach dim M.
inline Verdict check_partial_frankel(int dim_M, int vanish_minus, int vanish_plus) {
  Verdict v{"partial_frankel", Status::pass, json::object(), anchor("partial_frankel"), ""};
  v.evidence = {{"vanish_minus", vanish_minus}, {"vanish_plus", vanish_plus}, {"sum", vanish_minus + vanish_plus},
                {"dim_M", dim_M}};
  if (vanish_minus + vanish_plus >= dim_M) v.status = Status::fail;
  v.note = std::to_string(vanish_minus) + " + " + std::to_string(vanish_plus) +
           (v.status == Status::fail ? " >= " : " < ") + std::to_string(dim_M);
  return v;
}

inline Vanishing side_vanishing(const GroupDiagram& d, int side) {
  const Closed& k = d.cK(side);
  const int dim_B = d.dim_G() - d.K(side).dim();
  if (auto cert = detect_totally_geodesic(d, side)) return {dim_B, "T(B)", cert->kind, true};
  if (k.core == Core::circle && d.cH.core == Core::trivial) return vanishing_dimension(k.p, k.q, normal_weight(k, d.cH));
  return {0, "0", "no block decomposition", false};
}

inline Verdict check_partial_frankel(const GroupDiagram& d) {
  if (!d.exact || d.cH.core != Core::trivial)
    return {"partial_frankel", Status::not_applicable, json::object(), anchor("partial_frankel"), "needs finite H in S3xS3"};
  Vanishing m = side_vanishing(d, -1), p = side_vanishing(d, 1);
  Verdict v = check_partial_frankel(d.dim_M, m.dim, p.dim);
  v.evidence["subspace_minus"] = m.subspace;
  v.evidence["subspace_plus"] = p.subspace;
  v.evidence["rule_minus"] = m.rule;
  v.evidence["rule_plus"] = p.rule;
  v.note += "; vanishing blocks follow the uniform weight rule (interpretation)";
  return v;
}

// SECTION rank lemma

inline Verdict check_rank_lemma(const GroupDiagram& d) {
  Verdict v{"rank_lemma", Status::pass, json::object(), anchor("rank_lemma"), ""};
  v.evidence = {{"dim_M", d.dim_M}, {"corank_H", d.corank_H}, {"corank_Kminus", d.corank_minus},
                {"corank_Kplus", d.corank_plus}};
  const int kmin = std::min(d.corank_minus, d.corank_plus);
  if (d.dim_M % 2 == 0) {
    if (kmin != 0) { v.status = Status::fail; v.note = "even dim M needs a K of corank 0"; }
    else if (d.corank_H != 1) { v.status = Status::fail; v.note = "even dim M needs H of corank 1"; }
  } else {
    if (kmin > 1) { v.status = Status::fail; v.note = "odd dim M needs a K of corank at most 1"; }
    else if (d.corank_H != 0 && d.corank_H != 2) { v.status = Status::fail; v.note = "odd dim M needs H of corank 0 or 2"; }
  }
  return v;
}

// SECTION primitivity

inline Verdict check_linear_primitivity(const GroupDiagram& d, const WeylData& w) {
  Verdict v{"linear_primitivity", Status::pass, json::object(), anchor("linear_primitivity"), ""};
  if (!d.exact) {
    // dimension count: dim G <= |W|/2 (dim K- + dim K+)
    if (!w.order) {
      v.status = Status::inconclusive;
      v.note = "no realization and no Weyl group order";
      return v;
    }
    const int rhs = *w.order / 2 * (d.K_minus.dim() + d.K_plus.dim());
    v.evidence = {{"dim_G", d.dim_G()}, {"sum_of_translate_dims", rhs}, {"W", *w.order}};
    v.status = d.dim_G() <= rhs ? Status::pass : Status::fail;
    v.note = "dimension count in place of a rank for data-only groups";
    return v;
  }
  std::vector<Vec> all;
  for (auto& s : weyl_translates(d, w)) all.insert(all.end(), s.begin(), s.end());
  const int r = rank(all);
  v.evidence = {{"rank", r}, {"dim_G", d.dim_G()}, {"translates", int(all.size())}};
  if (w.order) v.evidence["W"] = *w.order;
  if (r != d.dim_G()) {
    v.status = Status::fail;
    v.note = "Weyl translates span a " + std::to_string(r) + "-dimensional subspace";
  }
  return v;
}

namespace detail {

inline Vec bracket(const Vec& x, const Vec& y) {
  auto cross = [](const Scalar& a1, const Scalar& a2, const Scalar& a3, const Scalar& b1, const Scalar& b2,
                  const Scalar& b3) {
    return std::array<Scalar, 3>{a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1};
  };
  auto l = cross(x[0], x[1], x[2], y[0], y[1], y[2]);
  auto r = cross(x[3], x[4], x[5], y[3], y[4], y[5]);
  return {l[0], l[1], l[2], r[0], r[1], r[2]};
}

// Dimension of the Lie subalgebra of su(2)+su(2) generated by gens.
inline int generated_dimension(std::vector<Vec> gens) {
  std::vector<Vec> span = gens;
  row_reduce(span);
  for (bool grew = true; grew && span.size() < 6;) {
    grew = false;
    const size_t n = span.size();
    for (size_t i = 0; i < n && !grew; ++i)
      for (size_t j = i + 1; j < n && !grew; ++j) {
        Vec b = bracket(span[i], span[j]);
        if (!span_contains(span, b)) {
          span.push_back(b);
          row_reduce(span);
          grew = true;
        }
      }
  }
  return int(span.size());
}

inline Quaternion exp_imaginary(const Scalar& x, const Scalar& y, const Scalar& z, double theta) {
  double n = std::sqrt(x.value() * x.value() + y.value() * y.value() + z.value() * z.value());
  if (n < float_tolerance) return Quaternion();
  double c = std::cos(theta * n), s = std::sin(theta * n) / n;
  return {Scalar::inexact(c), Scalar::inexact(s * x.value()), Scalar::inexact(s * y.value()), Scalar::inexact(s * z.value())};
}

// Lattice in N(H)0 for finite H: every binary octahedral pair when H is
// central, the identity when the centralizer is discrete, else exp(theta X)
// along a basis of the centralizer algebra.
inline std::vector<QPair> normalizer_samples(const Closed& h) {
  std::vector<QPair> out{QPair()};
  std::vector<Vec> basis;
  for (int n = 0; n < 6; ++n) {
    Vec e(6, Scalar(0));
    e[n] = Scalar(1);
    basis.push_back(e);
  }
  Closed whole_k;
  whole_k.core = Core::whole;
  const int z = ambiguity_dimension(whole_k, h);
  if (z == 6) {
    const Octa& o = octa();
    out.clear();
    for (int a : o.reps)
      for (int b : o.reps) out.push_back({o.els[a], o.els[b]});
    return out;
  }
  if (z <= 0) return out;
  // fixed vectors of Ad_H: null space of the stacked (Ad_h - 1)
  std::vector<Vec> fixed;
  for (const Vec& b : basis) {
    bool ok = true;
    for (const QPair& g : h.finite) {
      Vec img = adjoint(g, b);
      for (int n = 0; n < 6; ++n) ok = ok && (img[n] - b[n]).is_zero();
    }
    if (ok) fixed.push_back(b);
  }
  for (const Vec& X : fixed)
    for (double theta : {M_PI / 4, M_PI / 2, 3 * M_PI / 4})
      out.push_back({exp_imaginary(X[0], X[1], X[2], theta), exp_imaginary(X[3], X[4], X[5], theta)});
  return out;
}

}  // namespace detail

// Lie-algebra approximation: k- and Ad_n k+ generate g for every sampled n.
inline Verdict check_group_primitivity(const GroupDiagram& d) {
  Verdict v{"group_primitivity", Status::pass, json::object(), anchor("group_primitivity"),
            "primitivity (Lie-algebra approximation)"};
  if (!d.exact || d.cH.core != Core::trivial) {
    v.status = Status::inconclusive;
    v.note += "; needs finite H in S3xS3";
    return v;
  }
  auto km = d.cKm.algebra(), kp = d.cKp.algebra();
  auto samples = detail::normalizer_samples(d.cH);
  int worst = 6, failed = 0;
  for (const QPair& n : samples) {
    std::vector<Vec> gens = km;
    for (const Vec& x : kp) gens.push_back(adjoint(n, x));
    int dim = detail::generated_dimension(gens);
    worst = std::min(worst, dim);
    failed += dim != d.dim_G();
  }
  v.evidence = {{"samples", int(samples.size())}, {"min_generated_dim", worst}, {"dim_G", d.dim_G()}, {"failed_samples", failed}};
  if (failed) v.status = Status::fail;
  return v;
}

// SECTION Weyl group bounds

inline Verdict check_lower_weyl_bound(int W, int dim_GH, int l_minus, int l_plus) {
  Verdict v{"lower_weyl", Status::pass, json::object(), anchor("lower_weyl"), ""};
  v.evidence = {{"W", W}, {"lhs_W_times_l_sum", W * (l_minus + l_plus)}, {"rhs_2dim_G/H", 2 * dim_GH}};
  if (W * (l_minus + l_plus) < 2 * dim_GH) v.status = Status::fail;
  return v;
}

inline Verdict check_lower_weyl_bound(const GroupDiagram& d, const WeylData& w) {
  if (!w.order) {
    Verdict v{"lower_weyl", w.unbounded ? Status::fail : Status::inconclusive, json::object(), anchor("lower_weyl"), w.note};
    v.evidence = {{"W", w.label()}, {"rhs_2dim_G/H", 2 * d.dim_GH()}};
    return v;
  }
  return check_lower_weyl_bound(*w.order, d.dim_GH(), d.l_minus, d.l_plus);
}

inline Verdict check_upper_weyl_bound(const GroupDiagram& d, const WeylData& w) {
  Verdict v{"upper_weyl", Status::not_applicable, json::object(), anchor("upper_weyl"), ""};
  if (d.corank_H != 1 && d.corank_H != 2) {
    v.note = "corank of H is neither 1 nor 2";
    return v;
  }
  const bool two = d.corank_H == 2;
  std::optional<int> bound;
  std::string which;
  auto take = [&](int b, const std::string& c) {
    if (!bound || b < *bound) { bound = b; which = c; }
  };
  Tri cyc = detail::finite_part_cyclic(d);
  if (cyc == Tri::yes) take(two ? 8 : 4, "(a) H/H0 trivial or cyclic");
  const int comps = d.exact ? d.cH.component_count() : d.H.component_count();
  if (comps == 1 && d.l_minus % 2 == 1 && d.l_plus % 2 == 1) take(two ? 4 : 2, "(b) H connected, l+- odd");
  if (d.exact && w.ambiguity_minus > 0 && w.ambiguity_plus > 0) take(two ? 4 : 2, "(c) (N(H) cap K+-)/H infinite");
  if (!bound) {
    v.note = "no case";
    v.evidence = {{"corank_H", d.corank_H}, {"H_mod_H0_cyclic", tri_str(cyc)}};
    return v;
  }
  v.evidence = {{"bound", *bound}, {"case", which}, {"corank_H", d.corank_H}};
  if (!w.order) {
    v.status = w.unbounded ? Status::fail : Status::inconclusive;
    v.evidence["W"] = w.label();
    return v;
  }
  v.evidence["W"] = *w.order;
  v.status = *w.order <= *bound ? Status::pass : Status::fail;
  return v;
}

// SECTION core-Weyl lemma

namespace detail {

// Sorted factor names with the usual isomorphisms identified.
inline std::vector<std::string> normalized_factors(const LieGroupRef& g) {
  std::vector<std::string> out;
  std::function<void(const LieGroupRef&)> walk = [&](const LieGroupRef& x) {
    switch (x.family) {
      case Family::Product:
        for (auto& f : x.factors) walk(f);
        return;
      case Family::S1: out.push_back("S1"); return;
      case Family::Torus:
        for (int i = 0; i < x.n; ++i) out.push_back("S1");
        return;
      case Family::S3: out.push_back("S3"); return;
      case Family::SO:
        if (x.n == 2) out.push_back("S1");
        else if (x.n == 3) out.push_back("SO(3)");
        else out.push_back(x.name());
        return;
      case Family::U:
        out.push_back(x.n == 1 ? "S1" : x.name());
        return;
      case Family::SU: case Family::Sp:
        out.push_back(x.n == 1 && x.family == Family::Sp ? "S3" : x.n == 2 && x.family == Family::SU ? "S3" : x.name());
        return;
      case Family::Spin:
        if (x.n == 3) out.push_back("S3");
        else if (x.n == 4) { out.push_back("S3"); out.push_back("S3"); }
        else out.push_back(x.name());
        return;
      default: out.push_back(x.name()); return;
    }
  };
  walk(g);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline const std::vector<std::vector<std::string>>& core_weyl_allowed() {
  static const std::vector<std::vector<std::string>> allowed = [] {
    std::vector<std::vector<std::string>> a;
    for (const char* n : {"S1", "S3", "T^2", "S1xS3", "U(2)", "S3xS3", "SO(3)xS3", "SO(4)"})
      a.push_back(detail::normalized_factors(parse_group(n)));
    return a;
  }();
  return allowed;
}

inline bool core_weyl_group_allowed(const LieGroupRef& G) {
  auto f = detail::normalized_factors(G);
  for (auto& a : core_weyl_allowed())
    if (a == f) return true;
  return false;
}

// Trivial principal isotropy: G0 in the list and |W| divides
// 2 rk(G) |G/G0| <= 8.
inline Verdict check_core_weyl(const LieGroupRef& G, bool H_trivial, std::optional<int> W) {
  Verdict v{"core_weyl", Status::not_applicable, json::object(), anchor("core_weyl"), ""};
  if (!H_trivial) {
    v.note = "principal isotropy is not trivial";
    return v;
  }
  const int cap = 2 * G.rank() * std::max(1, G.component_count());
  const bool listed = core_weyl_group_allowed(G);
  v.evidence = {{"G0", G.name()}, {"listed", listed}, {"2rk|G/G0|", cap}};
  if (!listed) {
    v.status = Status::fail;
    v.note = G.name() + " is not in the allowed list";
    return v;
  }
  if (!W) {
    v.status = Status::inconclusive;
    v.note = "Weyl group order unknown";
    return v;
  }
  v.evidence["W"] = *W;
  v.status = (cap <= 8 && cap % *W == 0) ? Status::pass : Status::fail;
  if (v.status == Status::fail) v.note = "|W| = " + std::to_string(*W) + " does not divide " + std::to_string(cap);
  return v;
}

inline Verdict check_core_weyl(const GroupDiagram& d, const WeylData& w) {
  bool trivial_H = d.exact ? (d.cH.core == Core::trivial && d.cH.finite.size() == 1) : d.H.kind == EmbKind::trivial;
  return check_core_weyl(d.G, trivial_H, w.order);
}

// SECTION isotropy lemma

// Adjoint weights p_i - p_j (i != j) of a circle diag(z^p1, ..., z^pn) in SU(n).
inline std::vector<int> su_adjoint_weights(const std::vector<int>& p) {
  std::vector<int> out;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < p.size(); ++j)
      if (i != j) out.push_back(p[i] - p[j]);
  return out;
}

// Roots of Sp(n) on diag(z^p1, ..., z^pn): 2p_i and p_i +- p_j.
inline std::vector<int> sp_adjoint_weights(const std::vector<int>& p) {
  std::vector<int> out;
  for (size_t i = 0; i < p.size(); ++i) {
    out.push_back(2 * p[i]);
    for (size_t j = i + 1; j < p.size(); ++j) {
      out.push_back(p[i] + p[j]);
      out.push_back(p[i] - p[j]);
    }
  }
  return out;
}

inline std::set<int> distinct_nonzero_abs(const std::vector<int>& ws) {
  std::set<int> s;
  for (int w : ws)
    if (w) s.insert(std::abs(w));
  return s;
}

// At most two distinct non trivial weights (up to sign).
inline bool two_distinct_weights(const std::vector<int>& ws) { return distinct_nonzero_abs(ws).size() <= 2; }

// Every nonzero |weight| of m among the weights of the normal spheres, up to
// one global integer rescaling.
inline bool weights_weakly_contained(const std::vector<int>& m, const std::vector<int>& spheres) {
  auto target = distinct_nonzero_abs(spheres), need = distinct_nonzero_abs(m);
  if (need.empty()) return true;
  if (target.empty()) return false;
  for (int num = 1; num <= 12; ++num)
    for (int den = 1; den <= 12; ++den) {
      if (std::gcd(num, den) != 1) continue;
      bool ok = true;
      for (int w : need) ok = ok && (w * num) % den == 0 && target.count(w * num / den);
      if (ok) return true;
    }
  return false;
}

inline Verdict check_isotropy_lemma(const GroupDiagram& d) {
  Verdict v{"isotropy", Status::not_applicable, json::object(), anchor("isotropy"), ""};
  const bool H0_trivial = d.exact ? d.cH.core == Core::trivial : d.H.dim() == 0;
  if (H0_trivial) {
    v.note = "H0 is trivial";
    return v;
  }
  if (d.H.kind == EmbKind::circle_with_weights && d.G.family == Family::SU) {
    auto ws = su_adjoint_weights(d.H.weights);
    v.evidence = {{"weights", ws}, {"distinct_nonzero", int(distinct_nonzero_abs(ws).size())}};
    v.status = two_distinct_weights(ws) ? Status::pass : Status::fail;
    v.note = "two-distinct-weights filter on p_i - p_j";
    return v;
  }
  if (d.H.kind == EmbKind::circle_with_weights && d.G.family == Family::Sp) {
    auto ws = sp_adjoint_weights(d.H.weights);
    v.evidence = {{"weights", ws}, {"distinct_nonzero", int(distinct_nonzero_abs(ws).size())}};
    v.status = two_distinct_weights(ws) ? Status::pass : Status::fail;
    return v;
  }
  v.status = Status::inconclusive;
  v.note = "representation labels only";
  return v;
}

// SECTION block lemma

// d - k <= r + 1 for a lower k x k block; k >= 3 (u = 1, 2) or k >= 2 (u = 4).
inline Verdict check_block_lemma(int d, int k, int r, int u = 1) {
  Verdict v{"block_lemma", Status::pass, {{"d", d}, {"k", k}, {"r", r}, {"u", u}, {"d-k", d - k}, {"r+1", r + 1}},
            anchor("block_lemma"), ""};
  const int threshold = u == 4 ? 2 : 3;
  if (k < threshold) {
    v.status = Status::not_applicable;
    v.note = "block below the threshold k >= " + std::to_string(threshold);
    return v;
  }
  if (d - k == 1) {
    v.status = Status::not_applicable;
    v.note = "d - k = 1: not essential";
    return v;
  }
  if (d - k > r + 1) v.status = Status::fail;
  return v;
}

// SECTION codimension two

namespace detail {

struct EffectiveShape {
  int Hbar = 1;               // |H / N|, N = H cap Z(G)
  bool klein = false;         // H/N = Z2 + Z2
  int comp_minus = 1, comp_plus = 1;
  bool inverts_minus = false, inverts_plus = false;
  int Hbar_minus = 1, Hbar_plus = 1, Hbar_product = 1;  // images of the kernels
};

inline std::vector<QPair> central_part(const Closed& h) {
  std::vector<QPair> n;
  for (const QPair& g : h.finite)
    if (g.is_central()) n.push_back(g);
  return n;
}

// h fixes k0 pointwise under Ad
inline bool fixes_algebra(const QPair& h, const Closed& k) {
  for (const Vec& b : k.algebra()) {
    Vec img = adjoint(h, b);
    for (size_t n = 0; n < b.size(); ++n)
      if (!(img[n] - b[n]).is_zero()) return false;
  }
  return true;
}

inline int count_mod(const std::vector<QPair>& set, const std::vector<QPair>& N) {
  std::vector<QPair> reps;
  for (const QPair& g : set) {
    bool seen = false;
    for (const QPair& r : reps)
      for (const QPair& n : N)
        if (same_element(g, r * n)) seen = true;
    if (!seen) reps.push_back(g);
  }
  return int(reps.size());
}

inline EffectiveShape effective_shape(const GroupDiagram& d) {
  EffectiveShape s;
  const Closed& h = d.cH;
  auto N = central_part(h);
  s.Hbar = int(h.finite.size() / N.size());
  if (s.Hbar == 4) {
    s.klein = true;
    for (const QPair& g : h.finite) s.klein = s.klein && contains_element(N, g * g);
  }
  auto comp = [&](const Closed& k, bool& inverts) {
    std::vector<QPair> in;
    const QPair* outside = nullptr;
    for (const QPair& f : k.finite) {
      bool hit = false;
      for (const QPair& n : N) hit = hit || k.in_core(f * n.inv());
      if (hit) in.push_back(f);
      else if (!outside) outside = &f;
    }
    if (outside) {
      inverts = true;
      for (const Vec& b : k.algebra()) {
        Vec img = adjoint(*outside, b);
        for (size_t n = 0; n < b.size(); ++n) inverts = inverts && (img[n] + b[n]).is_zero();
      }
    }
    return int(k.finite.size() / in.size());
  };
  s.comp_minus = comp(d.cKm, s.inverts_minus);
  s.comp_plus = comp(d.cKp, s.inverts_plus);
  std::vector<QPair> hm, hp, prod;
  for (const QPair& g : h.finite) {
    if (fixes_algebra(g, d.cKm)) hm.push_back(g);
    if (fixes_algebra(g, d.cKp)) hp.push_back(g);
  }
  for (const QPair& a : hm)
    for (const QPair& b : hp)
      if (!contains_element(prod, a * b)) prod.push_back(a * b);
  s.Hbar_minus = count_mod(hm, N);
  s.Hbar_plus = count_mod(hp, N);
  s.Hbar_product = count_mod(prod, N);
  return s;
}

}  // namespace detail

// Effectivized shapes (H/N, K-/N, K+/N) for l+- = 1: (a) 1, SO(2), SO(2);
// (b) Z2 = the kernel of one side, SO(2), O(2); (c) Z2+Z2 = H-bar- H-bar+,
// O(2), O(2).  O(2) means two components, the second inverting K0.
inline Verdict check_codim2_case(const GroupDiagram& d) {
  Verdict v{"codim2_shape", Status::not_applicable, json::object(), anchor("codim2_shape"), ""};
  if (d.l_minus != 1 || d.l_plus != 1) {
    v.note = "singular orbits not both of codimension two";
    return v;
  }
  if (!d.exact || d.cH.core != Core::trivial) {
    v.status = Status::inconclusive;
    v.note = "needs finite H in S3xS3";
    return v;
  }
  auto s = detail::effective_shape(d);
  auto kbar = [](int comp, bool inv) { return comp == 1 ? std::string("SO(2)") : comp == 2 && inv ? "O(2)" : "other"; };
  const std::string km = kbar(s.comp_minus, s.inverts_minus), kp = kbar(s.comp_plus, s.inverts_plus);
  v.evidence = {{"Hbar", s.Hbar}, {"Kbar_minus", km}, {"Kbar_plus", kp}, {"Hbar_minus", s.Hbar_minus},
                {"Hbar_plus", s.Hbar_plus}, {"Hbar_minus_Hbar_plus", s.Hbar_product}};
  v.status = Status::fail;
  if (s.Hbar == 1 && km == "SO(2)" && kp == "SO(2)") {
    v.status = Status::pass;
    v.note = "case (a)";
  } else if (s.Hbar == 2 && ((km == "SO(2)" && kp == "O(2)" && s.Hbar_minus == 2) ||
                             (km == "O(2)" && kp == "SO(2)" && s.Hbar_plus == 2))) {
    v.status = Status::pass;
    v.note = "case (b)";
  } else if (s.Hbar == 4 && s.klein && km == "O(2)" && kp == "O(2)" && s.Hbar_product == 4) {
    v.status = Status::pass;
    v.note = "case (c)";
  } else {
    v.note = "shape (" + std::to_string(s.Hbar) + ", " + km + ", " + kp + ") is none of the three cases";
  }
  return v;
}

// SECTION ineffective kernels

// H+- = elements of H acting trivially on K+-0; effective modulo the central
// kernel N = H cap Z(G), so the test is H- cap H+ = N.
inline Verdict check_ineffective_kernels(const GroupDiagram& d) {
  Verdict v{"ineffective_kernels", Status::pass, json::object(), anchor("ineffective_kernels"), ""};
  if (!d.exact || d.cH.core != Core::trivial) {
    v.status = Status::inconclusive;
    v.note = "kernels not computable";
    return v;
  }
  auto N = detail::central_part(d.cH);
  int meet = 0;
  for (const QPair& g : d.cH.finite)
    meet += detail::fixes_algebra(g, d.cKm) && detail::fixes_algebra(g, d.cKp);
  v.evidence = {{"H_minus_cap_H_plus", meet}, {"central_kernel", int(N.size())}};
  if (meet != int(N.size())) {
    v.status = Status::fail;
    v.note = "H- and H+ share a non-central element";
  } else {
    v.note = "trivial modulo the central kernel";
  }
  return v;
}

// SECTION slope normalization

inline Verdict check_min_slope(const GroupDiagram& d) {
  Verdict v{"min_slope", Status::not_applicable, json::object(), anchor("min_slope"), ""};
  if (!d.exact || d.cKm.core != Core::circle || d.cKp.core != Core::circle || d.l_minus != 1 || d.l_plus != 1) {
    v.note = "needs two slope circles";
    return v;
  }
  const int mp = std::min(std::abs(d.cKm.p), std::abs(d.cKp.p)), mq = std::min(std::abs(d.cKm.q), std::abs(d.cKp.q));
  v.evidence = {{"min_p", mp}, {"min_q", mq}};
  v.status = mp == 1 && mq == 1 ? Status::pass : Status::fail;
  return v;
}

// SECTION full report

struct CheckReport {
  json diagram;
  json weyl;
  std::vector<Verdict> verdicts;

  int count(Status s) const {
    int n = 0;
    for (auto& v : verdicts) n += v.status == s;
    return n;
  }
  bool any_fail() const { return count(Status::fail) > 0; }
  const Verdict* first_fail() const {
    for (auto& v : verdicts)
      if (v.status == Status::fail) return &v;
    return nullptr;
  }
  bool operator==(const CheckReport&) const = default;
};

// Every check in a fixed order.
inline CheckReport verify_diagram(const GroupDiagram& d, const WeylConfig& cfg = {}) {
  CheckReport r;
  r.diagram = diagram_json(d);
  WeylData w = weyl_group(d, cfg);
  r.weyl = weyl_json(w);
  auto& out = r.verdicts;
  out.push_back(simply_connected_verdict(d));
  out.push_back(check_rank_lemma(d));
  out.push_back(check_linear_primitivity(d, w));
  out.push_back(check_group_primitivity(d));
  out.push_back(check_lower_weyl_bound(d, w));
  out.push_back(check_upper_weyl_bound(d, w));
  out.push_back(check_core_weyl(d, w));
  out.push_back(check_isotropy_lemma(d));
  out.push_back(check_totally_geodesic_bound(d, -1));
  out.push_back(check_totally_geodesic_bound(d, 1));
  out.push_back(check_partial_frankel(d));
  out.push_back(check_codim2_case(d));
  out.push_back(check_ineffective_kernels(d));
  out.push_back(check_min_slope(d));
  return r;
}

}  // namespace cohomone
