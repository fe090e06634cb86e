// Weyl group of a diagram: the involutions w+- in (N(H) cap K+-)/H and the
// dihedral group they generate modulo H.
#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "diagram.hpp"

namespace cohomone {

struct WeylConfig {
  int order_cap = 24;  // |W| search bound
  int angle_factor = 2;  // circle denominators up to factor * max(|p|,|q|) * |H|
};

// SECTION generators

namespace detail {

inline Quaternion polar_along(const Quaternion& x, const Rational& angle) {
  auto [c, s] = cos_sin_pi(angle);
  return {c, s * x.x, s * x.y, s * x.z};
}

inline bool normalizes(const QPair& a, const Closed& h) {
  if (h.core != Core::trivial && !normalizes_core(a, h)) return false;
  const QPair ai = a.inv();
  for (const QPair& f : h.finite)
    if (!h.contains(a * f * ai)) return false;
  return true;
}

inline bool is_weyl_candidate(const QPair& a, const Closed& h) {
  return !h.contains(a) && h.contains(a * a) && normalizes(a, h);
}

}  // namespace detail

struct WeylGenerator {
  std::optional<QPair> element;
  std::string how;
};

// First valid element of a fixed enumeration of K0 (enough when K = K0 H,
// since w h^-1 is again a generator).  Circles: theta = pi m/n by increasing
// n.  Three-dimensional cores: images of the binary octahedral group.
inline WeylGenerator weyl_generator(const Closed& k, const Closed& h, const WeylConfig& cfg = {}) {
  using detail::is_weyl_candidate;
  const auto& bo = detail::octa().els;
  auto first_finite = [&]() -> WeylGenerator {
    for (const QPair& f : k.finite)
      if (is_weyl_candidate(f, h)) return {f, "finite part of K"};
    return {std::nullopt, "no element of the finite part qualifies"};
  };
  if (!detail::generated_by_core_and(k, h)) return first_finite();
  switch (k.core) {
    case Core::trivial: return first_finite();
    case Core::circle: {
      const int n_max = cfg.angle_factor * std::max(std::abs(k.p), std::abs(k.q)) * int(h.finite.size());
      for (int n = 1; n <= n_max; ++n)
        for (int m = 1; m < 2 * n; ++m) {
          if (std::gcd(m, n) != 1) continue;
          QPair a{detail::polar_along(k.x1, Rational(std::int64_t(k.p) * m, n)),
                  detail::polar_along(k.x2, Rational(std::int64_t(k.q) * m, n))};
          if (is_weyl_candidate(a, h))
            return {a, "theta = " + (m == 1 ? std::string() : std::to_string(m)) + "pi/" + std::to_string(n)};
        }
      return {std::nullopt, "no generator found within bound n <= " + std::to_string(n_max)};
    }
    case Core::diagonal: case Core::left: case Core::right:
      for (const Quaternion& v : bo) {
        QPair a = k.core == Core::diagonal ? QPair{k.twist * v * k.twist.conj(), v}
                  : k.core == Core::left   ? QPair{v, Quaternion()}
                                           : QPair{Quaternion(), v};
        if (is_weyl_candidate(a, h)) return {a, "binary octahedral element of K0"};
      }
      return {std::nullopt, "no generator among the binary octahedral elements of K0"};
    case Core::whole:
      for (const Quaternion& u : bo)
        for (const Quaternion& v : bo)
          if (is_weyl_candidate({u, v}, h)) return {QPair{u, v}, "binary octahedral pair"};
      return {std::nullopt, "no generator among binary octahedral pairs"};
  }
  return {std::nullopt, "unsupported core"};
}

inline WeylGenerator weyl_generator(const Embedding& K, const Embedding& H, const WeylConfig& cfg = {}) {
  return weyl_generator(realize(K), realize(H), cfg);
}

// dim of the Lie algebra of (N(H) cap K)_0 / H_0 for finite H: vectors of k
// fixed by every Ad_h.  -1 when H has positive dimension.
inline int ambiguity_dimension(const Closed& k, const Closed& h) {
  if (h.core != Core::trivial) return -1;
  auto basis = k.algebra();
  if (basis.empty()) return 0;
  // coefficient vectors c with sum c_j (Ad_h - 1) b_j = 0 for all h
  std::vector<Vec> cols;  // one column per basis element, stacked over h
  for (const Vec& b : basis) {
    Vec col;
    for (const QPair& g : h.finite) {
      Vec img = adjoint(g, b);
      for (size_t n = 0; n < img.size(); ++n) col.push_back(img[n] - b[n]);
    }
    cols.push_back(col);
  }
  return int(basis.size()) - rank(cols);
}

// SECTION Weyl group

struct WeylData {
  std::optional<QPair> w_minus, w_plus;
  std::optional<int> order;           // |W|; none when unknown or unbounded
  std::optional<int> order_reversed;  // from powers of w+ w-
  bool unbounded = false;             // order cap exceeded
  bool from_table = false;
  int cap = 24;
  int ambiguity_minus = 0, ambiguity_plus = 0;
  std::string how_minus, how_plus, note;

  std::string label() const {
    if (order) return "D" + std::to_string(*order / 2);
    if (unbounded) return "unbounded(>" + std::to_string(cap) + ")";
    return "unknown";
  }
};

namespace detail {

// 2m for the least m with x^m in H, m <= cap/2
inline std::optional<int> dihedral_order(const QPair& x, const Closed& h, int cap) {
  QPair y = x;
  for (int m = 1; 2 * m <= cap; ++m) {
    if (h.contains(y)) return 2 * m;
    y = y * x;
  }
  return std::nullopt;
}

}  // namespace detail

inline WeylData weyl_group(const GroupDiagram& d, const WeylConfig& cfg = {}) {
  WeylData w;
  w.cap = cfg.order_cap;
  if (!d.exact) {
    w.from_table = true;
    w.order = d.table_weyl;
    w.note = d.table_weyl ? "order supplied with the diagram" : "no realization and no supplied order";
    return w;
  }
  auto gm = weyl_generator(d.cKm, d.cH, cfg), gp = weyl_generator(d.cKp, d.cH, cfg);
  w.w_minus = gm.element;
  w.w_plus = gp.element;
  w.how_minus = gm.how;
  w.how_plus = gp.how;
  w.ambiguity_minus = ambiguity_dimension(d.cKm, d.cH);
  w.ambiguity_plus = ambiguity_dimension(d.cKp, d.cH);
  if (!gm.element || !gp.element) {
    w.note = "no generator found within bound; the Weyl group may be infinite";
    return w;
  }
  w.order = detail::dihedral_order(*gm.element * *gp.element, d.cH, cfg.order_cap);
  w.order_reversed = detail::dihedral_order(*gp.element * *gm.element, d.cH, cfg.order_cap);
  if (!w.order) {
    w.unbounded = true;
    w.note = "order of w- w+ modulo H exceeds the cap";
  }
  if (d.table_weyl && w.order && *d.table_weyl != *w.order)
    w.note = "computed |W| = " + std::to_string(*w.order) + " differs from supplied " + std::to_string(*d.table_weyl);
  return w;
}

// Ad_x^k(k-) and Ad_x^k(k+) for x = w- w+, k = 0 .. |W|/2 - 1: one
// representative per coset of W / <w+->.
inline std::vector<std::vector<Vec>> weyl_translates(const GroupDiagram& d, const WeylData& w) {
  if (!d.exact) throw LieError("Weyl translates need the quaternion realization");
  std::vector<std::vector<Vec>> out;
  auto km = d.cKm.algebra(), kp = d.cKp.algebra();
  if (!w.order || !w.w_minus || !w.w_plus) {
    out.push_back(km);
    out.push_back(kp);
    return out;
  }
  const QPair x = *w.w_minus * *w.w_plus;
  QPair g;
  for (int k = 0; k < *w.order / 2; ++k) {
    out.push_back(adjoint_all(g, km));
    out.push_back(adjoint_all(g, kp));
    g = g * x;
  }
  return out;
}

inline json weyl_json(const WeylData& w) {
  json j{{"W", w.label()}, {"from_table", w.from_table}};
  if (w.order) j["order"] = *w.order;
  if (w.order_reversed) j["order_reversed"] = *w.order_reversed;
  if (w.w_minus) j["w_minus"] = detail::pair_text(*w.w_minus);
  if (w.w_plus) j["w_plus"] = detail::pair_text(*w.w_plus);
  j["ambiguity"] = {w.ambiguity_minus, w.ambiguity_plus};
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

}  // namespace cohomone
