// Subgroup descriptors H, K inside G and the Lie algebra data they induce.
//
// Subgroups of S3xS3 are realized concretely as K = K0 . F, with K0 one of
// the connected pieces {1, slope circle, twisted diagonal, a factor, all of
// G} and F a finite group of quaternion pairs normalizing K0.  Subgroups of
// other ambients are labels, optionally carrying block rows or circle
// weights, and support only dimension arithmetic and matrix spans.
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "lie_catalog.hpp"
#include "linalg.hpp"
#include "quaternion.hpp"

namespace cohomone {

// Three-valued answers for questions that data-only inputs cannot decide.
enum class Tri { no, yes, unknown };

inline const char* tri_str(Tri t) {
  return t == Tri::yes ? "yes" : t == Tri::no ? "no" : "unknown";
}

// Tolerance for finite-group membership once values are inexact.
inline constexpr double membership_tolerance = 1e-6;

inline bool same_element(const QPair& x, const QPair& y) {
  if (x.exact() && y.exact()) return x == y;
  return x.near(y, membership_tolerance);
}

inline bool contains_element(const std::vector<QPair>& set, const QPair& g) {
  for (const QPair& s : set)
    if (same_element(s, g)) return true;
  return false;
}

// Closure of a generating set under multiplication.  Finite subgroups of a
// compact group are closed under products alone.
namespace detail {

inline std::vector<QPair> closure_uncached(const std::vector<QPair>& gens, size_t cap) {
  std::vector<QPair> out{QPair()};
  for (const QPair& g : gens)
    if (!contains_element(out, g)) out.push_back(g);
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = 0; j < out.size(); ++j) {
      QPair p = out[i] * out[j];
      if (!contains_element(out, p)) {
        out.push_back(p);
        if (out.size() > cap) fail("finite generating set does not close within " + std::to_string(cap) + " elements");
      }
    }
  return out;
}

}  // namespace detail

// Exact generating sets recur constantly during enumeration, so their
// closures are memoized (keyed by text, shared across threads).
inline std::vector<QPair> closure(const std::vector<QPair>& gens, size_t cap = 4096) {
  bool exact = true;
  std::string key = std::to_string(cap);
  for (const QPair& g : gens) {
    if (!g.exact()) { exact = false; break; }
    key += ";" + g.str();
  }
  if (!exact) return detail::closure_uncached(gens, cap);
  static std::mutex mu;
  static std::map<std::string, std::vector<QPair>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto out = detail::closure_uncached(gens, cap);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, out);
  return out;
}

// SECTION quaternion helpers

inline bool is_real(const Quaternion& q) { return q.x.is_zero() && q.y.is_zero() && q.z.is_zero(); }

// q lies on the one-parameter subgroup through the pure unit x
inline bool on_axis(const Quaternion& q, const Quaternion& x) {
  // cross product of the imaginary parts vanishes
  return (q.y * x.z - q.z * x.y).is_zero() && (q.z * x.x - q.x * x.z).is_zero() &&
         (q.x * x.y - q.y * x.x).is_zero();
}

inline Quaternion qpow(const Quaternion& q, int n) {
  Quaternion base = n < 0 ? q.conj() : q, r;
  for (int k = std::abs(n); k; k >>= 1) {
    if (k & 1) r = r * base;
    if (k > 1) base = base * base;
  }
  return r;
}

inline bool same_quat(const Quaternion& a, const Quaternion& b) {
  if (a.exact() && b.exact()) return a == b;
  return a.near(b, membership_tolerance);
}

// SECTION closed subgroups of S3xS3

enum class Core { trivial, circle, diagonal, left, right, whole };

inline int core_dim(Core c) {
  switch (c) {
    case Core::trivial: return 0;
    case Core::circle: return 1;
    case Core::whole: return 6;
    default: return 3;
  }
}

// K = K0 . F.  The circle is {(e^{x1 p t}, e^{x2 q t})}; the diagonal is
// {(c v c^-1, v)}.
struct Closed {
  Core core = Core::trivial;
  Quaternion x1, x2;
  int p = 0, q = 0;
  Quaternion twist;
  std::vector<QPair> finite{QPair()};
  mutable int components_ = 0;  // cached component_count; reset if finite changes

  int dim() const { return core_dim(core); }
  int rank() const { return core == Core::trivial ? 0 : core == Core::whole ? 2 : 1; }

  bool in_core(const QPair& g) const {
    switch (core) {
      case Core::trivial: return same_element(g, QPair());
      case Core::whole: return true;
      case Core::left: return same_quat(g.b, Quaternion());
      case Core::right: return same_quat(g.a, Quaternion());
      case Core::diagonal: return same_quat(g.a, twist * g.b * twist.conj());
      case Core::circle:
        // with gcd(p,q) = 1, (e^{x1 s}, e^{x2 t}) is on the circle iff
        // q s = p t mod 2pi
        if (!on_axis(g.a, x1) || !on_axis(g.b, x2)) return false;
        {
          // the two sides live on different axes; compare angles by carrying
          // e^{x2 u} over to e^{x1 u}
          const Quaternion u = qpow(g.a, q), v = qpow(g.b, p);
          const Scalar t = v.x * x2.x + v.y * x2.y + v.z * x2.z;
          return same_quat(u, Quaternion(v.w, t * x1.x, t * x1.y, t * x1.z));
        }
    }
    return false;
  }
  bool contains(const QPair& g) const {
    for (const QPair& f : finite)
      if (in_core(f.inv() * g)) return true;
    return false;
  }
  // Lie algebra basis in the coordinates of quaternion.hpp
  std::vector<Vec> algebra() const {
    auto v6 = [] { return Vec(6, Scalar(0)); };
    std::vector<Vec> out;
    switch (core) {
      case Core::trivial: break;
      case Core::circle: {
        Vec v = v6();
        for (int n = 0; n < 3; ++n) {
          v[n] = Scalar(p) * x1[n + 1];
          v[3 + n] = Scalar(q) * x2[n + 1];
        }
        out.push_back(v);
        break;
      }
      case Core::diagonal:
        for (int n = 0; n < 3; ++n) {
          Vec v = v6();
          std::array<Scalar, 3> e{Scalar(0), Scalar(0), Scalar(0)};
          e[n] = Scalar(1);
          auto r = rotate(twist, e);
          for (int m = 0; m < 3; ++m) v[m] = r[m];
          v[3 + n] = Scalar(1);
          out.push_back(v);
        }
        break;
      case Core::left: case Core::right: case Core::whole:
        for (int n = 0; n < 6; ++n) {
          if (core == Core::left && n >= 3) continue;
          if (core == Core::right && n < 3) continue;
          Vec v = v6();
          v[n] = Scalar(1);
          out.push_back(v);
        }
        break;
    }
    return out;
  }
  // |F / (F cap K0)|
  int component_count() const {
    if (components_ > 0) return components_;
    int in = 0;
    for (const QPair& f : finite) in += in_core(f);
    return components_ = int(finite.size()) / in;
  }
  // finite elements of K lying in K0
  std::vector<QPair> finite_in_core() const {
    std::vector<QPair> out;
    for (const QPair& f : finite)
      if (in_core(f)) out.push_back(f);
    return out;
  }
};

inline std::vector<Vec> adjoint_all(const QPair& g, const std::vector<Vec>& vs) {
  std::vector<Vec> out;
  for (const Vec& v : vs) out.push_back(adjoint(g, v));
  return out;
}

// g K0 g^-1 = K0, tested on the Lie algebra (K0 is connected).
inline bool normalizes_core(const QPair& g, const Closed& k) {
  auto a = k.algebra();
  return span_contains_all(a, adjoint_all(g, a));
}

inline Closed conjugate(const Closed& k, const QPair& g) {
  Closed r = k;
  r.x1 = g.a * k.x1 * g.a.conj();
  r.x2 = g.b * k.x2 * g.b.conj();
  r.twist = g.a * k.twist * g.b.conj();
  for (QPair& f : r.finite) f = g * f * g.inv();
  return r;
}

// SECTION Embedding descriptor

inline bool is_s3s3(const LieGroupRef& g) {
  return g.family == Family::Product && g.factors.size() == 2 &&
         g.factors[0].family == Family::S3 && g.factors[1].family == Family::S3;
}

enum class EmbKind {
  trivial, whole, block, diagonal, factor, slope_circle, finite,
  circle_with_weights, extension, product, label,
};

struct Embedding {
  LieGroupRef ambient;
  EmbKind kind = EmbKind::trivial;
  LieGroupRef group;             // abstract isomorphism type
  Quaternion x1, x2;             // slope circle axes
  int p = 0, q = 0;              // slope circle
  Quaternion twist;              // diagonal
  std::string projection;        // diagonal: explicit projection label
  int factor_index = 0;          // factor
  std::vector<QPair> elements;   // finite, closed
  std::string finite_label;      // finite
  int row_begin = 0;             // block: first row
  std::vector<int> weights;      // circle_with_weights
  std::vector<Embedding> parts;  // extension: {base, finite}; product

  bool quaternion() const { return is_s3s3(ambient); }
  int dim() const;
  int rank() const;
  int component_count() const;
  std::string str() const;
};

inline LieGroupRef s3s3() { return parse_group("S3xS3"); }

// SECTION constructors

inline Embedding slope_circle(Axis a, int p, int q) {
  if (std::gcd(p, q) != 1) fail("slope circle needs gcd(|p|,|q|) = 1, got (" + std::to_string(p) + "," + std::to_string(q) + ")");
  Embedding e;
  e.ambient = s3s3();
  e.kind = EmbKind::slope_circle;
  e.group = LieGroupRef::simple(Family::S1);
  e.x1 = e.x2 = Quaternion::unit(a);
  e.p = p;
  e.q = q;
  return e;
}

inline Embedding diagonal_s3() {
  Embedding e;
  e.ambient = s3s3();
  e.kind = EmbKind::diagonal;
  e.group = LieGroupRef::simple(Family::S3);
  return e;
}

inline Embedding factor_s3(int index) {
  Embedding e;
  e.ambient = s3s3();
  e.kind = EmbKind::factor;
  e.group = LieGroupRef::simple(Family::S3);
  e.factor_index = index;
  return e;
}

inline Embedding whole(const LieGroupRef& g) {
  Embedding e;
  e.ambient = g;
  e.kind = EmbKind::whole;
  e.group = g;
  return e;
}

inline Embedding trivial(const LieGroupRef& g) {
  Embedding e;
  e.ambient = g;
  e.kind = EmbKind::trivial;
  e.group = LieGroupRef::finite("1", 1);
  return e;
}

// Finite subgroup of S3xS3 generated by gens; the closure is verified.
inline Embedding finite_group(const std::vector<QPair>& gens, std::string label = "") {
  Embedding e;
  e.ambient = s3s3();
  e.kind = EmbKind::finite;
  e.elements = closure(gens);
  e.finite_label = label;
  e.group = LieGroupRef::finite(label.empty() ? "F" : label, int(e.elements.size()));
  return e;
}

inline Embedding extension(const Embedding& base, const Embedding& part) {
  if (base.ambient.name() != part.ambient.name()) fail("extension parts live in different ambients");
  Embedding e;
  e.ambient = base.ambient;
  e.kind = EmbKind::extension;
  e.group = LieGroupRef::product({base.group, part.group});
  e.parts = {base, part};
  return e;
}

inline Embedding product_of(const LieGroupRef& ambient, std::vector<Embedding> parts) {
  Embedding e;
  e.ambient = ambient;
  e.kind = EmbKind::product;
  std::vector<LieGroupRef> gs;
  for (auto& p : parts) gs.push_back(p.group);
  e.group = LieGroupRef::product(gs);
  e.parts = std::move(parts);
  return e;
}

inline Embedding labeled(const LieGroupRef& ambient, const LieGroupRef& group) {
  Embedding e;
  e.ambient = ambient;
  e.kind = EmbKind::label;
  e.group = group;
  return e;
}

// Block subgroup occupying rows [row_begin, row_begin + n) of a classical
// matrix ambient.
inline Embedding block(const LieGroupRef& ambient, const LieGroupRef& group, int row_begin) {
  Embedding e;
  e.ambient = ambient;
  e.kind = EmbKind::block;
  e.group = group;
  e.row_begin = row_begin;
  return e;
}

inline Embedding circle_with_weights(const LieGroupRef& ambient, std::vector<int> w) {
  Embedding e;
  e.ambient = ambient;
  e.kind = EmbKind::circle_with_weights;
  e.group = LieGroupRef::simple(Family::S1);
  e.weights = std::move(w);
  return e;
}

// SECTION realization in S3xS3

inline Closed realize(const Embedding& e) {
  if (!e.quaternion()) throw LieError("no quaternion realization in " + e.ambient.name());
  Closed k;
  switch (e.kind) {
    case EmbKind::trivial: break;
    case EmbKind::whole: k.core = Core::whole; break;
    case EmbKind::slope_circle:
      k.core = Core::circle;
      k.x1 = e.x1;
      k.x2 = e.x2;
      k.p = e.p;
      k.q = e.q;
      break;
    case EmbKind::diagonal:
      k.core = Core::diagonal;
      k.twist = e.twist;
      break;
    case EmbKind::factor: k.core = e.factor_index == 0 ? Core::left : Core::right; break;
    case EmbKind::finite: k.finite = e.elements; break;
    case EmbKind::extension: {
      k = realize(e.parts[0]);
      Closed f = realize(e.parts[1]);
      if (f.core != Core::trivial) fail("extension by a non-finite part");
      for (const QPair& g : f.finite)
        if (!normalizes_core(g, k)) fail("finite part " + g.str() + " does not normalize " + e.parts[0].str());
      std::vector<QPair> gens = k.finite;
      gens.insert(gens.end(), f.finite.begin(), f.finite.end());
      k.finite = closure(gens);
      k.components_ = 0;
      break;
    }
    default:
      throw LieError("embedding kind has no quaternion realization: " + e.str());
  }
  return k;
}

inline int Embedding::dim() const {
  switch (kind) {
    case EmbKind::trivial: case EmbKind::finite: return 0;
    case EmbKind::slope_circle: case EmbKind::circle_with_weights: return 1;
    case EmbKind::extension: return parts[0].dim();
    case EmbKind::product: {
      int d = 0;
      for (auto& p : parts) d += p.dim();
      return d;
    }
    default: return group.dim();
  }
}

inline int Embedding::rank() const {
  switch (kind) {
    case EmbKind::trivial: case EmbKind::finite: return 0;
    case EmbKind::slope_circle: case EmbKind::circle_with_weights: return 1;
    case EmbKind::extension: return parts[0].rank();
    case EmbKind::product: {
      int r = 0;
      for (auto& p : parts) r += p.rank();
      return r;
    }
    default: return group.rank();
  }
}

inline int Embedding::component_count() const {
  if (quaternion()) return realize(*this).component_count();
  if (kind == EmbKind::extension) {
    // label extensions: the finite part adds its order when the base is connected
    return parts[0].component_count() * std::max(1, parts[1].group.component_count());
  }
  return group.component_count();
}

// SECTION Lie algebras

namespace detail {

// Real coordinates of a block subgroup inside a classical matrix ambient.
inline std::vector<Vec> block_algebra(const Embedding& e) {
  const LieGroupRef& G = e.ambient;
  int m = 0;
  switch (G.family) {
    case Family::SO: case Family::O: m = 1; break;
    case Family::SU: case Family::U: m = 2; break;
    case Family::Sp: m = 4; break;
    default: throw LieError("block embedding needs a classical ambient, got " + G.name());
  }
  MatrixCoords big{G.n, m};
  std::vector<Vec> sub;
  int k = 0;
  const LieGroupRef& H = e.group;
  switch (H.family) {
    case Family::SO: case Family::O:
      if (m != 1) throw LieError("SO block in a non-real ambient");
      sub = skew_hermitian_basis(H.n, 1, false); k = H.n; break;
    case Family::SU:
      if (m != 2) throw LieError("SU block in a non-complex ambient");
      sub = skew_hermitian_basis(H.n, 2, true); k = H.n; break;
    case Family::U:
      if (m != 2) throw LieError("U block in a non-complex ambient");
      sub = skew_hermitian_basis(H.n, 2, false); k = H.n; break;
    case Family::Sp:
      if (m != 4) throw LieError("Sp block in a non-quaternionic ambient");
      sub = skew_hermitian_basis(H.n, 4, false); k = H.n; break;
    default: throw LieError("unsupported block group " + H.name());
  }
  if (e.row_begin + k > G.n) fail("block rows exceed the ambient size");
  MatrixCoords small{k, m};
  std::vector<Vec> out;
  for (const Vec& v : sub) {
    Vec w(big.size(), Scalar(0));
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c)
        for (int u = 0; u < m; ++u)
          w[big.at(e.row_begin + r, e.row_begin + c, u)] = v[small.at(r, c, u)];
    out.push_back(std::move(w));
  }
  return out;
}

inline std::vector<Vec> weight_circle_algebra(const Embedding& e) {
  const LieGroupRef& G = e.ambient;
  if (G.family == Family::SU || G.family == Family::U) {
    if (int(e.weights.size()) != G.n) fail("circle weight vector has the wrong length");
    if (G.family == Family::SU && std::accumulate(e.weights.begin(), e.weights.end(), 0) != 0)
      fail("circle weights in SU(n) must sum to zero");
    MatrixCoords mc{G.n, 2};
    Vec v(mc.size(), Scalar(0));
    for (int r = 0; r < G.n; ++r) v[mc.at(r, r, 1)] = Scalar(e.weights[r]);
    return {v};
  }
  if (G.family == Family::SO) {
    // weights act on consecutive coordinate planes
    if (2 * int(e.weights.size()) > G.n) fail("too many circle weights for SO(n)");
    MatrixCoords mc{G.n, 1};
    Vec v(mc.size(), Scalar(0));
    for (size_t r = 0; r < e.weights.size(); ++r) {
      v[mc.at(2 * r, 2 * r + 1, 0)] = Scalar(e.weights[r]);
      v[mc.at(2 * r + 1, 2 * r, 0)] = Scalar(-e.weights[r]);
    }
    return {v};
  }
  if (G.family == Family::Sp) {
    MatrixCoords mc{G.n, 4};
    if (int(e.weights.size()) != G.n) fail("circle weight vector has the wrong length");
    Vec v(mc.size(), Scalar(0));
    for (int r = 0; r < G.n; ++r) v[mc.at(r, r, 1)] = Scalar(e.weights[r]);
    return {v};
  }
  throw LieError("circle weights need a classical ambient, got " + G.name());
}

}  // namespace detail

// Basis of the Lie algebra of e in ambient coordinates; empty for finite e.
inline std::vector<Vec> algebra_of(const Embedding& e) {
  if (e.quaternion()) return realize(e).algebra();
  if (e.ambient.realization() == Realization::data_only)
    throw LieError("basis unavailable for data-only ambient " + e.ambient.name());
  switch (e.kind) {
    case EmbKind::trivial: case EmbKind::finite: return {};
    case EmbKind::whole: return lie_algebra_basis(e.ambient);
    case EmbKind::block: return detail::block_algebra(e);
    case EmbKind::circle_with_weights: return detail::weight_circle_algebra(e);
    case EmbKind::extension: return algebra_of(e.parts[0]);
    case EmbKind::product: {
      std::vector<Vec> out;
      for (auto& p : e.parts) {
        auto a = algebra_of(p);
        out.insert(out.end(), a.begin(), a.end());
      }
      return out;
    }
    default:
      throw LieError("basis unavailable for label embedding " + e.str());
  }
}

// SECTION conjugation and containment

inline Embedding conjugate(const Embedding& e, const QPair& g) {
  if (!e.quaternion()) throw LieError("conjugation needs the quaternion realization");
  Embedding r = e;
  switch (e.kind) {
    case EmbKind::slope_circle:
      r.x1 = g.a * e.x1 * g.a.conj();
      r.x2 = g.b * e.x2 * g.b.conj();
      break;
    case EmbKind::diagonal: r.twist = g.a * e.twist * g.b.conj(); break;
    case EmbKind::finite: {
      bool moved = false;
      for (QPair& f : r.elements) {
        f = g * f * g.inv();
        moved = moved || !contains_element(e.elements, f);
      }
      // the label names the original set; text forms key the realization memo
      if (moved) r.finite_label.clear();
      break;
    }
    case EmbKind::extension: case EmbKind::product:
      for (Embedding& p : r.parts) p = conjugate(p, g);
      break;
    default: break;
  }
  return r;
}

// f subset e: Lie algebra span plus membership of the finite part.
inline bool contains(const Closed& ke, const Closed& kf) {
  if (!span_contains_all(ke.algebra(), kf.algebra())) return false;
  for (const QPair& g : kf.finite)
    if (!ke.contains(g)) return false;
  return true;
}

inline Tri contains(const Embedding& e, const Embedding& f) {
  if (e.ambient.name() != f.ambient.name()) fail("contains: different ambients");
  if (e.kind == EmbKind::whole || f.kind == EmbKind::trivial) return Tri::yes;
  if (e.quaternion()) return contains(realize(e), realize(f)) ? Tri::yes : Tri::no;
  if (f.dim() > e.dim() || f.rank() > e.rank()) return Tri::no;
  if (e.ambient.realization() == Realization::data_only) return Tri::unknown;
  try {
    auto a = algebra_of(e), b = algebra_of(f);
    if (!span_contains_all(a, b)) return Tri::no;
    // finite components of matrix embeddings carry no elements
    return f.group.component_count() == 1 ? Tri::yes : Tri::unknown;
  } catch (const LieError&) {
    return Tri::unknown;
  }
}

// SECTION text syntax

namespace detail {

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n"), e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// Splits at top-level commas.
inline std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) fail("unbalanced brackets in '" + s + "'");
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

inline bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

// "name(args)" -> args, checking the closing parenthesis
inline std::string call_args(const std::string& s, const std::string& name) {
  if (!starts_with(s, name + "(") || s.back() != ')') fail("expected " + name + "(...) in '" + s + "'");
  return s.substr(name.size() + 1, s.size() - name.size() - 2);
}

inline int to_int(const std::string& s) {
  std::string t = trim(s);
  if (t.empty()) fail("expected an integer");
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(t, &used);
  } catch (const std::exception&) {
    fail("expected an integer, got '" + t + "'");
  }
  if (used != t.size()) fail("expected an integer, got '" + t + "'");
  return v;
}

inline Rational to_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(to_int(s));
  return Rational(to_int(s.substr(0, slash)), to_int(s.substr(slash + 1)));
}

inline Axis to_axis(char c) {
  switch (c) {
    case 'i': return Axis::i;
    case 'j': return Axis::j;
    case 'k': return Axis::k;
    default: fail(std::string("unknown quaternion axis '") + c + "'");
  }
}

// "1", "-1", "i", "-k", "exp(j,1/4)" (meaning e^{j pi/4})
inline Quaternion parse_unit(const std::string& s0) {
  std::string s = trim(s0);
  int sign = 1;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    sign = s[0] == '-' ? -1 : 1;
    s = trim(s.substr(1));
  }
  Quaternion q;
  if (s == "1") {
    q = Quaternion();
  } else if (s.size() == 1) {
    q = Quaternion::unit(to_axis(s[0]));
  } else if (starts_with(s, "exp(")) {
    auto args = split_args(call_args(s, "exp"));
    if (args.size() != 2 || args[0].size() != 1) fail("expected exp(axis,angle) in '" + s0 + "'");
    q = Quaternion::polar(to_axis(args[0][0]), to_rational(args[1]));
  } else {
    fail("cannot parse quaternion '" + s0 + "'");
  }
  return sign < 0 ? -q : q;
}

// "(u,v)"
inline QPair parse_pair(const std::string& s0) {
  std::string s = trim(s0);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') fail("expected a pair (u,v), got '" + s0 + "'");
  auto args = split_args(s.substr(1, s.size() - 2));
  if (args.size() != 2) fail("expected a pair (u,v), got '" + s0 + "'");
  return {parse_unit(args[0]), parse_unit(args[1])};
}

inline std::string quat_text(const Quaternion& q) {
  for (int n = 0; n < 4; ++n) {
    Quaternion u(0, 0, 0, 0);
    u[n] = Scalar(1);
    static const char* names[4] = {"1", "i", "j", "k"};
    if (q == u) return names[n];
    if (q == -u) return std::string("-") + names[n];
  }
  // e^{a pi m/12} on a coordinate axis, in the parseable exp form
  for (int a = 1; a <= 3; ++a)
    for (int m = 1; m < 24; ++m) {
      Rational r(m, 12);
      if (q == Quaternion::polar(Axis(a), r))
        return std::string("exp(") + "?ijk"[a] + "," + r.str() + ")";
    }
  return q.str();
}

inline int axis_of(const Quaternion& x) {
  for (int n = 1; n <= 3; ++n)
    if (x == Quaternion::unit(Axis(n))) return n;
  return 0;
}

}  // namespace detail

inline std::vector<QPair> named_finite(const std::string& s, std::string& label) {
  using detail::starts_with;
  const Quaternion one, i = Quaternion::unit(Axis::i), j = Quaternion::unit(Axis::j);
  if (s == "Q8" || s == "Q") {
    label = "Q8";
    return closure({{i, i}, {j, j}});
  }
  if (s == "Z4+Z2") {
    label = "Z4+Z2";
    return closure({{i, i}, {-one, one}});
  }
  if (s == "Q8+Z2") {
    label = "Q8+Z2";
    return closure({{i, i}, {j, j}, {one, -one}});
  }
  if (starts_with(s, "Z(")) {
    int k = detail::to_int(detail::call_args(s, "Z"));
    if (k < 1) fail("Z(k) needs k >= 1");
    label = "Z" + std::to_string(k);
    Quaternion c = Quaternion::polar(Axis::i, Rational(2, k));
    return closure({{c, c}});
  }
  if (starts_with(s, "gen(")) {
    std::vector<QPair> gens;
    for (auto& a : detail::split_args(detail::call_args(s, "gen"))) gens.push_back(detail::parse_pair(a));
    label = s;
    return closure(gens);
  }
  return {};
}

// Parses the embedding syntax: "1", "G", "C[i](p,q)", "diag", "S3x1",
// "1xS3", "Q8", "Z(k)", "Z4+Z2", "Q8+Z2", "gen((u,v),...)",
// "ext(base,+finite)", "prod(...)", "block(SO(k),rows=a-b)",
// "weights(w1,...)", or any group name as a label.
inline Embedding parse_embedding(const std::string& text, const LieGroupRef& ambient) {
  using detail::starts_with;
  std::string s = detail::trim(text);
  if (s.empty()) fail("empty embedding");
  const bool quat = is_s3s3(ambient);
  if (s == "1") return trivial(ambient);
  if (s == "G" || s == ambient.name()) return whole(ambient);
  if (starts_with(s, "ext(")) {
    auto args = detail::split_args(detail::call_args(s, "ext"));
    if (args.size() != 2) fail("ext needs two arguments: '" + s + "'");
    std::string f = args[1];
    if (!f.empty() && f[0] == '+') f = detail::trim(f.substr(1));
    return extension(parse_embedding(args[0], ambient), parse_embedding(f, ambient));
  }
  if (starts_with(s, "prod(")) {
    std::vector<Embedding> parts;
    for (auto& a : detail::split_args(detail::call_args(s, "prod"))) parts.push_back(parse_embedding(a, ambient));
    return product_of(ambient, std::move(parts));
  }
  if (starts_with(s, "block(")) {
    auto args = detail::split_args(detail::call_args(s, "block"));
    if (args.empty() || args.size() > 2) fail("block needs (group[,rows=a-b])");
    LieGroupRef g = parse_group(args[0]);
    int begin = 0;
    if (args.size() == 2) {
      if (!starts_with(args[1], "rows=")) fail("block: expected rows=a-b");
      std::string r = args[1].substr(5);
      auto dash = r.find('-');
      begin = detail::to_int(r.substr(0, dash)) - 1;
      if (dash != std::string::npos && detail::to_int(r.substr(dash + 1)) - begin != g.n)
        fail("block rows do not match the block size");
    }
    return block(ambient, g, begin);
  }
  if (starts_with(s, "weights(")) {
    std::vector<int> w;
    for (auto& a : detail::split_args(detail::call_args(s, "weights"))) w.push_back(detail::to_int(a));
    return circle_with_weights(ambient, w);
  }
  if (quat) {
    if (starts_with(s, "C[")) {
      auto close = s.find(']');
      if (close == std::string::npos) fail("bad slope circle '" + s + "'");
      auto axes = detail::split_args(s.substr(2, close - 2));
      auto args = detail::split_args(detail::call_args(s.substr(close + 1).insert(0, "C"), "C"));
      if (args.size() != 2 || axes.empty() || axes.size() > 2) fail("bad slope circle '" + s + "'");
      int p = detail::to_int(args[0]), q = detail::to_int(args[1]);
      if (std::gcd(p, q) != 1) fail("slope circle needs coprime slopes: '" + s + "'");
      Embedding e = slope_circle(Axis::i, p, q);
      e.x1 = detail::parse_unit(axes[0]);
      e.x2 = detail::parse_unit(axes.size() == 2 ? axes[1] : axes[0]);
      if (!is_real(e.x1 * e.x1) || !is_real(e.x2 * e.x2) || e.x1.w != Scalar(0) || e.x2.w != Scalar(0))
        fail("slope circle axes must be pure imaginary units: '" + s + "'");
      return e;
    }
    if (s == "diag" || starts_with(s, "diag[") || starts_with(s, "diag:")) {
      Embedding e = diagonal_s3();
      std::string rest = s.substr(4);
      if (starts_with(rest, "[")) {
        auto close = rest.find(']');
        if (close == std::string::npos) fail("bad diag twist '" + s + "'");
        e.twist = detail::parse_unit(rest.substr(1, close - 1));
        rest = rest.substr(close + 1);
      }
      if (starts_with(rest, ":")) e.projection = rest.substr(1);
      else if (!rest.empty()) fail("bad diagonal '" + s + "'");
      return e;
    }
    if (s == "S3x1") return factor_s3(0);
    if (s == "1xS3") return factor_s3(1);
    std::string label;
    auto els = named_finite(s, label);
    if (!els.empty()) {
      Embedding e = finite_group({}, label);
      e.elements = els;
      e.group = LieGroupRef::finite(label, int(els.size()));
      return e;
    }
    fail("unknown S3xS3 embedding '" + s + "'");
  }
  return labeled(ambient, parse_group(s));
}

inline std::string Embedding::str() const {
  switch (kind) {
    case EmbKind::trivial: return "1";
    case EmbKind::whole: return "G";
    case EmbKind::slope_circle: {
      std::string pq = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
      int a1 = detail::axis_of(x1), a2 = detail::axis_of(x2);
      if (a1 && a1 == a2) return std::string("C[") + "?ijk"[a1] + "]" + pq;
      return "C[" + detail::quat_text(x1) + "," + detail::quat_text(x2) + "]" + pq;
    }
    case EmbKind::diagonal: {
      std::string s = "diag";
      if (!twist.is_one()) s += "[" + detail::quat_text(twist) + "]";
      if (!projection.empty()) s += ":" + projection;
      return s;
    }
    case EmbKind::factor: return factor_index == 0 ? "S3x1" : "1xS3";
    case EmbKind::finite: {
      if (!finite_label.empty()) return finite_label == "Q8" || finite_label == "Z4+Z2" || finite_label == "Q8+Z2" || detail::starts_with(finite_label, "gen(")
                                            ? finite_label
                                            : "Z(" + finite_label.substr(1) + ")";
      std::string s = "gen(";
      for (size_t n = 1; n < elements.size(); ++n)
        s += (n > 1 ? "," : "") + std::string("(") + detail::quat_text(elements[n].a) + "," + detail::quat_text(elements[n].b) + ")";
      return s + ")";
    }
    case EmbKind::extension: return "ext(" + parts[0].str() + ",+" + parts[1].str() + ")";
    case EmbKind::product: {
      std::string s = "prod(";
      for (size_t n = 0; n < parts.size(); ++n) s += (n ? "," : "") + parts[n].str();
      return s + ")";
    }
    case EmbKind::block:
      return "block(" + group.name() + ",rows=" + std::to_string(row_begin + 1) + "-" + std::to_string(row_begin + group.n) + ")";
    case EmbKind::circle_with_weights: {
      std::string s = "weights(";
      for (size_t n = 0; n < weights.size(); ++n) s += (n ? "," : "") + std::to_string(weights[n]);
      return s + ")";
    }
    case EmbKind::label: return group.name();
  }
  return "?";
}

}  // namespace cohomone
