// Compact Lie groups by name: dimension, rank, center, components,
// Lie algebra type and (for classical groups) a matrix Lie algebra basis.
#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact.hpp"
#include "linalg.hpp"

namespace cohomone {

[[noreturn]] inline void fail(const std::string& msg) { throw std::runtime_error(msg); }

struct LieError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Family {
  SO, O, SU, U, Sp, Spin, Torus, S1, S3, G2, F4, E6, E7, E8,
  Finite,      // finite group given by a label (Z2, Z4+Z2, Q8, ...)
  SUprod,      // S(U(a)U(b)...)
  SOprod,      // S(O(a)O(b)...)
  Product,
  Quotient,    // product modulo a finite central subgroup (same algebra)
};

enum class Realization { matrix, quaternion, data_only };

struct LieGroupRef {
  Family family = Family::Product;
  int n = 0;                          // parameter, e.g. 7 for SO(7)
  std::vector<int> blocks;            // block sizes for SUprod / SOprod
  std::vector<LieGroupRef> factors;   // Product / Quotient
  bool diagonal = false;              // printed with a Delta prefix
  std::string finite_label;           // Finite
  int finite_order = 1;               // Finite
  int quotient_order = 1;             // Quotient

  static LieGroupRef simple(Family f, int n = 0) {
    LieGroupRef g;
    g.family = f;
    g.n = n;
    return g;
  }
  static LieGroupRef product(std::vector<LieGroupRef> fs) {
    if (fs.size() == 1) return fs[0];
    LieGroupRef g;
    g.family = Family::Product;
    g.factors = std::move(fs);
    return g;
  }
  static LieGroupRef finite(std::string label, int order) {
    LieGroupRef g;
    g.family = Family::Finite;
    g.finite_label = std::move(label);
    g.finite_order = order;
    return g;
  }

  bool is_finite() const { return dim() == 0; }
  int dim() const;
  int rank() const;
  // 0 encodes an infinite center
  int center_order() const;
  int component_count() const;
  Realization realization() const;
  std::string name() const;
};

// SECTION dimension and rank

inline int LieGroupRef::dim() const {
  switch (family) {
    case Family::SO: case Family::O: case Family::Spin: return n * (n - 1) / 2;
    case Family::SU: return n * n - 1;
    case Family::U: return n * n;
    case Family::Sp: return n * (2 * n + 1);
    case Family::Torus: return n;
    case Family::S1: return 1;
    case Family::S3: return 3;
    case Family::G2: return 14;
    case Family::F4: return 52;
    case Family::E6: return 78;
    case Family::E7: return 133;
    case Family::E8: return 248;
    case Family::Finite: return 0;
    case Family::SUprod: {
      int d = -1;
      for (int b : blocks) d += b * b;
      return d;
    }
    case Family::SOprod: {
      int d = 0;
      for (int b : blocks) d += b * (b - 1) / 2;
      return d;
    }
    case Family::Product: case Family::Quotient: {
      int d = 0;
      for (auto& f : factors) d += f.dim();
      return d;
    }
  }
  return 0;
}

inline int LieGroupRef::rank() const {
  switch (family) {
    case Family::SO: case Family::O: case Family::Spin: return n / 2;
    case Family::SU: return n - 1;
    case Family::U: return n;
    case Family::Sp: return n;
    case Family::Torus: return n;
    case Family::S1: case Family::S3: return 1;
    case Family::G2: return 2;
    case Family::F4: return 4;
    case Family::E6: return 6;
    case Family::E7: return 7;
    case Family::E8: return 8;
    case Family::Finite: return 0;
    case Family::SUprod: {
      int r = -1;
      for (int b : blocks) r += b;
      return r;
    }
    case Family::SOprod: {
      int r = 0;
      for (int b : blocks) r += b / 2;
      return r;
    }
    case Family::Product: case Family::Quotient: {
      int r = 0;
      for (auto& f : factors) r += f.rank();
      return r;
    }
  }
  return 0;
}

inline int LieGroupRef::center_order() const {
  switch (family) {
    case Family::SO: return n % 2 == 0 ? 2 : 1;
    case Family::O: return 2;
    case Family::SU: return n;
    case Family::Sp: case Family::S3: return 2;
    case Family::Spin: return n % 2 == 1 ? 2 : 4;
    case Family::G2: case Family::F4: case Family::E8: return 1;
    case Family::E6: return 3;
    case Family::E7: return 2;
    case Family::Finite: return finite_order;  // upper bound, labels only
    case Family::U: case Family::Torus: case Family::S1: case Family::SUprod: return 0;
    case Family::SOprod: return 2;
    case Family::Product: case Family::Quotient: {
      long c = 1;
      for (auto& f : factors) {
        int z = f.center_order();
        if (z == 0) return 0;
        c *= z;
      }
      return int(c / quotient_order);
    }
  }
  return 1;
}

inline int LieGroupRef::component_count() const {
  switch (family) {
    case Family::O: return 2;
    case Family::SOprod: {
      int nontrivial = 0;
      for (int b : blocks) nontrivial += b >= 1;
      return nontrivial >= 2 ? 2 : 1;
    }
    case Family::Finite: return finite_order;
    case Family::Product: {
      int c = 1;
      for (auto& f : factors) c *= f.component_count();
      return c;
    }
    default: return 1;
  }
}

inline Realization LieGroupRef::realization() const {
  switch (family) {
    case Family::S3: return Realization::quaternion;
    case Family::G2: case Family::F4: case Family::E6: case Family::E7: case Family::E8:
      return Realization::data_only;
    case Family::Spin: return n >= 7 ? Realization::data_only : Realization::matrix;
    case Family::Product: case Family::Quotient: {
      bool all_quat = !factors.empty();
      for (auto& f : factors) {
        Realization r = f.realization();
        if (r == Realization::data_only) return r;
        all_quat = all_quat && r == Realization::quaternion;
      }
      return all_quat ? Realization::quaternion : Realization::matrix;
    }
    default: return Realization::matrix;
  }
}

inline std::string LieGroupRef::name() const {
  std::string d = diagonal ? "Delta" : "";
  auto par = [&](const char* s) { return d + s + ("(" + std::to_string(n) + ")"); };
  switch (family) {
    case Family::SO: return par("SO");
    case Family::O: return par("O");
    case Family::SU: return par("SU");
    case Family::U: return par("U");
    case Family::Sp: return par("Sp");
    case Family::Spin: return par("Spin");
    case Family::Torus: return d + "T" + std::to_string(n);
    case Family::S1: return d + "S1";
    case Family::S3: return d + "S3";
    case Family::G2: return d + "G2";
    case Family::F4: return d + "F4";
    case Family::E6: return d + "E6";
    case Family::E7: return d + "E7";
    case Family::E8: return d + "E8";
    case Family::Finite: return finite_label;
    case Family::SUprod: case Family::SOprod: {
      std::string s = d + "S(";
      for (int b : blocks)
        s += (family == Family::SUprod ? "U(" : "O(") + std::to_string(b) + ")";
      return s + ")";
    }
    case Family::Product: case Family::Quotient: {
      std::string s;
      for (size_t i = 0; i < factors.size(); ++i) s += (i ? "x" : "") + factors[i].name();
      if (family == Family::Quotient) s += "/Z" + std::to_string(quotient_order);
      return s;
    }
  }
  return "?";
}

inline std::pair<int, int> group_dim_rank(const LieGroupRef& g) { return {g.dim(), g.rank()}; }

// SECTION parsing

namespace detail {

struct NameParser {
  std::string s;
  size_t pos = 0;

  [[noreturn]] void error(const std::string& what) const {
    throw LieError("cannot parse group '" + s + "': " + what);
  }
  void skip_separators() {
    while (pos < s.size()) {
      char c = s[pos];
      if (c == ' ' || c == 'x' || c == '.' || c == '*') {
        ++pos;
        continue;
      }
      if (s.compare(pos, 2, "\xc2\xb7") == 0) {  // middle dot
        pos += 2;
        continue;
      }
      break;
    }
  }
  bool eat(const std::string& t) {
    if (s.compare(pos, t.size(), t) == 0) {
      pos += t.size();
      return true;
    }
    return false;
  }
  int number() {
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) error("expected a number at position " + std::to_string(start));
    return std::stoi(s.substr(start, pos - start));
  }
  int paren_number() {
    if (!eat("(")) error("expected '('");
    int v = number();
    if (!eat(")")) error("expected ')'");
    return v;
  }

  LieGroupRef atom() {
    bool delta = eat("Delta") || eat("\xce\x94");
    LieGroupRef g = atom_body();
    g.diagonal = delta;
    return g;
  }

  LieGroupRef atom_body() {
    using F = Family;
    if (eat("Spin")) return LieGroupRef::simple(F::Spin, paren_number());
    if (eat("SO")) return LieGroupRef::simple(F::SO, paren_number());
    if (eat("SU")) return LieGroupRef::simple(F::SU, paren_number());
    if (eat("Sp")) return LieGroupRef::simple(F::Sp, paren_number());
    if (eat("S(")) {
      LieGroupRef g;
      char kind = 0;
      while (!eat(")")) {
        char c = pos < s.size() ? s[pos] : 0;
        if (c != 'U' && c != 'O') error("S(...) holds only U(n) or O(n) blocks");
        if (kind && kind != c) error("mixed blocks inside S(...)");
        kind = c;
        ++pos;
        g.blocks.push_back(paren_number());
      }
      g.family = kind == 'U' ? F::SUprod : F::SOprod;
      return g;
    }
    if (eat("S1") || eat("S^1")) return LieGroupRef::simple(F::S1, 1);
    if (eat("S3") || eat("S^3")) return LieGroupRef::simple(F::S3, 3);
    if (eat("U")) return LieGroupRef::simple(F::U, paren_number());
    if (eat("O")) return LieGroupRef::simple(F::O, paren_number());
    if (eat("T")) {
      eat("^");
      return LieGroupRef::simple(F::Torus, number());
    }
    if (eat("G2")) return LieGroupRef::simple(F::G2);
    if (eat("F4")) return LieGroupRef::simple(F::F4);
    if (eat("E6")) return LieGroupRef::simple(F::E6);
    if (eat("E7")) return LieGroupRef::simple(F::E7);
    if (eat("E8")) return LieGroupRef::simple(F::E8);
    if (eat("Q8") || eat("Q")) return LieGroupRef::finite("Q8", 8);
    if (eat("Z")) {
      // Z2, Z(4), and direct sums such as Z4+Z2
      std::string label;
      int order = 1;
      for (;;) {
        int k = pos < s.size() && s[pos] == '(' ? paren_number() : number();
        label += (label.empty() ? "Z" : "+Z") + std::to_string(k);
        order *= k;
        if (!(pos + 1 < s.size() && s[pos] == '+' && s[pos + 1] == 'Z')) break;
        pos += 2;
      }
      return LieGroupRef::finite(label, order);
    }
    if (eat("1")) return LieGroupRef::finite("1", 1);
    error("unknown group name at position " + std::to_string(pos));
  }

  LieGroupRef parse() {
    std::vector<LieGroupRef> fs;
    skip_separators();
    while (pos < s.size()) {
      if (s[pos] == '/') {
        ++pos;
        if (!eat("Z")) error("quotients are written /Zk");
        LieGroupRef q = LieGroupRef::product(fs);
        LieGroupRef g;
        g.family = Family::Quotient;
        g.factors = q.family == Family::Product ? q.factors : std::vector<LieGroupRef>{q};
        g.quotient_order = number();
        return g;
      }
      fs.push_back(atom());
      if (eat("^")) {
        // Sp(1)^2 and similar powers
        int k = number();
        if (k < 1) error("power must be positive");
        for (int r = 1; r < k; ++r) fs.push_back(fs.back());
      }
      skip_separators();
    }
    if (fs.empty()) error("empty name");
    return LieGroupRef::product(std::move(fs));
  }
};

}  // namespace detail

inline LieGroupRef parse_group(const std::string& name) {
  detail::NameParser p{name};
  return p.parse();
}

// SECTION Lie algebra type

// Isomorphism class of the Lie algebra: simple ideals (Cartan labels such
// as "A1", "B2", "G2") plus the dimension of the center.
struct AlgebraType {
  std::vector<std::string> simple;
  int abelian = 0;

  int dim() const;
  bool operator==(const AlgebraType& o) const {
    return simple == o.simple && abelian == o.abelian;
  }
  std::string str() const {
    std::string s;
    for (auto& x : simple) s += (s.empty() ? "" : "+") + x;
    if (abelian) s += (s.empty() ? "" : "+") + std::string("u1^") + std::to_string(abelian);
    return s.empty() ? "0" : s;
  }
};

namespace detail {

inline int cartan_dim(const std::string& t) {
  char c = t[0];
  int r = std::stoi(t.substr(1));
  switch (c) {
    case 'A': return r * (r + 2);
    case 'B': case 'C': return r * (2 * r + 1);
    case 'D': return r * (2 * r - 1);
    case 'G': return 14;
    case 'F': return 52;
    case 'E': return r == 6 ? 78 : r == 7 ? 133 : 248;
  }
  return 0;
}

// so(n) with the low-rank coincidences folded in
inline void add_so(AlgebraType& t, int n) {
  if (n <= 1) return;
  if (n == 2) { t.abelian += 1; return; }
  if (n == 3) { t.simple.push_back("A1"); return; }
  if (n == 4) { t.simple.push_back("A1"); t.simple.push_back("A1"); return; }
  if (n == 5) { t.simple.push_back("B2"); return; }
  if (n == 6) { t.simple.push_back("A3"); return; }
  if (n % 2) t.simple.push_back("B" + std::to_string(n / 2));
  else t.simple.push_back("D" + std::to_string(n / 2));
}
inline void add_su(AlgebraType& t, int n) {
  if (n >= 2) t.simple.push_back("A" + std::to_string(n - 1));
}
inline void add_sp(AlgebraType& t, int n) {
  if (n == 1) t.simple.push_back("A1");
  else if (n == 2) t.simple.push_back("B2");
  else if (n >= 3) t.simple.push_back("C" + std::to_string(n));
}

}  // namespace detail

inline int AlgebraType::dim() const {
  int d = abelian;
  for (auto& s : simple) d += detail::cartan_dim(s);
  return d;
}

inline AlgebraType algebra_type(const LieGroupRef& g) {
  AlgebraType t;
  std::function<void(const LieGroupRef&)> walk = [&](const LieGroupRef& x) {
    switch (x.family) {
      case Family::SO: case Family::O: case Family::Spin: detail::add_so(t, x.n); break;
      case Family::SU: detail::add_su(t, x.n); break;
      case Family::U: detail::add_su(t, x.n); t.abelian += 1; break;
      case Family::Sp: detail::add_sp(t, x.n); break;
      case Family::Torus: t.abelian += x.n; break;
      case Family::S1: t.abelian += 1; break;
      case Family::S3: t.simple.push_back("A1"); break;
      case Family::G2: t.simple.push_back("G2"); break;
      case Family::F4: t.simple.push_back("F4"); break;
      case Family::E6: t.simple.push_back("E6"); break;
      case Family::E7: t.simple.push_back("E7"); break;
      case Family::E8: t.simple.push_back("E8"); break;
      case Family::Finite: break;
      case Family::SUprod:
        for (int b : x.blocks) detail::add_su(t, b);
        t.abelian += int(x.blocks.size()) - 1;
        break;
      case Family::SOprod:
        for (int b : x.blocks) detail::add_so(t, b);
        break;
      case Family::Product: case Family::Quotient:
        for (auto& f : x.factors) walk(f);
        break;
    }
  };
  walk(g);
  std::sort(t.simple.begin(), t.simple.end());
  return t;
}

// SECTION matrix Lie algebra bases

namespace detail {

// Real coordinates of an n x n matrix over a division algebra of real
// dimension m (1 real, 2 complex, 4 quaternion): entry (r,c), component u.
struct MatrixCoords {
  int n, m;
  int size() const { return n * n * m; }
  int at(int r, int c, int u) const { return (r * n + c) * m + u; }
};

// Quaternion component products for q E_rc - conj(q) E_cr.
inline std::vector<Vec> skew_hermitian_basis(int n, int m, bool traceless) {
  MatrixCoords mc{n, m};
  std::vector<Vec> out;
  auto zero = [&] { return Vec(mc.size(), Scalar(0)); };
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c)
      for (int u = 0; u < m; ++u) {
        Vec v = zero();
        v[mc.at(r, c, u)] = Scalar(1);
        // conj flips the imaginary parts, the minus sign flips everything
        v[mc.at(c, r, u)] = Scalar(u == 0 ? -1 : 1);
        out.push_back(v);
      }
  for (int r = 0; r < n; ++r)
    for (int u = 1; u < m; ++u) {
      if (traceless && m == 2) continue;  // handled below
      Vec v = zero();
      v[mc.at(r, r, u)] = Scalar(1);
      out.push_back(v);
    }
  if (traceless && m == 2)
    for (int r = 0; r + 1 < n; ++r) {
      Vec v = zero();
      v[mc.at(r, r, 1)] = Scalar(1);
      v[mc.at(r + 1, r + 1, 1)] = Scalar(-1);
      out.push_back(v);
    }
  return out;
}

}  // namespace detail

// Basis of the Lie algebra in real matrix (or imaginary quaternion)
// coordinates.  Products use block-diagonal coordinates.
inline std::vector<Vec> lie_algebra_basis(const LieGroupRef& g) {
  if (g.realization() == Realization::data_only)
    throw LieError("basis unavailable for data-only group " + g.name());
  switch (g.family) {
    case Family::SO: case Family::O: case Family::Spin:
      return detail::skew_hermitian_basis(g.n, 1, false);
    case Family::SU: return detail::skew_hermitian_basis(g.n, 2, true);
    case Family::U: return detail::skew_hermitian_basis(g.n, 2, false);
    case Family::Sp: return detail::skew_hermitian_basis(g.n, 4, false);
    case Family::S3: {
      std::vector<Vec> out(3, Vec(3, Scalar(0)));
      for (int i = 0; i < 3; ++i) out[i][i] = Scalar(1);
      return out;
    }
    case Family::S1: case Family::Torus: {
      int k = g.family == Family::S1 ? 1 : g.n;
      std::vector<Vec> out(k, Vec(k, Scalar(0)));
      for (int i = 0; i < k; ++i) out[i][i] = Scalar(1);
      return out;
    }
    case Family::Finite: return {};
    case Family::Product: case Family::Quotient: {
      std::vector<std::vector<Vec>> parts;
      size_t total = 0;
      for (auto& f : g.factors) {
        parts.push_back(lie_algebra_basis(f));
        total += parts.back().empty() ? 0 : parts.back()[0].size();
      }
      std::vector<Vec> out;
      size_t offset = 0;
      for (auto& p : parts) {
        for (auto& v : p) {
          Vec w(total, Scalar(0));
          std::copy(v.begin(), v.end(), w.begin() + offset);
          out.push_back(std::move(w));
        }
        if (!p.empty()) offset += p[0].size();
      }
      return out;
    }
    default:
      throw LieError("no matrix basis for " + g.name());
  }
}

}  // namespace cohomone
