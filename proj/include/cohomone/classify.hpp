// Exhaustive S3xS3 enumeration under the obstruction pipeline, the
// Brieskorn grid, table verification and arithmetic spot checks.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "data.hpp"
#include "obstructions.hpp"

namespace cohomone {

// SECTION family labels

struct FamilyLabel {
  std::string name;         // S7_linear, B7, W7_1, W7_2, E_p, P_k, Q_k, R_excluded_external
  std::vector<int> params;

  std::string str() const {
    if (name == "E_p") return "E_" + std::to_string(params.at(0));
    if (name == "P_k") return "P_" + std::to_string(params.at(0));
    if (name == "Q_k") return "Q_" + std::to_string(params.at(0));
    return name;
  }
  // Other names of the same diagram.
  std::vector<std::string> aliases() const {
    if (name == "S7_linear") return {"P_1"};
    if (name == "E_p" && params.at(0) == 1) return {"W7_1"};
    if (name == "Q_k" && params.at(0) == 1) return {"W7_2"};
    return {};
  }
  bool operator==(const FamilyLabel&) const = default;
};

inline void to_json(json& j, const FamilyLabel& f) { j = json{{"name", f.name}, {"params", f.params}}; }
inline void from_json(const json& j, FamilyLabel& f) {
  j.at("name").get_to(f.name);
  j.at("params").get_to(f.params);
}

namespace detail {

inline std::string ep_H(int p) { return p % 2 ? "gen((-1,1))" : "gen((1,-1))"; }

inline GroupDiagram family_diagram(const FamilyLabel& f) {
  auto S = [](int v) { return std::to_string(v); };
  const std::string g = "S3xS3";
  if (f.name == "S7_linear") return build_diagram(g, "Q8", "ext(C[i](1,1),+Q8)", "ext(C[j](1,-3),+Q8)", "S7");
  if (f.name == "B7") return build_diagram(g, "Q8", "ext(C[i](3,-1),+Q8)", "ext(C[j](1,-3),+Q8)", "B7");
  if (f.name == "R_excluded_external")
    return build_diagram(g, "Z4+Z2", "ext(C[i](3,1),+Z4+Z2)", "ext(C[j](1,2),+Z4+Z2)", "R");
  const int k = f.params.at(0);
  if (f.name == "E_p")
    return build_diagram(g, ep_H(k), "ext(diag,+" + ep_H(k) + ")", "C[i](" + S(k) + "," + S(k + 1) + ")", f.str());
  if (f.name == "P_k")
    return build_diagram(g, "Q8", "ext(C[i](1,1),+Q8)", "ext(C[j](" + S(k) + "," + S(-k - 2) + "),+Q8)", f.str());
  if (f.name == "Q_k")
    return build_diagram(g, "Z4+Z2", "ext(C[i](1,1),+Z4+Z2)", "ext(C[j](" + S(k) + "," + S(k + 1) + "),+Z4+Z2)", f.str());
  fail("no diagram for family " + f.name);
}

}  // namespace detail

// Largest |slope| among the circle cores.
inline int max_slope_of(const GroupDiagram& d) {
  int m = 0;
  for (const Closed* k : {&d.cKm, &d.cKp})
    if (k->core == Core::circle) m = std::max({m, std::abs(k->p), std::abs(k->q)});
  return m;
}

// Table 5 normal forms whose slopes stay within the bound.
inline std::vector<FamilyLabel> families_within(int max_slope) {
  std::vector<FamilyLabel> out{{"S7_linear", {}}};
  if (max_slope >= 3) out.push_back({"B7", {}});
  for (int p = 0; p + 1 <= max_slope; ++p) out.push_back({"E_p", {p}});
  for (int k = 3; k + 2 <= max_slope; k += 2) out.push_back({"P_k", {k}});
  for (int k = 1; k + 1 <= max_slope; ++k) out.push_back({"Q_k", {k}});
  if (max_slope >= 3) out.push_back({"R_excluded_external", {}});
  return out;
}

// Canonical signatures of the Table 5 families, for labeling survivors.
inline std::map<std::string, FamilyLabel> family_signatures(int max_slope) {
  std::map<std::string, FamilyLabel> out;
  for (const FamilyLabel& f : families_within(max_slope))
    out.emplace(diagram_signature(canonicalize(detail::family_diagram(f)).diagram), f);
  return out;
}

// SECTION enumeration

struct EnumEntry {
  GroupDiagram diagram;
  std::string signature;
  std::optional<FamilyLabel> label;
  std::string status;   // survivor, flagged, rejected
  std::string reason;   // first failing check for rejections
  std::optional<Verdict> failed;
};

struct EnumerationResult {
  int max_slope = 0;
  int candidates = 0;
  std::vector<EnumEntry> survivors;              // canonical, deduplicated
  std::map<std::string, int> rejection_counts;   // per failing check
  int unlabeled = 0;
};

namespace detail {

inline std::string rejection_reason(const std::string& check) {
  if (check == "simply_connected") return "not simply connected";
  if (check == "linear_primitivity" || check == "group_primitivity") return "not primitive";
  if (check == "invalid") return "not a diagram";
  return check;
}

struct Candidate {
  std::string H, Km, Kp;
};

// Circle slopes (p, q) with gcd 1, up to the overall sign.
inline std::vector<std::pair<int, int>> primitive_slopes(int m) {
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p <= m; ++p)
    for (int q = -m; q <= m; ++q) {
      if (p == 0 && q <= 0) continue;
      if (std::gcd(p, std::abs(q)) != 1) continue;
      out.push_back({p, q});
    }
  return out;
}

inline std::string circle_text(char axis, std::pair<int, int> s, const std::string& h) {
  std::string c = std::string("C[") + axis + "](" + std::to_string(s.first) + "," + std::to_string(s.second) + ")";
  return h == "1" ? c : "ext(" + c + ",+" + h + ")";
}

// Fixed candidate list for H; axes are reduced by the normalizer of H
// (central H: one axis; Q: K- on i; Z4+Z2: the i axis is distinguished).
inline std::vector<Candidate> candidates(int m) {
  struct HType {
    std::string h;
    std::string km_axes, kp_axes;
  };
  const std::vector<HType> hs = {
      {"1", "i", "i"},           {"Z(2)", "i", "i"}, {"gen((1,-1))", "i", "i"}, {"gen((-1,1))", "i", "i"},
      {"Z4+Z2", "ij", "ijk"},    {"Q8", "i", "ij"},  {"Q8+Z2", "i", "ij"},
  };
  std::vector<Candidate> out;
  auto slopes = primitive_slopes(m);
  for (const HType& t : hs) {
    std::vector<std::string> km{t.h == "1" ? "diag" : "ext(diag,+" + t.h + ")"};
    for (char a : t.km_axes)
      for (auto s : slopes) km.push_back(circle_text(a, s, t.h));
    for (const std::string& k : km)
      for (char b : t.kp_axes)
        for (auto s : slopes) out.push_back({t.h, k, circle_text(b, s, t.h)});
  }
  return out;
}

struct Outcome {
  std::optional<GroupDiagram> diagram;
  std::string failed_check;  // empty: survivor
  std::optional<Verdict> verdict;
};

// Cheap checks first; the first failure is the reason.
inline Outcome run_pipeline(const Candidate& c, const WeylConfig& cfg) {
  Outcome o;
  try {
    o.diagram = build_diagram("S3xS3", c.H, c.Km, c.Kp);
  } catch (const std::exception& e) {
    o.failed_check = "invalid";
    o.verdict = Verdict{"invalid", Status::fail, json::object(), anchor("diagram"), e.what()};
    return o;
  }
  const GroupDiagram& d = *o.diagram;
  auto stop = [&](Verdict v) {
    if (v.status == Status::fail) {
      o.failed_check = v.check;
      o.verdict = std::move(v);
      return true;
    }
    return false;
  };
  if (stop(simply_connected_verdict(d))) {
    o.failed_check = "simply_connected";
    return o;
  }
  if (stop(check_rank_lemma(d)) || stop(check_codim2_case(d)) || stop(check_ineffective_kernels(d)) ||
      stop(check_totally_geodesic_bound(d, -1)) || stop(check_totally_geodesic_bound(d, 1)) ||
      stop(check_partial_frankel(d)) || stop(check_min_slope(d)))
    return o;
  WeylData w = weyl_group(d, cfg);
  if (stop(check_lower_weyl_bound(d, w)) || stop(check_upper_weyl_bound(d, w)) || stop(check_core_weyl(d, w)) ||
      stop(check_linear_primitivity(d, w)) || stop(check_group_primitivity(d)))
    return o;
  return o;
}

}  // namespace detail

// All candidates for H in {1, central Z2, Z4+Z2, Q, Q+Z2}, K- in {Delta S3 H,
// C(p,q) H}, K+ in {C(p,q) H}, |p|, |q| <= max_slope.  Survivors are
// canonicalized, deduplicated and labeled by their Table 5 normal form;
// R is kept with its external exclusion flag.
inline EnumerationResult enumerate_s3s3(int max_slope, int workers = 1, const WeylConfig& cfg = {}) {
  if (max_slope < 1) fail("max_slope must be positive");
  EnumerationResult res;
  res.max_slope = max_slope;
  auto cands = detail::candidates(max_slope);
  res.candidates = int(cands.size());
  (void)detail::octa();
  std::vector<detail::Outcome> outs(cands.size());
  workers = std::max(1, workers);
  auto run = [&](size_t begin, size_t end) {
    for (size_t n = begin; n < end; ++n) outs[n] = detail::run_pipeline(cands[n], cfg);
  };
  if (workers == 1) {
    run(0, cands.size());
  } else {
    std::vector<std::thread> pool;
    const size_t chunk = (cands.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      size_t b = std::min(cands.size(), w * chunk), e = std::min(cands.size(), b + chunk);
      pool.emplace_back(run, b, e);
    }
    for (auto& t : pool) t.join();
  }
  auto sigs = family_signatures(max_slope);
  std::map<std::string, EnumEntry> seen;
  for (auto& o : outs) {
    if (!o.failed_check.empty()) {
      ++res.rejection_counts[o.failed_check];
      continue;
    }
    Canonical c = canonicalize(*o.diagram);
    EnumEntry e;
    e.signature = diagram_signature(c.diagram);
    if (seen.count(e.signature)) continue;
    e.diagram = c.diagram;
    if (auto it = sigs.find(e.signature); it != sigs.end()) e.label = it->second;
    e.status = e.label && e.label->name == "R_excluded_external" ? "flagged" : "survivor";
    if (!e.label) ++res.unlabeled;
    seen.emplace(e.signature, std::move(e));
  }
  // order: Table 5 family order, then unlabeled by signature
  auto fams = families_within(max_slope);
  auto rank_of = [&](const EnumEntry& e) {
    if (!e.label) return int(fams.size());
    return int(std::find(fams.begin(), fams.end(), *e.label) - fams.begin());
  };
  for (auto& [s, e] : seen) res.survivors.push_back(std::move(e));
  std::stable_sort(res.survivors.begin(), res.survivors.end(),
                   [&](const EnumEntry& a, const EnumEntry& b) { return rank_of(a) < rank_of(b); });
  return res;
}

// Survivors with all slopes at most the bound.
inline std::vector<std::string> survivor_signatures(const EnumerationResult& r, int bound) {
  std::vector<std::string> out;
  for (auto& e : r.survivors)
    if (max_slope_of(e.diagram) <= bound) out.push_back(e.signature);
  std::sort(out.begin(), out.end());
  return out;
}

inline json enumeration_json(const EnumerationResult& r) {
  json rows = json::array();
  for (auto& e : r.survivors) {
    json j{{"signature", e.signature}, {"status", e.status},
           {"label", e.label ? e.label->str() : std::string("unlabeled")}, {"l", {e.diagram.l_minus, e.diagram.l_plus}}};
    if (e.label && !e.label->aliases().empty()) j["aliases"] = e.label->aliases();
    if (e.status == "flagged") j["note"] = "excluded (external: parallel Jacobi fields)";
    rows.push_back(j);
  }
  json rej = json::object();
  for (auto& [k, v] : r.rejection_counts) rej[detail::rejection_reason(k) == k ? k : k + " (" + detail::rejection_reason(k) + ")"] = v;
  return {{"max_slope", r.max_slope}, {"candidates", r.candidates}, {"survivors", rows}, {"rejections", rej}};
}

// Golden comparison only uses labels and signatures.
inline json enumeration_golden(const EnumerationResult& r) {
  json rows = json::array();
  for (auto& e : r.survivors)
    rows.push_back({{"label", e.label ? e.label->str() : std::string("unlabeled")}, {"signature", e.signature}, {"status", e.status}});
  return {{"max_slope", r.max_slope}, {"survivors", rows}};
}

// SECTION Brieskorn varieties

struct BrieskornCell {
  int n = 0, d = 0;
  bool excluded = false;
  Verdict verdict;
};

// M^{2n-1}_d: G = SO(2)xSO(n), H = Z2xSO(n-2), K- = SO(2).SO(n-2) with
// SO(2)x1 cap K- = Z_d central and outside H, K+ = O(n-1).
inline GroupDiagram brieskorn_diagram(int n, int d) {
  auto S = [](int v) { return std::to_string(v); };
  DiagramOptions opt;
  opt.l_minus = 1;
  opt.l_plus = n - 2;
  opt.weyl_order = 4;
  GroupDiagram g = build_diagram("SO(2)xSO(" + S(n) + ")", "Z2xSO(" + S(n - 2) + ")", "SO(2)xSO(" + S(n - 2) + ")",
                                 "O(" + S(n - 1) + ")", "M^" + S(2 * n - 1) + "_" + S(d), opt);
  if (d >= 2) g.declared_tg_minus = "Z" + S(d) + " = SO(2)x1 cap K- is central and meets H trivially";
  return g;
}

inline BrieskornCell brieskorn_cell(int n, int d) {
  GroupDiagram g = brieskorn_diagram(n, d);
  BrieskornCell c{n, d, false, check_totally_geodesic_bound(g, -1)};
  c.excluded = c.verdict.status == Status::fail;
  return c;
}

// Odd n in [3, n_max], odd d in [1, d_max].
inline std::vector<BrieskornCell> brieskorn_grid(int n_max, int d_max) {
  std::vector<BrieskornCell> out;
  for (int n = 3; n <= n_max; n += 2)
    for (int d = 1; d <= d_max; d += 2) out.push_back(brieskorn_cell(n, d));
  return out;
}

// SECTION table rows

struct TableRow {
  std::string table;  // "Table3"
  std::string id;
  json data;
  std::optional<int> param;
};

inline std::vector<std::string> table_files() { return {"table3.json", "table4.json", "table5.json"}; }

// "Table5/Qk" with an optional "?k=2" instance.
inline TableRow find_table_row(const std::string& row_id) {
  std::string id = row_id, query;
  if (auto q = id.find('?'); q != std::string::npos) {
    query = id.substr(q + 1);
    id = id.substr(0, q);
  }
  auto slash = id.find('/');
  if (slash == std::string::npos) fail("row id must look like TableN/name: " + row_id);
  const std::string table = id.substr(0, slash), name = id.substr(slash + 1);
  std::string file = table;
  std::transform(file.begin(), file.end(), file.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  file += ".json";
  if (std::find(table_files().begin(), table_files().end(), file) == table_files().end()) fail("unknown table in " + row_id);
  for (const json& r : cached_json(file).at("rows")) {
    if (r.at("id").get<std::string>() != name) continue;
    TableRow row{table, name, r, std::nullopt};
    if (r.contains("param")) row.param = r.at("instance").get<int>();
    if (!query.empty()) {
      auto eq = query.find('=');
      if (!r.contains("param") || eq == std::string::npos || query.substr(0, eq) != r.at("param").get<std::string>())
        fail("bad parameter filter '" + query + "' for " + id);
      row.param = std::stoi(query.substr(eq + 1));
      if (r.contains("min") && *row.param < r.at("min").get<int>()) fail("parameter below the family range in " + row_id);
      if (r.value("odd", false) && *row.param % 2 == 0) fail("family needs an odd parameter in " + row_id);
    }
    return row;
  }
  fail("unknown row " + row_id);
}

inline std::vector<std::string> all_table_row_ids() {
  std::vector<std::string> out;
  for (const std::string& f : table_files()) {
    const json& t = cached_json(f);
    std::string table = t.at("table").get<std::string>();
    std::erase(table, ' ');
    for (const json& r : t.at("rows")) out.push_back(table + "/" + r.at("id").get<std::string>());
  }
  return out;
}

struct TableRowReport {
  std::string row_id;
  std::optional<int> param;
  CheckReport report;
  int expected_l_minus = 0, expected_l_plus = 0;
  std::vector<int> expected_W;  // any of these orders
  std::optional<int> W;
  bool l_ok = false, W_ok = false;
  std::string flag;

  bool passed() const { return l_ok && W_ok && !report.any_fail(); }
};

inline GroupDiagram table_row_diagram(const TableRow& row) {
  const json& r = row.data;
  const char var = r.contains("param") ? r.at("param").get<std::string>().at(0) : 'k';
  const int v = row.param.value_or(0);
  auto field = [&](const std::string& key) {
    std::string s = r.at(key).get<std::string>();
    if (!row.param) return s;
    if (auto h = s.find("{H}"); h != std::string::npos) s.replace(h, 3, r.at(v % 2 ? "H_odd" : "H_even").get<std::string>());
    return expand_template(s, var, v);
  };
  std::string H = r.contains("H") ? field("H") : r.at(v % 2 ? "H_odd" : "H_even").get<std::string>();
  DiagramOptions opt;
  const bool exact = field("G") == "S3xS3";
  auto W = r.at("W").get<std::string>();
  if (!exact) {
    opt.l_minus = row.param ? eval_affine(r.at("l").at(0).get<std::string>(), var, v) : std::stoi(r.at("l").at(0).get<std::string>());
    opt.l_plus = row.param ? eval_affine(r.at("l").at(1).get<std::string>(), var, v) : std::stoi(r.at("l").at(1).get<std::string>());
    opt.weyl_order = parse_weyl_order(W.substr(0, W.find('|')));
  }
  std::string name = row.table + "/" + row.id + (row.param ? "?" + std::string(1, var) + "=" + std::to_string(v) : "");
  GroupDiagram d = build_diagram(field("G"), H, field("Kminus"), field("Kplus"), name, opt);
  if (r.contains("tg_minus")) d.declared_tg_minus = r.at("tg_minus").get<std::string>();
  if (r.contains("tg_plus")) d.declared_tg_plus = r.at("tg_plus").get<std::string>();
  return d;
}

// Builds the row, recomputes l+- and W, and runs every check.
inline TableRowReport verify_table_row(const std::string& row_id, const WeylConfig& cfg = {}) {
  TableRow row = find_table_row(row_id);
  const json& r = row.data;
  TableRowReport out;
  out.row_id = row_id;
  out.param = row.param;
  GroupDiagram d = table_row_diagram(row);
  const char var = r.contains("param") ? r.at("param").get<std::string>().at(0) : 'k';
  const int v = row.param.value_or(0);
  out.expected_l_minus = eval_affine(r.at("l").at(0).get<std::string>(), var, v);
  out.expected_l_plus = eval_affine(r.at("l").at(1).get<std::string>(), var, v);
  out.l_ok = d.l_minus == out.expected_l_minus && d.l_plus == out.expected_l_plus;
  std::string W = r.at("W").get<std::string>();
  for (size_t b = 0; b <= W.size();) {
    size_t e = W.find('|', b);
    if (e == std::string::npos) e = W.size();
    out.expected_W.push_back(parse_weyl_order(W.substr(b, e - b)));
    b = e + 1;
  }
  out.report = verify_diagram(d, cfg);
  WeylData w = weyl_group(d, cfg);
  out.W = w.order;
  out.W_ok = w.order && std::count(out.expected_W.begin(), out.expected_W.end(), *w.order);
  out.flag = r.value("flag", "");
  return out;
}

inline json table_row_json(const TableRowReport& t) {
  json verdicts = json::array();
  for (auto& v : t.report.verdicts) verdicts.push_back(v);
  json j{{"row", t.row_id}, {"passed", t.passed()}, {"l_expected", {t.expected_l_minus, t.expected_l_plus}},
         {"l_ok", t.l_ok}, {"W_expected", t.expected_W}, {"W_ok", t.W_ok}, {"diagram", t.report.diagram},
         {"weyl", t.report.weyl}, {"verdicts", verdicts}};
  if (t.W) j["W"] = *t.W;
  if (!t.flag.empty()) j["flag"] = t.flag;
  return j;
}

// SECTION spot checks

struct SpotCase {
  std::string id, kind, stated, side;
  int dim_G = 0, dim_H = 0, l_minus = 0, l_plus = 0, W = 0;
};

inline std::vector<SpotCase> spot_cases() {
  std::vector<SpotCase> out;
  for (const json& c : cached_json("spot_cases.json").at("cases")) {
    SpotCase s;
    s.id = c.at("id");
    s.kind = c.at("kind");
    s.stated = c.at("stated");
    s.side = c.value("side", "-");
    s.dim_G = c.at("dim_G");
    s.dim_H = c.at("dim_H");
    s.l_minus = c.at("l").at(0);
    s.l_plus = c.at("l").at(1);
    s.W = c.value("W", 0);
    out.push_back(s);
  }
  return out;
}

// Re-derives the inequality; status fail means the configuration is
// excluded, i.e. the contradiction is confirmed.
inline Verdict spot_check_case(const std::string& case_id) {
  for (const SpotCase& s : spot_cases()) {
    if (s.id != case_id) continue;
    const int dim_GH = s.dim_G - s.dim_H;
    Verdict v;
    if (s.kind == "lower_weyl") {
      v = check_lower_weyl_bound(s.W, dim_GH, s.l_minus, s.l_plus);
      v.evidence["lhs"] = dim_GH;
      v.evidence["rhs"] = s.W * (s.l_minus + s.l_plus) / 2;
    } else if (s.kind == "totally_geodesic") {
      const bool minus = s.side == "-";
      const int ls = minus ? s.l_minus : s.l_plus, lo = minus ? s.l_plus : s.l_minus;
      v = check_totally_geodesic_bound(dim_GH, ls, lo, TGCertificate{"stated", "totally geodesic B" + s.side});
      v.evidence["lhs"] = dim_GH;
      v.evidence["rhs"] = 2 * ls + lo;
    } else {
      fail("unknown spot check kind " + s.kind);
    }
    v.check = "spot:" + s.id;
    v.evidence["dim_G"] = s.dim_G;
    v.evidence["dim_H"] = s.dim_H;
    v.evidence["stated"] = s.stated;
    v.evidence["contradiction"] = v.status == Status::fail;
    v.note = std::to_string(v.evidence["lhs"].get<int>()) + " <= " + std::to_string(v.evidence["rhs"].get<int>()) +
             (v.status == Status::fail ? " is false: contradiction confirmed" : " holds: no contradiction");
    return v;
  }
  fail("unknown spot check case " + case_id);
}

}  // namespace cohomone
