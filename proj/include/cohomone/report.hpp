// Report emission: structured (JSON) and text forms, the parse side of the
// structured form, and the mapping from verdicts to exit codes.
#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "classify.hpp"

namespace cohomone {

// SECTION exit codes

enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_parse = 2, exit_checksum = 3 };

// Fails decide; inconclusive only counts under --strict.
inline int exit_code(const std::vector<Verdict>& vs, bool strict) {
  for (const Verdict& v : vs)
    if (v.status == Status::fail || (strict && v.status == Status::inconclusive)) return exit_fail;
  return exit_pass;
}

inline int exit_code(const CheckReport& r, bool strict) { return exit_code(r.verdicts, strict); }

enum class Format { text, structured };

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "json" || s == "structured") return Format::structured;
  fail("unknown format '" + s + "' (text, json)");
}

// SECTION structured form

inline void to_json(json& j, const CheckReport& r) {
  j = json{{"diagram", r.diagram}, {"weyl", r.weyl}, {"verdicts", r.verdicts}};
}

inline void from_json(const json& j, CheckReport& r) {
  r.diagram = j.at("diagram");
  r.weyl = j.at("weyl");
  r.verdicts = j.at("verdicts").get<std::vector<Verdict>>();
}

inline std::string emit_structured(const CheckReport& r) { return json(r).dump(1) + "\n"; }

inline CheckReport parse_report(const std::string& s) { return json::parse(s).get<CheckReport>(); }

// SECTION text form

namespace detail {

inline std::string pad(std::string s, size_t n) {
  if (s.size() < n) s.append(n - s.size(), ' ');
  return s;
}

inline std::string verdict_line(const Verdict& v) {
  std::string s = "  " + pad(status_str(v.status), 13) + pad(v.check, 22) + v.evidence.dump();
  if (!v.note.empty()) s += "\n" + std::string(37, ' ') + "note: " + v.note;
  s += "\n" + std::string(37, ' ') + "anchor: " + v.anchor;
  return s + "\n";
}

}  // namespace detail

inline int applicable_count(const CheckReport& r) {
  return int(r.verdicts.size()) - r.count(Status::not_applicable);
}

// Applicable checks one per line; not-applicable ones are only counted.
inline std::string emit_text(const CheckReport& r) {
  std::ostringstream os;
  const json& d = r.diagram;
  if (d.contains("name")) os << d.at("name").get<std::string>() << "\n";
  os << "  G = " << d.at("G").get<std::string>() << ", H = " << d.at("H").get<std::string>()
     << "\n  K- = " << d.at("Kminus").get<std::string>() << ", K+ = " << d.at("Kplus").get<std::string>()
     << "\n  l = (" << d.at("l").at(0) << "," << d.at("l").at(1) << "), dim M = " << d.at("dim_M")
     << ", W = " << r.weyl.at("W").get<std::string>() << "\n";
  for (const Verdict& v : r.verdicts)
    if (v.status != Status::not_applicable) os << detail::verdict_line(v);
  os << "  " << applicable_count(r) << " checks: " << r.count(Status::pass) << " pass, " << r.count(Status::fail)
     << " fail, " << r.count(Status::inconclusive) << " inconclusive; " << r.count(Status::not_applicable)
     << " not applicable\n";
  if (const Verdict* f = r.first_fail()) os << "  first fail: " << f->check << "\n";
  return os.str();
}

inline std::string emit(const CheckReport& r, Format f) { return f == Format::text ? emit_text(r) : emit_structured(r); }

// SECTION enumeration and table reports

inline std::string enumeration_text(const EnumerationResult& r) {
  std::ostringstream os;
  os << "max slope " << r.max_slope << ": " << r.candidates << " candidates, " << r.survivors.size()
     << " survivors after canonicalization\n";
  for (const EnumEntry& e : r.survivors) {
    std::string label = e.label ? e.label->str() : "unlabeled";
    if (e.label)
      for (const std::string& a : e.label->aliases()) label += " = " + a;
    os << "  " << detail::pad(label, 22) << detail::pad(e.status, 10) << "l=(" << e.diagram.l_minus << ","
       << e.diagram.l_plus << ")  " << e.signature;
    if (e.status == "flagged") os << "  [excluded (external: parallel Jacobi fields)]";
    os << "\n";
  }
  os << "rejections:\n";
  for (auto& [check, n] : r.rejection_counts) {
    std::string why = detail::rejection_reason(check);
    os << "  " << detail::pad(check, 22) << detail::pad(std::to_string(n), 6) << (why == check ? "" : why) << "\n";
  }
  if (r.unlabeled) os << r.unlabeled << " survivors match no Table 5 normal form\n";
  return os.str();
}

inline std::string table_row_text(const TableRowReport& t) {
  std::ostringstream os;
  os << (t.passed() ? "PASS " : "FAIL ") << t.row_id << "\n";
  os << "  l expected (" << t.expected_l_minus << "," << t.expected_l_plus << ")" << (t.l_ok ? " ok" : " MISMATCH");
  os << ", W expected";
  for (size_t n = 0; n < t.expected_W.size(); ++n) os << (n ? "|" : " ") << t.expected_W[n];
  os << " computed " << (t.W ? std::to_string(*t.W) : std::string("none")) << (t.W_ok ? " ok" : " MISMATCH") << "\n";
  if (!t.flag.empty()) os << "  flag: " << t.flag << "\n";
  std::string body = emit_text(t.report);
  // drop the header already printed above
  auto pos = body.find("  G = ");
  os << (pos == std::string::npos ? body : body.substr(pos));
  return os.str();
}

inline std::string spot_text(const Verdict& v) {
  return detail::pad(v.evidence.value("contradiction", false) ? "confirmed" : "NOT confirmed", 15) +
         detail::pad(v.check.substr(5), 26) + v.note + "   (stated: " + v.evidence.value("stated", "") + ")\n";
}

}  // namespace cohomone
