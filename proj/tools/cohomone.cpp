// cohomone: verify diagrams and tables, enumerate S3xS3 diagrams, confirm
// the transcribed contradictions, inspect a diagram.
//
// Exit codes: 0 all applicable checks pass, 1 a check fails, 2 parse error
// or bad input, 3 data checksum mismatch.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "cohomone/report.hpp"

using namespace cohomone;

namespace {

struct RunConfig {
  std::vector<std::string> inputs;
  int max_slope = 3;
  std::string format = "text";
  int workers = 1;
  std::vector<std::string> rows;
  bool strict = false;
  std::string golden;
  int order_cap = 24;
};

// Runs jobs on a pool; results land in their own slot so output order never
// depends on scheduling.
void run_parallel(size_t n, int workers, const std::function<void(size_t)>& job) {
  workers = std::max(1, std::min<int>(workers, int(n)));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) job(i);
    });
  for (auto& t : pool) t.join();
}

struct Output {
  std::string out, err;
  int code = exit_pass;
};

int flush(const std::vector<Output>& outs) {
  int code = exit_pass;
  for (const Output& o : outs) {
    std::cout << o.out;
    std::cerr << o.err;
    code = std::max(code, o.code);
  }
  std::cout.flush();
  return code;
}

WeylConfig weyl_config(const RunConfig& c) {
  WeylConfig w;
  // the cap only widens the search; it never loosens a verdict
  w.order_cap = std::max(w.order_cap, c.order_cap);
  return w;
}

// SECTION verify

Output verify_one(const std::string& path, const RunConfig& c, Format f) {
  Output o;
  try {
    GroupDiagram d = load_diagram_file(path);
    CheckReport r = verify_diagram(d, weyl_config(c));
    o.out = f == Format::text ? path + ": " + emit_text(r) : emit_structured(r);
    o.code = exit_code(r, c.strict);
  } catch (const DiagramParseError& e) {
    o.err = std::string("parse error: ") + e.what() + "\n";
    o.code = exit_parse;
  } catch (const DiagramError& e) {
    Verdict v{"diagram", Status::fail, {{"valid", false}}, anchor("diagram"), e.what()};
    o.out = f == Format::text ? path + ": fail diagram: " + std::string(e.what()) + "\n" : json(v).dump(1) + "\n";
    o.code = exit_fail;
  }
  return o;
}

int cmd_verify(const RunConfig& c) {
  const Format f = parse_format(c.format);
  std::vector<Output> outs(c.inputs.size());
  run_parallel(c.inputs.size(), c.workers, [&](size_t i) { outs[i] = verify_one(c.inputs[i], c, f); });
  return flush(outs);
}

// SECTION enumerate

int cmd_enumerate(const RunConfig& c) {
  const Format f = parse_format(c.format);
  EnumerationResult r = enumerate_s3s3(c.max_slope, c.workers, weyl_config(c));
  std::cout << (f == Format::text ? enumeration_text(r) : enumeration_json(r).dump(1) + "\n");
  int code = r.unlabeled ? exit_fail : exit_pass;
  if (!c.golden.empty()) {
    json golden;
    try {
      golden = json::parse(read_file(c.golden));
    } catch (const std::exception& e) {
      std::cerr << "cannot read golden file: " << e.what() << "\n";
      return exit_parse;
    }
    const bool same = golden == enumeration_golden(r);
    std::cerr << "golden " << c.golden << ": " << (same ? "match" : "MISMATCH") << "\n";
    if (!same) code = exit_fail;
  }
  return code;
}

// SECTION tables

int cmd_tables(const RunConfig& c) {
  const Format f = parse_format(c.format);
  std::vector<std::string> ids = c.rows.empty() ? all_table_row_ids() : c.rows;
  for (const std::string& id : ids) {
    try {
      (void)find_table_row(id);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return exit_parse;
    }
  }
  std::vector<Output> outs(ids.size());
  run_parallel(ids.size(), c.workers, [&](size_t i) {
    TableRowReport t = verify_table_row(ids[i], weyl_config(c));
    outs[i].out = f == Format::text ? table_row_text(t) : table_row_json(t).dump(1) + "\n";
    outs[i].code = t.l_ok && t.W_ok ? exit_code(t.report, c.strict) : exit_fail;
  });
  int code = flush(outs);
  if (f == Format::text) {
    int passed = 0;
    for (auto& o : outs) passed += o.code == exit_pass;
    std::cout << passed << "/" << outs.size() << " rows verified\n";
  }
  return code;
}

// SECTION spotcheck

int cmd_spotcheck(const RunConfig& c) {
  const Format f = parse_format(c.format);
  std::vector<std::string> ids = c.inputs;
  if (ids.empty())
    for (const SpotCase& s : spot_cases()) ids.push_back(s.id);
  json all = json::array();
  int code = exit_pass, confirmed = 0;
  for (const std::string& id : ids) {
    Verdict v;
    try {
      v = spot_check_case(id);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return exit_parse;
    }
    const bool ok = v.evidence.value("contradiction", false);
    confirmed += ok;
    if (!ok) code = exit_fail;
    if (f == Format::text) std::cout << spot_text(v);
    else all.push_back(v);
  }
  if (f == Format::text) std::cout << confirmed << "/" << ids.size() << " contradictions confirmed\n";
  else std::cout << all.dump(1) << "\n";
  return code;
}

// SECTION inspect

int cmd_inspect(const RunConfig& c) {
  const Format f = parse_format(c.format);
  if (c.inputs.size() != 1) {
    std::cerr << "inspect takes one diagram file or table row id\n";
    return exit_parse;
  }
  const std::string& target = c.inputs[0];
  GroupDiagram d;
  try {
    d = std::filesystem::exists(target) ? load_diagram_file(target) : table_row_diagram(find_table_row(target));
  } catch (const DiagramError& e) {
    std::cerr << "not a diagram: " << e.what() << "\n";
    return exit_fail;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return exit_parse;
  }
  WeylData w = weyl_group(d, weyl_config(c));
  Connectivity conn = connectivity_degrees(d);
  Canonical can = canonicalize(d);
  json j = diagram_json(d);
  j["spheres"] = {{"minus", d.how_minus}, {"plus", d.how_plus}};
  j["connectivity"] = {{"B_minus", conn.B_minus}, {"B_plus", conn.B_plus}, {"principal", conn.principal}};
  j["weyl"] = weyl_json(w);
  j["canonical"] = can.normalized ? json(diagram_signature(can.diagram)) : json(nullptr);
  if (!can.normalized) j["canonical_note"] = can.reason;
  if (f == Format::structured) {
    std::cout << j.dump(1) << "\n";
    return exit_pass;
  }
  std::cout << (d.name.empty() ? target : d.name) << "\n"
            << "  G = " << d.G.name() << " (dim " << d.dim_G() << "), H = " << d.H.str() << " (dim " << d.H.dim() << ")\n"
            << "  K- = " << d.K_minus.str() << ": S^" << d.l_minus << ", " << d.how_minus << "\n"
            << "  K+ = " << d.K_plus.str() << ": S^" << d.l_plus << ", " << d.how_plus << "\n"
            << "  dim M = " << d.dim_M << ", coranks (H,K-,K+) = (" << d.corank_H << "," << d.corank_minus << ","
            << d.corank_plus << ")\n"
            << "  B- -> M is " << conn.B_minus << "-connected, B+ -> M is " << conn.B_plus << "-connected, G/H -> M is "
            << conn.principal << "-connected\n"
            << "  W = " << w.label() << (w.note.empty() ? "" : " (" + w.note + ")") << "\n";
  if (w.w_minus) std::cout << "  w- = " << detail::pair_text(*w.w_minus) << " [" << w.how_minus << "]\n";
  if (w.w_plus) std::cout << "  w+ = " << detail::pair_text(*w.w_plus) << " [" << w.how_plus << "]\n";
  std::cout << "  normal form: " << (can.normalized ? diagram_signature(can.diagram) : "n/a (" + can.reason + ")") << "\n";
  return exit_pass;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json", "structured"}));
  sub->add_option("--workers", c.workers, "worker threads")->check(CLI::Range(1, 256));
  sub->add_flag("--strict", c.strict, "treat inconclusive verdicts as failures");
  sub->add_option("--weyl-cap", c.order_cap, "|W| search cap (can only be raised)")->check(CLI::Range(24, 4096));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cohomone: obstruction checks for cohomogeneity one diagrams"};
  app.require_subcommand(1);
  RunConfig c;

  auto* verify = app.add_subcommand("verify", "check diagram files");
  verify->add_option("files", c.inputs, "diagram files")->required();
  add_common(verify, c);

  auto* enumerate = app.add_subcommand("enumerate", "enumerate S3xS3 diagrams up to a slope bound");
  enumerate->add_option("--max-slope", c.max_slope, "largest |p|, |q|")->check(CLI::Range(2, 64));
  enumerate->add_option("--golden", c.golden, "compare the survivor set with a golden file");
  add_common(enumerate, c);

  auto* tables = app.add_subcommand("tables", "verify the shipped classification tables");
  tables->add_option("--row", c.rows, "single row, e.g. Table5/Qk?k=2 (repeatable)");
  add_common(tables, c);

  auto* spot = app.add_subcommand("spotcheck", "confirm the transcribed contradictions");
  spot->add_option("cases", c.inputs, "case ids (default: all)");
  add_common(spot, c);

  auto* inspect = app.add_subcommand("inspect", "derived data of one diagram");
  inspect->add_option("target", c.inputs, "diagram file or table row id")->required();
  add_common(inspect, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_pass : exit_parse;
  }
  try {
    // every subcommand reads the shipped tables; refuse drifted data up front
    verify_all_checksums(data_dir());
    if (*verify) return cmd_verify(c);
    if (*enumerate) return cmd_enumerate(c);
    if (*tables) return cmd_tables(c);
    if (*spot) return cmd_spotcheck(c);
    if (*inspect) return cmd_inspect(c);
  } catch (const ChecksumError& e) {
    std::cerr << e.what() << "\n";
    return exit_checksum;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_parse;
  }
  return exit_parse;
}
