#include "whilep/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "whilep/cert.hpp"
#include "whilep/dce.hpp"
#include "whilep/harness.hpp"
#include "whilep/io.hpp"

namespace whilep {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::set<VarName> live_vars(const std::vector<std::string>& names) {
  std::set<VarName> out;
  for (const auto& n : names) {
    if (n.empty()) continue;
    if (!is_identifier(n)) throw UsageError("--live expects variable names, got '" + n + "'");
    out.insert(n);
  }
  return out;
}

// Prints statement heads with their annotations, one construct per line;
// sequences are flattened.
template <class Node, class Annotate>
void print_tree(const Node& n, int depth, std::ostream& out, const Annotate& annotate) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (std::holds_alternative<Seq>(n.stmt.node)) {
    for (const auto& c : n.children) print_tree(c, depth, out, annotate);
    return;
  }
  if (const auto* i = std::get_if<If>(&n.stmt.node)) {
    out << pad << "if " << pretty(i->cond) << "\n";
    annotate(n, pad + "  ");
    out << pad << "then\n";
    print_tree(n.children[0], depth + 1, out, annotate);
    out << pad << "else\n";
    print_tree(n.children[1], depth + 1, out, annotate);
    return;
  }
  if (const auto* w = std::get_if<While>(&n.stmt.node)) {
    out << pad << "while " << pretty(w->cond) << "\n";
    annotate(n, pad + "  ");
    out << pad << "do\n";
    print_tree(n.children[0], depth + 1, out, annotate);
    return;
  }
  out << pad << pretty(n.stmt) << "\n";
  annotate(n, pad + "  ");
}

void pts_records(const PtsNode& n, const std::string& path, Json& out) {
  out.push_back(Json{{"path", path}, {"stmt", pretty(n.stmt)}, {"pre", pts_to_json(n.pre)}, {"post", pts_to_json(n.post)}});
  for (std::size_t i = 0; i < n.children.size(); ++i) pts_records(n.children[i], path + "." + std::to_string(i), out);
}

Stmt load_program(const std::string& path) { return parse(read_file(path)); }

WidenConfig widen_config(std::int64_t k) {
  if (k < 1) throw UsageError("--widen must be at least 1");
  WidenConfig cfg;
  cfg.k = k;
  return cfg;
}

int cmd_run(const std::string& file, std::int64_t fuel, const std::vector<std::string>& inits, std::ostream& out) {
  if (fuel < 1) throw UsageError("--fuel must be at least 1");
  Stmt s = load_program(file);
  RegularState st{zero_stack(program_vars(s)), {}};
  for (const auto& item : inits) {
    auto eq = item.find('=');
    std::string name = item.substr(0, eq);
    if (eq == std::string::npos || !is_identifier(name)) throw UsageError("--init expects x=<integer>, got '" + item + "'");
    std::string digits = item.substr(eq + 1);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      throw UsageError("--init expects x=<integer>, got '" + item + "'");
    }
    st.stack[name] = value;
  }
  ExecOutcome r = exec(s, st, fuel);
  if (std::holds_alternative<Aborted>(r)) {
    out << "abort\n";
    return kExitFailure;
  }
  if (std::holds_alternative<OutOfFuel>(r)) {
    out << "out of fuel\n";
    return kExitFailure;
  }
  const auto& final = std::get<Final>(r).state;
  for (const auto& [x, v] : final.stack) out << x << " = " << to_string(v) << "\n";
  for (const auto& [a, v] : final.heap) out << to_string(a) << " = " << to_string(v) << "\n";
  return kExitOk;
}

int cmd_analyze_pts(const std::string& file, std::int64_t k, const std::string& out_path, std::ostream& out) {
  WidenConfig cfg = widen_config(k);
  Stmt s = load_program(file);
  PtsNode root = annotate(s, bottom(program_vars(s)), cfg);
  print_tree(root, 0, out, [&](const PtsNode& n, const std::string& pad) {
    out << pad << "pre  " << pts_to_json(n.pre).dump() << "\n";
    out << pad << "post " << pts_to_json(n.post).dump() << "\n";
  });
  if (!out_path.empty()) {
    Json records = Json::array();
    pts_records(root, "root", records);
    write_file(out_path, records.dump(1) + "\n");
  }
  return kExitOk;
}

int cmd_analyze_live(const std::string& file, const std::vector<std::string>& live, std::int64_t k,
                     std::ostream& out) {
  WidenConfig cfg = widen_config(k);
  Stmt s = load_program(file);
  PtsNode pts = annotate(s, bottom(program_vars(s)), cfg);
  LiveResult r = live_pre(pts, to_live_set(live_vars(live)), cfg, LiveMode::Analysis);
  print_tree(r.tree, 0, out, [&](const LiveNode& n, const std::string& pad) {
    out << pad << "live before " << live_to_json(n.live_pre).dump() << "\n";
    out << pad << "live after  " << live_to_json(n.live_post).dump() << "\n";
  });
  return kExitOk;
}

int cmd_optimize(const std::string& file, const std::vector<std::string>& live, std::int64_t k,
                 const std::string& emit, const std::string& cert_path, bool strip, std::ostream& out,
                 std::ostream& err) {
  WidenConfig cfg = widen_config(k);
  Stmt s = load_program(file);
  OptResult r = optimize(s, live_vars(live), cfg);
  Stmt emitted = r.optimized;
  if (strip) {
    emitted = strip_dead_cons(r.derivation);
    err << "warning: --strip-dead-cons changes heap allocation; the emitted program is not covered by the "
           "certificate\n";
  }
  std::string text = pretty(emitted) + "\n";
  out << text;
  if (!emit.empty()) write_file(emit, text);
  if (!cert_path.empty()) write_file(cert_path, serialize(make_certificate(r, cfg)));
  return kExitOk;
}

int cmd_check_cert(const std::string& file, const std::string& cert_path, std::ostream& out) {
  Stmt s = load_program(file);
  std::string text = read_file(cert_path);
  Certificate c;
  try {
    c = deserialize(text);
  } catch (const FormatError& e) {
    out << "Reject: malformed certificate at " << e.what() << "\n";
    return kExitReject;
  }
  CheckResult r = check_certificate(c, &s);
  if (r) {
    out << "Accept\n";
    return kExitOk;
  }
  out << "Reject at " << r.path << ": " << r.reason << "\n";
  return kExitReject;
}

int cmd_soundness(std::uint64_t trials, std::uint64_t seed, std::ostream& out) {
  SuiteConfig cfg;
  cfg.gen.seed = seed;
  SoundnessReport report = run_soundness_suite(trials, cfg);
  out << report_to_json(report).dump(2) << "\n";
  return report.ok() ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analyses and dead-code elimination for the pointer while-language", "whilep"};
  app.require_subcommand(1);

  std::string file, cert_path, out_path, emit;
  std::int64_t fuel = kDefaultFuel, widen = 3;
  std::vector<std::string> inits, live;
  bool strip = false;
  std::uint64_t trials = 1000, seed = 1;

  auto* run = app.add_subcommand("run", "Execute a program from the all-zero stack");
  run->add_option("file", file, "Program file")->required();
  run->add_option("--fuel", fuel, "Step budget");
  run->add_option("--init", inits, "Initial values, e.g. x=3,y=0")->delimiter(',');

  auto* analyze = app.add_subcommand("analyze", "Print per-statement analysis results");
  analyze->require_subcommand(1);
  auto* apts = analyze->add_subcommand("pts", "Points-to types");
  apts->add_option("file", file, "Program file")->required();
  apts->add_option("--widen", widen, "Instance cap K");
  apts->add_option("--out", out_path, "Write the annotations as JSON");
  auto* alive = analyze->add_subcommand("live", "Live sets");
  alive->add_option("file", file, "Program file")->required();
  alive->add_option("--live", live, "Variables live at exit")->delimiter(',')->required();
  alive->add_option("--widen", widen, "Instance cap K");

  auto* opt = app.add_subcommand("optimize", "Eliminate dead code and emit a certificate");
  opt->add_option("file", file, "Program file")->required();
  opt->add_option("--live", live, "Variables live at exit")->delimiter(',')->required();
  opt->add_option("--widen", widen, "Instance cap K");
  opt->add_option("--emit", emit, "Write the residual program");
  opt->add_option("--cert", cert_path, "Write the derivation certificate");
  opt->add_flag("--strip-dead-cons", strip, "Also drop dead allocations");

  auto* chk = app.add_subcommand("check-cert", "Re-check a certificate against a program");
  chk->add_option("file", file, "Program file")->required();
  chk->add_option("cert", cert_path, "Certificate file")->required();

  auto* snd = app.add_subcommand("test-soundness", "Run the randomized soundness suites");
  snd->add_option("--trials", trials, "Trials per property");
  snd->add_option("--seed", seed, "Base seed");

  std::vector<const char*> argv{"whilep"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(file, fuel, inits, out);
    if (apts->parsed()) return cmd_analyze_pts(file, widen, out_path, out);
    if (alive->parsed()) return cmd_analyze_live(file, live, widen, out);
    if (opt->parsed()) return cmd_optimize(file, live, widen, emit, cert_path, strip, out, err);
    if (chk->parsed()) return cmd_check_cert(file, cert_path, out);
    if (snd->parsed()) return cmd_soundness(trials, seed, out);
  } catch (const SyntaxError& e) {
    err << file << ":" << e.what() << "\n";
    return kExitFailure;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace whilep
