#include "planrec/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>

#include "planrec/analysis.hpp"
#include "planrec/infer.hpp"
#include "planrec/library.hpp"
#include "planrec/netbuild.hpp"

namespace planrec {

std::vector<double> parse_grid(std::string_view spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    auto colon = spec.find(':', start);
    parts.emplace_back(spec.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  const std::string bad = "bad grid spec '" + std::string(spec) + "' (expected start:stop:steps:log|lin)";
  if (parts.size() != 4) throw ParseError(bad);
  double lo = 0, hi = 0;
  long steps = 0;
  try {
    std::size_t used = 0;
    lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw ParseError(bad);
    hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw ParseError(bad);
    steps = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw ParseError(bad);
  } catch (const std::logic_error&) {
    throw ParseError(bad);
  }
  const bool log_scale = parts[3] == "log";
  if (!log_scale && parts[3] != "lin") throw ParseError(bad);
  if (steps < 1) throw ParseError(bad + ": steps must be at least 1");
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) throw ParseError(bad + ": need 0 <= start <= stop <= 1");
  if (steps > 1 && !(lo < hi)) throw ParseError(bad + ": start must be below stop for more than one step");
  if (log_scale && !(lo > 0.0)) throw ParseError(bad + ": log grids need start > 0");

  std::vector<double> grid;
  for (long i = 0; i < steps; ++i) {
    if (i == 0) {
      grid.push_back(lo);
    } else if (i == steps - 1) {
      grid.push_back(hi);
    } else {
      const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
      grid.push_back(log_scale ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo));
    }
  }
  return grid;
}

std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", p);
  return buf;
}

namespace {

struct ModeOptions {
  std::string mode = "life";
  std::optional<double> equality_prior;
  std::optional<double> mention_base;
  std::optional<double> mention_lift;
  std::optional<double> word_leak;
};

struct Inputs {
  std::string lib_path;
  std::string story_path;
};

void add_input_options(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--lib", in.lib_path, "Plan library file")->required();
  cmd->add_option("--story", in.story_path, "Story file")->required();
}

void add_mode_options(CLI::App* cmd, ModeOptions& m) {
  cmd->add_option("--mode", m.mode, "life, story or knob")
      ->check(CLI::IsMember({"life", "story", "knob"}))
      ->capture_default_str();
  cmd->add_option("--equality-prior", m.equality_prior, "Equality prior E (required with --mode knob)");
  cmd->add_option("--mention-base", m.mention_base, "Mention base rate m0");
  cmd->add_option("--mention-lift", m.mention_lift, "Mention lift k");
  cmd->add_option("--word-leak", m.word_leak, "Word leak lambda");
}

ModePreset resolve_mode(const ModeOptions& m) {
  ModePreset p;
  if (m.mode == "knob") {
    if (!m.equality_prior) throw ValidationError("--mode knob requires --equality-prior");
    p = knob_preset(*m.equality_prior);
  } else {
    p = preset(m.mode);
    if (m.equality_prior) p.config.equality_prior = *m.equality_prior;
  }
  if (m.mention_base) p.config.mention_base = *m.mention_base;
  if (m.mention_lift) p.config.mention_lift = *m.mention_lift;
  if (m.word_leak) p.config.word_leak = *m.word_leak;
  return p;
}

struct Loaded {
  PlanLibrary lib;
  Story story;
};

Loaded load_inputs(const Inputs& in) {
  Loaded l;
  const std::string lib_text = read_file(in.lib_path);
  const std::string story_text = read_file(in.story_path);
  try {
    l.lib = load_library(lib_text);
  } catch (const ParseError& e) {
    throw ParseError(in.lib_path + ":" + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(in.lib_path + ":" + e.what());
  }
  try {
    l.story = load_story(story_text, l.lib);
  } catch (const ParseError& e) {
    throw ParseError(in.story_path + ":" + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(in.story_path + ":" + e.what());
  }
  return l;
}

void echo_config(std::ostream& out, const ModePreset& p) {
  const Config& c = p.config;
  out << "# mode " << p.name << "\n";
  out << "# equality_prior " << format_probability(c.equality_prior) << "\n";
  out << "# mention " << (c.mention_enabled ? "on" : "off") << "\n";
  if (c.mention_enabled) {
    out << "# mention_base " << format_probability(c.mention_base) << "\n";
    out << "# mention_lift " << format_probability(c.mention_lift) << "\n";
  }
  out << "# word_leak " << format_probability(c.word_leak) << "\n";
}

int cmd_recognize(const Inputs& in, const ModeOptions& m, std::ostream& out) {
  const Loaded l = load_inputs(in);
  const ModePreset p = resolve_mode(m);
  const BayesNet net = build_network(l.lib, l.story, p.config);
  const auto rows = recognize(net);
  echo_config(out, p);
  for (const auto& r : rows) out << r.label << ", " << format_probability(r.posterior) << "\n";
  return kExitOk;
}

int cmd_sweep(const Inputs& in, const ModeOptions& m, const std::string& grid_spec, const std::string& query,
              std::ostream& out) {
  const auto grid = parse_grid(grid_spec);
  const Loaded l = load_inputs(in);
  ModeOptions base = m;
  if (base.mode == "knob" && !base.equality_prior) base.equality_prior = grid.front();
  const ModePreset p = resolve_mode(base);
  const auto rows = sweep_equality_prior(l.lib, l.story, p.config, grid, query);
  out << "equality_prior,query,posterior\n";
  for (const auto& r : rows)
    out << format_probability(r.equality_prior) << "," << r.query << "," << format_probability(r.posterior) << "\n";
  return kExitOk;
}

int cmd_explain(const Inputs& in, const ModeOptions& m, std::ostream& out) {
  const Loaded l = load_inputs(in);
  const ModePreset p = resolve_mode(m);
  out << to_dot(build_network(l.lib, l.story, p.config));
  return kExitOk;
}

int cmd_oracle(const Inputs& in, const ModeOptions& m, std::ostream& out, std::ostream& err) {
  constexpr double kTolerance = 1e-9;
  const Loaded l = load_inputs(in);
  const ModePreset p = resolve_mode(m);
  const BayesNet net = build_network(l.lib, l.story, p.config);
  std::vector<NodeId> queries;
  for (const auto& n : net.nodes())
    if (!net.evidence().count(n.id)) queries.push_back(n.id);
  const auto exact = enumerate_marginals(net, net.evidence(), queries);
  bool ok = true;
  out << "node,variable_elimination,enumeration,abs_diff\n";
  for (NodeId q : queries) {
    const double ve = posterior(net, net.evidence(), q);
    const double diff = std::abs(ve - exact.at(q));
    ok = ok && diff <= kTolerance;
    out << net.node(q).label << "," << format_probability(ve) << "," << format_probability(exact.at(q)) << ","
        << format_probability(diff) << "\n";
  }
  if (!ok) {
    err << "oracle mismatch above " << format_probability(kTolerance) << "\n";
    return kExitInference;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bayesian plan recognition over word/entity stories"};
  app.require_subcommand(1);

  Inputs in;
  ModeOptions mode;
  std::string grid_spec, query;

  auto* recognize_cmd = app.add_subcommand("recognize", "Posterior of every plan and equality hypothesis");
  add_input_options(recognize_cmd, in);
  add_mode_options(recognize_cmd, mode);

  auto* sweep_cmd = app.add_subcommand("sweep", "Posterior of one plan across a grid of equality priors (CSV)");
  add_input_options(sweep_cmd, in);
  add_mode_options(sweep_cmd, mode);
  sweep_cmd->add_option("--grid", grid_spec, "start:stop:steps:log|lin")->required();
  sweep_cmd->add_option("--query", query, "Plan instance label, e.g. \"(hang k1)\"")->required();

  auto* explain_cmd = app.add_subcommand("explain", "Network as a Graphviz digraph");
  add_input_options(explain_cmd, in);
  add_mode_options(explain_cmd, mode);

  auto* oracle_cmd = app.add_subcommand("oracle", "Compare variable elimination against full enumeration");
  add_input_options(oracle_cmd, in);
  add_mode_options(oracle_cmd, mode);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (recognize_cmd->parsed()) return cmd_recognize(in, mode, out);
    if (sweep_cmd->parsed()) return cmd_sweep(in, mode, grid_spec, query, out);
    if (explain_cmd->parsed()) return cmd_explain(in, mode, out);
    if (oracle_cmd->parsed()) return cmd_oracle(in, mode, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InferenceError& e) {
    err << "inference error: " << e.what() << "\n";
    return kExitInference;
  } catch (const std::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitParse;
}

}  // namespace planrec
