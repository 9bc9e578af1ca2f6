#include "memforge/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "memforge/compilers.hpp"
#include "memforge/explorer.hpp"
#include "memforge/oracles.hpp"
#include "memforge/psys_format.hpp"
#include "memforge/validate.hpp"

namespace memforge::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

OutputMode mode_from(const std::string& token) {
  auto mode = parse_output_mode(token);
  if (!mode) throw UsageError("unknown mode '" + token + "' (expected lab|obj|traces|ext)");
  return *mode;
}

void add_limit_flags(CLI::App* cmd, Limits& limits) {
  cmd->add_option("--max-steps", limits.max_steps, "exploration step horizon");
  cmd->add_option("--max-configs", limits.max_configs, "state cap before truncation");
  cmd->add_option("--max-membranes", limits.max_membranes, "per-configuration membrane cap");
  cmd->add_option("--max-objects", limits.max_objects, "per-configuration object cap");
  cmd->add_option("--max-string-len", limits.max_string_len, "longest output string kept");
  cmd->add_option("--max-strings", limits.max_strings, "output string cap");
}

json strings_json(const StringSet& set) {
  json arr = json::array();
  for (const std::string& s : set.strings) arr.push_back(s);
  return arr;
}

std::string strings_text(const StringSet& set) {
  std::string out = "[";
  bool first = true;
  for (const std::string& s : set.strings) {
    if (!first) out += ", ";
    out += "\"" + s + "\"";
    first = false;
  }
  return out + "]";
}

json sample_json(OutputMode mode, const LanguageSample& sample) {
  return json{{"mode", to_string(mode)},
              {"strings", strings_json(sample.strings)},
              {"complete_up_to", sample.complete_up_to},
              {"truncated", sample.truncated},
              {"stats",
               {{"states", sample.stats.states},
                {"halting", sample.stats.halting},
                {"cycles", sample.stats.cycles},
                {"pruned", sample.stats.pruned}}}};
}

void print_sample(std::ostream& out, OutputMode mode, const LanguageSample& sample, bool as_json) {
  if (as_json) {
    out << sample_json(mode, sample).dump(2) << "\n";
    return;
  }
  out << "mode: " << to_string(mode) << "\n";
  out << "strings: " << strings_text(sample.strings) << "\n";
  out << "complete_up_to: " << sample.complete_up_to << "\n";
  out << "truncated: " << (sample.truncated ? "true" : "false") << "\n";
  out << "stats: states=" << sample.stats.states << " halting=" << sample.stats.halting
      << " cycles=" << sample.stats.cycles << " pruned=" << sample.stats.pruned << "\n";
}

int report_validation(std::ostream& out, const ValidationReport& report, bool as_json) {
  if (as_json) {
    json diags = json::array();
    for (const Diagnostic& d : report.diagnostics)
      diags.push_back({{"severity", d.severity == Severity::Error ? "error" : "warning"},
                       {"line", d.line},
                       {"column", d.column},
                       {"message", d.message}});
    out << json{{"ok", report.ok},
                {"ops", report.op_codes_used.to_string()},
                {"lop", {{"m", report.lop.m}, {"n", report.lop.n}}},
                {"diagnostics", diags}}
               .dump(2)
        << "\n";
  } else {
    for (const Diagnostic& d : report.diagnostics) {
      out << (d.severity == Severity::Error ? "error" : "warning");
      if (d.line > 0) out << " at " << d.line << ":" << d.column;
      out << ": " << d.message << "\n";
    }
    out << "ops: " << report.op_codes_used.to_string() << "  m=" << report.lop.m
        << " n=" << report.lop.n << "\n";
    out << (report.ok ? "ok" : "invalid") << "\n";
  }
  return report.ok ? 0 : 1;
}

// Loads and validates; throws UsageError on parse problems, returns the
// system otherwise. Validation failures raise the flag for exit code 1.
PSystem load_system(const std::string& path, std::ostream& err, bool& invalid) {
  PSystem system = parse_psystem(slurp(path));
  ValidationReport report = validate_psystem(system);
  for (const Diagnostic& d : report.diagnostics)
    if (d.severity == Severity::Error) err << "error: " << d.message << "\n";
  invalid = !report.ok;
  return system;
}

StringSet run_oracle(const std::string& path, std::size_t max_len, std::uint64_t max_steps) {
  if (ends_with(path, ".rm")) return rm_enumerate(parse_rm(slurp(path)), max_len, max_steps);
  if (ends_with(path, ".mg")) return mg_enumerate(parse_mg(slurp(path)), max_len, max_steps);
  throw UsageError("'" + path + "': expected a .rm or .mg file");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"memforge: a workbench for membrane systems with active membranes"};
  app.require_subcommand(1);

  std::string input, against, output_path, mode_token = "lab";
  std::uint64_t seed = 0;
  std::uint64_t oracle_steps = 10000;
  std::size_t max_len = 8;
  bool as_json = false;
  Limits limits;

  CLI::App* validate_cmd = app.add_subcommand("validate", "check a .psys document");
  validate_cmd->add_option("file", input, "system file")->required();
  validate_cmd->add_flag("--json", as_json, "machine-readable output");

  CLI::App* run_cmd = app.add_subcommand("run", "one seeded trajectory of a .psys system");
  run_cmd->add_option("file", input, "system file")->required();
  run_cmd->add_option("--mode", mode_token, "lab|obj|traces|ext");
  run_cmd->add_option("--seed", seed, "PRNG seed (default 0)");
  add_limit_flags(run_cmd, limits);
  run_cmd->add_flag("--json", as_json, "machine-readable output");

  CLI::App* explore_cmd = app.add_subcommand("explore", "enumerate the generated language");
  explore_cmd->add_option("file", input, "system file")->required();
  explore_cmd->add_option("--mode", mode_token, "lab|obj|traces|ext");
  add_limit_flags(explore_cmd, limits);
  explore_cmd->add_flag("--json", as_json, "machine-readable output");

  CLI::App* crm_cmd = app.add_subcommand("compile-rm", "register machine -> .psys");
  crm_cmd->add_option("file", input, "machine file (.rm)")->required();
  crm_cmd->add_option("--mode", mode_token, "lab|obj|traces|ext");
  crm_cmd->add_option("-o,--output", output_path, "output path (default stdout)");

  CLI::App* cmg_cmd = app.add_subcommand("compile-mg", "matrix grammar -> .psys");
  cmg_cmd->add_option("file", input, "grammar file (.mg)")->required();
  cmg_cmd->add_option("--mode", mode_token, "lab|obj|ext");
  cmg_cmd->add_option("-o,--output", output_path, "output path (default stdout)");

  CLI::App* orm_cmd = app.add_subcommand("oracle-rm", "reference language of a register machine");
  orm_cmd->add_option("file", input, "machine file (.rm)")->required();
  orm_cmd->add_option("--max-len", max_len, "longest string kept (default 8)");
  orm_cmd->add_option("--max-steps", oracle_steps, "machine step horizon");
  orm_cmd->add_flag("--json", as_json, "machine-readable output");

  CLI::App* omg_cmd = app.add_subcommand("oracle-mg", "reference language of a matrix grammar");
  omg_cmd->add_option("file", input, "grammar file (.mg)")->required();
  omg_cmd->add_option("--max-len", max_len, "longest string kept (default 8)");
  omg_cmd->add_option("--max-steps", oracle_steps, "derivation step horizon");
  omg_cmd->add_flag("--json", as_json, "machine-readable output");

  CLI::App* eq_cmd = app.add_subcommand("lang-eq", "compare a system's language with an oracle");
  eq_cmd->add_option("file", input, "system file (.psys)")->required();
  eq_cmd->add_option("--mode", mode_token, "lab|obj|traces|ext");
  eq_cmd->add_option("--against", against, "reference .rm or .mg file")->required();
  eq_cmd->add_option("--max-len", max_len, "length bound for the comparison (default 8)");
  eq_cmd->add_option("--oracle-steps", oracle_steps, "oracle step horizon");
  add_limit_flags(eq_cmd, limits);
  eq_cmd->add_flag("--json", as_json, "machine-readable output");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (*validate_cmd) {
      PSystem system = parse_psystem(slurp(input));
      return report_validation(out, validate_psystem(system), as_json);
    }

    if (*run_cmd || *explore_cmd) {
      const OutputMode mode = mode_from(mode_token);
      bool invalid = false;
      PSystem system = load_system(input, err, invalid);
      if (invalid) return 1;

      if (*explore_cmd) {
        print_sample(out, mode, explore(system, mode, limits, EngineOptions{}), as_json);
        return 0;
      }

      RunReport report = random_run(system, mode, seed, limits, EngineOptions{});
      if (as_json) {
        json events = json::array();
        for (std::size_t i = 0; i < report.log.size(); ++i) {
          json crossings = json::array();
          for (const Crossing& c : report.log[i].crossings)
            crossings.push_back({{"object", c.object},
                                 {"label", c.label_at_match},
                                 {"direction", c.direction == CrossDirection::In ? "in" : "out"}});
          json emissions = json::array();
          for (const auto& [sym, n] : report.log[i].emissions.items())
            for (Count k = 0; k < n; ++k) emissions.push_back(sym);
          events.push_back({{"step", i + 1}, {"crossings", crossings}, {"emissions", emissions}});
        }
        out << json{{"seed", report.seed},
                    {"steps", report.log.size()},
                    {"halted", report.halted},
                    {"final", format_membrane(report.final_config.root)},
                    {"outputs", strings_json(report.outputs)},
                    {"events", events}}
                   .dump(2)
            << "\n";
      } else {
        out << "seed: " << report.seed << "\n";
        out << "steps: " << report.log.size() << "\n";
        out << "halted: " << (report.halted ? "true" : "false") << "\n";
        out << "final: " << format_membrane(report.final_config.root) << "\n";
        out << "outputs: " << strings_text(report.outputs) << "\n";
      }
      return 0;
    }

    if (*crm_cmd || *cmg_cmd) {
      const OutputMode mode = mode_from(mode_token);
      CompiledSystem compiled = *crm_cmd ? compile_rm(parse_rm(slurp(input)), mode)
                                         : compile_mg(parse_mg(slurp(input)), mode);
      for (const std::string& w : compiled.warnings) err << "warning: renamed " << w << "\n";
      const std::string text = compiled.to_psys();
      if (output_path.empty()) {
        out << text;
      } else {
        std::ofstream file(output_path);
        if (!file) throw UsageError("cannot write '" + output_path + "'");
        file << text;
        err << "wrote " << output_path << "\n";
      }
      return 0;
    }

    if (*orm_cmd || *omg_cmd) {
      const StringSet set = run_oracle(input, max_len, oracle_steps);
      if (as_json) {
        out << json{{"strings", strings_json(set)}, {"cap_hit", set.cap_hit}}.dump(2) << "\n";
      } else {
        out << "strings: " << strings_text(set) << "\n";
        out << "cap_hit: " << (set.cap_hit ? "true" : "false") << "\n";
      }
      return 0;
    }

    if (*eq_cmd) {
      const OutputMode mode = mode_from(mode_token);
      bool invalid = false;
      PSystem system = load_system(input, err, invalid);
      if (invalid) return 1;

      limits.max_string_len = max_len;
      const LanguageSample sample = explore(system, mode, limits, EngineOptions{});
      const StringSet oracle = run_oracle(against, max_len, oracle_steps);

      std::vector<std::string> missing, extra;
      for (const std::string& s : oracle.strings)
        if (!sample.strings.strings.count(s)) missing.push_back(s);
      for (const std::string& s : sample.strings.strings)
        if (!oracle.strings.count(s)) extra.push_back(s);

      const bool equal = missing.empty() && extra.empty();
      const bool complete = !sample.truncated && !oracle.cap_hit;
      if (as_json) {
        out << json{{"equal", equal},
                    {"complete", complete},
                    {"system", strings_json(sample.strings)},
                    {"oracle", strings_json(oracle)},
                    {"missing", missing},
                    {"extra", extra}}
                   .dump(2)
            << "\n";
      } else {
        out << "system: " << strings_text(sample.strings) << "\n";
        out << "oracle: " << strings_text(oracle) << "\n";
        if (!missing.empty()) {
          out << "missing from system:";
          for (const std::string& s : missing) out << " \"" << s << "\"";
          out << "\n";
        }
        if (!extra.empty()) {
          out << "not in oracle:";
          for (const std::string& s : extra) out << " \"" << s << "\"";
          out << "\n";
        }
        out << (equal && complete ? "equal" : "different") << "\n";
      }
      return equal && complete ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NeedsTwoRegistersError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const TracesUnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const IncompatibleModeError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace memforge::cli
