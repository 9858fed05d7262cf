#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "garrow/bi.hpp"
#include "garrow/dot.hpp"
#include "garrow/eval.hpp"
#include "garrow/flatten.hpp"
#include "garrow/ir_text.hpp"
#include "garrow/laws.hpp"
#include "garrow/residual.hpp"
#include "garrow/stack.hpp"
#include "garrow/syntax.hpp"
#include "garrow/typecheck.hpp"

namespace garrow::cli {

namespace {

struct Invocation {
  std::string command;
  std::string file;
  std::string entry;
  std::vector<std::string> args;
  std::string input;
  std::string backend = "eval";
  std::string format;
  std::uint64_t seed = 42;
  int cases = 100;
  std::int64_t fuel = 100'000;
  bool dump_derivation = false;
};

// A failure outside the library's error type: bad flags, unreadable files.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string diagnostic(const Invocation& inv, const Error& e) {
  // what() already leads with line:col when the error has a position.
  std::string where = inv.file.empty() ? "garrowc" : inv.file;
  return where + ":" + (e.pos() ? "" : " ") + e.what();
}

std::vector<Value> stage_args(const Invocation& inv) {
  std::vector<Value> out;
  for (const auto& a : inv.args) out.push_back(parse_value(a));
  return out;
}

std::shared_ptr<const StagedCode> staged(const Invocation& inv, const StageEnv& env) {
  if (inv.entry.empty()) throw UsageError("--entry is required");
  return stage_entry(env, inv.entry, stage_args(inv));
}

TypedProgram load(const Invocation& inv) { return typecheck(parse_program(read_file(inv.file))); }

std::string cmd_check(const Invocation& inv) {
  TypedProgram prog = load(inv);
  std::string out;
  for (const auto& d : prog.defs) out += d.name + " : " + print_type(d.scheme.type) + "\n";
  return out;
}

std::string cmd_flatten(const Invocation& inv, const std::string& format) {
  StageEnv env(load(inv));
  auto code = staged(inv, env);
  std::string out;
  if (inv.dump_derivation) out += dump(*code->derivation(code->default_type()));
  const GaTerm& term = code->term();
  if (format == "dot") return out + to_dot(term);
  if (format == "text") return out + residualize(term) + "\n";
  return out + render_ir(term) + "\n";
}

Value run_residual(const std::string& text, const Value& input, std::int64_t fuel) {
  TypedPtr t = typecheck_expr(parse_expr(text));
  StageOptions opts;
  opts.steps = std::max<std::int64_t>(fuel, 1) * 1000;
  StageEnv env(TypedProgram{}, opts);
  return deep_force(env.apply(env.eval(*t), input));
}

std::string cmd_run(const Invocation& inv) {
  if (inv.input.empty()) throw UsageError("--input is required");
  StageEnv env(load(inv));
  auto code = staged(inv, env);
  Value input = parse_value(inv.input);
  const GaTerm& term = code->term();
  Value result = Value::Unit();
  if (inv.backend == "eval") {
    EvalOptions opts;
    opts.fuel = inv.fuel;
    result = eval_interpret(term, input, opts);
  } else if (inv.backend == "residual") {
    std::string text = residualize(term);
    with_large_stack([&] { result = run_residual(text, input, inv.fuel); });
  } else {
    BiMorphism m = bi_interpret(term);
    with_large_stack([&] { result = deep_force(m.fwd(input)); });
  }
  return result.to_string() + "\n";
}

int cmd_laws(const Invocation& inv, std::ostream& out) {
  if (inv.backend == "residual") throw UsageError("the law suite runs on the eval or bi backend");
  LawBackend backend = inv.backend == "bi" ? bi_law_backend() : eval_law_backend();
  LawReport report = run_law_suite(backend, inv.seed, inv.cases);
  out << (inv.format == "json" ? report.json() + "\n" : report.text());
  return report.failures() == 0 ? 0 : 1;
}

void emit_json(std::ostream& out, bool ok, const std::string& result, const std::vector<std::string>& diags) {
  nlohmann::ordered_json j;
  j["ok"] = ok;
  j["result"] = result;
  j["diagnostics"] = diags;
  out << j.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-level programs compiled to generalized-arrow combinators", "garrowc"};
  app.require_subcommand(1);
  Invocation inv;

  auto add_common = [&](CLI::App* sub, bool with_file) {
    if (with_file) sub->add_option("file", inv.file, "Source file")->required();
    sub->add_option("--format", inv.format, "Output format")->check(CLI::IsMember({"ir", "dot", "text", "json"}));
  };
  auto add_entry = [&](CLI::App* sub) {
    sub->add_option("--entry", inv.entry, "Definition to stage")->required();
    sub->add_option("--args", inv.args, "Level-0 literal arguments")->allow_extra_args();
    sub->add_option("--fuel", inv.fuel, "Evaluation fuel");
  };

  CLI::App* check = app.add_subcommand("check", "Parse and typecheck, printing each definition's type");
  add_common(check, true);

  CLI::App* flatten = app.add_subcommand("flatten", "Stage an entry and print its combinator term");
  add_common(flatten, true);
  add_entry(flatten);
  flatten->add_flag("--dump-derivation", inv.dump_derivation, "Print the structural derivation first");

  CLI::App* diagram = app.add_subcommand("diagram", "Stage an entry and print its wiring diagram");
  add_common(diagram, true);
  add_entry(diagram);

  CLI::App* run_cmd = app.add_subcommand("run", "Stage an entry and apply a backend to an input");
  add_common(run_cmd, true);
  add_entry(run_cmd);
  run_cmd->add_option("--input", inv.input, "Guest input value, arguments as left-nested pairs")->required();
  run_cmd->add_option("--backend", inv.backend, "Backend")->check(CLI::IsMember({"eval", "residual", "bi"}));

  CLI::App* laws = app.add_subcommand("laws", "Run the law suite against a backend");
  add_common(laws, false);
  laws->add_option("--backend", inv.backend, "Backend")->check(CLI::IsMember({"eval", "bi"}));
  laws->add_option("--seed", inv.seed, "Random seed");
  laws->add_option("--cases", inv.cases, "Cases per law")->check(CLI::PositiveNumber);

  std::vector<const char*> raw;
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "garrowc: " << e.what() << "\n";
    return 1;
  }

  for (CLI::App* sub : app.get_subcommands()) inv.command = sub->get_name();
  bool json = inv.format == "json";

  try {
    std::string result;
    if (inv.command == "check") {
      result = cmd_check(inv);
    } else if (inv.command == "flatten") {
      result = cmd_flatten(inv, inv.format);
    } else if (inv.command == "diagram") {
      result = cmd_flatten(inv, "dot");
    } else if (inv.command == "run") {
      result = cmd_run(inv);
    } else {
      return cmd_laws(inv, out);
    }
    if (json) {
      emit_json(out, true, result, {});
    } else {
      out << result;
    }
    return 0;
  } catch (const Error& e) {
    std::string msg = diagnostic(inv, e);
    if (json) emit_json(out, false, "", {msg});
    err << msg << "\n";
    return e.is_internal() ? 2 : 1;
  } catch (const UsageError& e) {
    if (json) emit_json(out, false, "", {e.what()});
    err << "garrowc: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "garrowc: internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace garrow::cli
