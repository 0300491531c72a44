#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "regseq/functions.hpp"
#include "regseq/generators.hpp"
#include "regseq/isa.hpp"
#include "regseq/machine.hpp"
#include "regseq/report.hpp"
#include "regseq/search.hpp"
#include "regseq/transforms.hpp"

namespace regseq::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

InstructionSequence read_program(const std::string& path) { return parse(read_text(path)); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text << '\n';
}

std::vector<bool> parse_input_bits(const std::string& bits) {
  std::vector<bool> v;
  for (char c : bits) {
    if (c != '0' && c != '1') throw UsageError("--inputs must contain only 0 and 1");
    v.push_back(c == '1');
  }
  return v;
}

std::uint64_t step_budget_from_env() {
  const char* raw = std::getenv("REGSEQ_STEP_BUDGET");
  if (raw == nullptr || *raw == '\0') return kDefaultStepBudget;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw UsageError("REGSEQ_STEP_BUDGET must be a non-negative integer");
  }
}

TruthTable target_function(const std::string& name, unsigned n) {
  if (name == "parity") return parity(n);
  if (name == "not-parity") return complement(parity(n));
  if (name.starts_with("bits:")) {
    TruthTable t = TruthTable::from_bits(name.substr(5));
    if (t.arity() != n) throw UsageError("--function bits length does not match -n");
    return t;
  }
  throw UsageError("unknown --function '" + name + "' (parity, not-parity, bits:<table>)");
}

// ---------------------------------------------------------------------------

struct RunArgs {
  std::string program;
  std::string inputs;
  bool trace = false;
  std::string report;
};

int cmd_run(const RunArgs& a, std::ostream& out) {
  const InstructionSequence program = read_program(a.program);
  Environment env = Environment::fresh(parse_input_bits(a.inputs), max_register_indices(program).max_aux);

  report::RunReport rep{render(program), a.inputs, Inaction{}, std::nullopt};
  if (a.trace) {
    Trace t = trace(program, env);
    for (const auto& e : t.entries) {
      out << "step " << e.position << ' ' << render(e.instruction) << " reply="
          << (e.reply ? (*e.reply ? "1" : "0") : "-") << '\n';
    }
    rep.outcome = t.outcome;
    rep.trace = std::move(t);
  } else {
    rep.outcome = execute(program, std::move(env));
  }
  out << describe(rep.outcome) << '\n';
  if (!a.report.empty()) write_file(a.report, report::to_json(rep));
  return is_terminated(rep.outcome) ? kOk : kNotComputed;
}

struct TableArgs {
  std::string program;
  unsigned n = 0;
};

int cmd_table(const TableArgs& a, std::ostream& out) {
  const InstructionSequence program = read_program(a.program);
  Extraction e = extract_function(program, a.n);
  if (auto* nt = std::get_if<NotTotal>(&e)) {
    out << "not-total input=" << bits_text(nt->inputs) << ' ' << describe(nt->outcome) << '\n';
    return kNotComputed;
  }
  out << std::get<TruthTable>(e).to_text() << '\n';
  return kOk;
}

struct GenArgs {
  std::string family;
  std::string variant;
  unsigned n = 0;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  if (a.family != "parity") throw UsageError("unknown family '" + a.family + "' (only parity)");
  auto v = variant_from_name(a.variant);
  if (!v) throw UsageError("--variant must be pis0 or pis1");
  out << render(generate(*v, a.n)) << '\n';
  return kOk;
}

struct MinArgs {
  std::string function = "parity";
  unsigned n = 0;
  unsigned aux = 0;
  unsigned max_len = 1;
  bool no_neg = false;
  unsigned jobs = 1;
  std::string prune;
  std::string out_file;
};

int cmd_min(const MinArgs& a, std::ostream& out) {
  SearchConstraints c;
  c.n_inputs = a.n;
  c.k_aux = a.aux;
  c.allow_neg = !a.no_neg;
  c.max_len = a.max_len;
  try {
    c.pruning = PruneRules::parse(a.prune);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  SearchOptions opts;
  opts.workers = a.jobs;
  opts.step_budget = step_budget_from_env();
  const TruthTable target = target_function(a.function, a.n);

  const std::string started = report::utc_now();
  MinimalityProfile profile = minimal_length(target, c, opts, a.function);
  report::SearchReportFile file{std::move(profile), started, report::utc_now()};

  const std::string json = report::to_json(file);
  if (!a.out_file.empty()) write_file(a.out_file, json);
  for (const auto& s : file.profile.lengths) {
    out << "length=" << s.length << " verdict=" << (s.exists ? "exists" : "none")
        << " candidates=" << s.candidates << " evaluated=" << s.evaluated
        << " computing=" << s.computing << '\n';
  }
  out << report::summary_line(file.profile) << '\n';
  return kOk;
}

struct SeparateArgs {
  std::string without_aux;
  std::string with_aux;
  std::size_t budget = 0;
};

report::SearchReportFile load_report(const std::string& path) {
  try {
    return report::search_report_from_json(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("malformed report '" + path + "': " + e.what());
  }
}

int cmd_separate(const SeparateArgs& a, std::ostream& out) {
  const auto without_aux = load_report(a.without_aux);
  const auto with_aux = load_report(a.with_aux);
  const auto sep = report::separation(without_aux.profile, with_aux.profile, a.budget);
  out << sep.statement << '\n';
  return sep.certified ? kOk : kNotComputed;
}

struct TransformArgs {
  std::string program;
  unsigned n = 0;
  unsigned input = 0;
  unsigned value = 0;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-pass instruction sequences over Boolean registers", "regseq"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Execute a program on one input vector");
  run_cmd->add_option("program", run_args.program, "Program file ('-' for stdin)")->required();
  run_cmd->add_option("--inputs", run_args.inputs, "Input bits, leftmost is in:1")->required();
  run_cmd->add_flag("--trace", run_args.trace, "Print every executed position");
  run_cmd->add_option("--report", run_args.report, "Write a JSON run report");

  TableArgs table_args;
  auto* table_cmd = app.add_subcommand("table", "Print the function a program computes");
  table_cmd->add_option("program", table_args.program, "Program file ('-' for stdin)")->required();
  table_cmd->add_option("-n", table_args.n, "Arity")->required();

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a parity program");
  gen_cmd->add_option("family", gen_args.family, "Function family (parity)")->required();
  gen_cmd->add_option("--variant", gen_args.variant, "pis0 or pis1")->required();
  gen_cmd->add_option("-n", gen_args.n, "Arity")->required();

  MinArgs min_args;
  auto* min_cmd = app.add_subcommand("min", "Exhaustively determine the minimal program length");
  min_cmd->add_option("--function", min_args.function, "parity, not-parity or bits:<table>");
  min_cmd->add_option("-n", min_args.n, "Arity")->required();
  min_cmd->add_option("--aux", min_args.aux, "Auxiliary registers available");
  min_cmd->add_option("--max-len", min_args.max_len, "Largest length to try")->required()->check(CLI::PositiveNumber);
  min_cmd->add_flag("--no-neg", min_args.no_neg, "Exclude aux:i.neg");
  min_cmd->add_option("--jobs", min_args.jobs, "Worker threads")->check(CLI::PositiveNumber);
  min_cmd->add_option("--prune", min_args.prune, "Comma-separated prune rules");
  min_cmd->add_option("--out", min_args.out_file, "Write the JSON report here");

  std::string transform_kind;
  TransformArgs tr_args;
  auto* tr_cmd = app.add_subcommand("transform", "Apply a program transformation");
  tr_cmd->add_option("kind", transform_kind, "complement, strip or eliminate")
      ->required()
      ->check(CLI::IsMember({"complement", "strip", "eliminate"}));
  tr_cmd->add_option("program", tr_args.program, "Program file ('-' for stdin)")->required();
  auto* tr_n = tr_cmd->add_option("-n", tr_args.n, "Arity (complement)");
  auto* tr_input = tr_cmd->add_option("--input", tr_args.input, "Input index (eliminate)");
  auto* tr_value = tr_cmd->add_option("--value", tr_args.value, "Input value 0/1 (eliminate)")
                       ->check(CLI::Range(0, 1));

  SeparateArgs sep_args;
  auto* sep_cmd = app.add_subcommand("separate", "Combine a no-aux and an aux minimality report");
  sep_cmd->add_option("without_aux", sep_args.without_aux, "Report searched with --aux 0")->required();
  sep_cmd->add_option("with_aux", sep_args.with_aux, "Report searched with --aux >= 1")->required();
  sep_cmd->add_option("--budget", sep_args.budget, "Length budget")->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run_args, out);
    if (*table_cmd) return cmd_table(table_args, out);
    if (*gen_cmd) return cmd_gen(gen_args, out);
    if (*min_cmd) return cmd_min(min_args, out);
    if (*sep_cmd) return cmd_separate(sep_args, out);
    if (*tr_cmd) {
      const InstructionSequence program = read_program(tr_args.program);
      if (transform_kind == "complement") {
        if (tr_n->count() == 0) throw UsageError("complement needs -n");
        out << render(complement_transform(program, tr_args.n)) << '\n';
      } else if (transform_kind == "strip") {
        out << render(strip_skips(program)) << '\n';
      } else {
        if (tr_input->count() == 0 || tr_value->count() == 0)
          throw UsageError("eliminate needs --input and --value");
        out << render(eliminate_input(program, tr_args.input, tr_args.value == 1)) << '\n';
      }
      return kOk;
    }
  } catch (const SearchAborted& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace regseq::cli
