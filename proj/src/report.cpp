#include "regseq/report.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace regseq::report {

using nlohmann::ordered_json;

namespace {

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

ordered_json outcome_json(const Outcome& outcome) {
  ordered_json j;
  if (auto* t = std::get_if<Terminated>(&outcome)) {
    j["status"] = "terminated";
    j["output"] = t->env.output;
    std::string aux;
    for (bool a : t->env.aux) aux.push_back(a ? '1' : '0');
    j["aux"] = aux;
  } else if (auto* ia = std::get_if<InvalidAccess>(&outcome)) {
    j["status"] = "invalid_access";
    j["position"] = ia->position;
    j["register"] = render(ia->reg);
  } else {
    j["status"] = "inaction";
  }
  return j;
}

std::vector<bool> parse_bits(const std::string& s) {
  std::vector<bool> v;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bad bit string in report");
    v.push_back(c == '1');
  }
  return v;
}

RegisterName parse_register(const std::string& text) {
  // Reuse the instruction grammar: "<reg>.get" is legal for inputs and aux.
  if (text == "out") return RegisterName::output();
  return parse_instruction(text + ".get").basic().reg;
}

Outcome outcome_from_json(const ordered_json& j, const std::vector<bool>& inputs) {
  const std::string status = j.at("status").get<std::string>();
  if (status == "terminated") {
    Environment env = Environment::fresh(inputs, 0);
    env.output = j.at("output").get<bool>();
    env.aux = parse_bits(j.value("aux", std::string{}));
    return Terminated{std::move(env)};
  }
  if (status == "invalid_access")
    return InvalidAccess{j.at("position").get<std::size_t>(),
                         parse_register(j.at("register").get<std::string>())};
  if (status == "inaction") return Inaction{};
  throw std::invalid_argument("unknown outcome status '" + status + "'");
}

void check_schema(const ordered_json& j, const char* kind) {
  if (j.at("schema_version").get<int>() != kSchemaVersion)
    throw std::invalid_argument("unsupported schema_version");
  if (j.at("kind").get<std::string>() != kind)
    throw std::invalid_argument(std::string("expected a '") + kind + "' document");
}

}  // namespace

std::string to_json(const RunReport& r, int indent) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "run";
  j["program"] = r.program;
  j["inputs"] = r.inputs;
  j["outcome"] = outcome_json(r.outcome);
  if (r.trace) {
    ordered_json steps = ordered_json::array();
    for (const auto& e : r.trace->entries) {
      ordered_json s;
      s["position"] = e.position;
      s["instruction"] = render(e.instruction);
      if (e.reply) s["reply"] = *e.reply;
      else s["reply"] = nullptr;
      steps.push_back(std::move(s));
    }
    j["trace"] = std::move(steps);
  }
  return j.dump(indent);
}

RunReport run_report_from_json(const std::string& text) {
  const auto j = ordered_json::parse(text);
  check_schema(j, "run");
  RunReport r;
  r.program = j.at("program").get<std::string>();
  r.inputs = j.at("inputs").get<std::string>();
  const auto inputs = parse_bits(r.inputs);
  r.outcome = outcome_from_json(j.at("outcome"), inputs);
  if (j.contains("trace")) {
    Trace t{{}, r.outcome};
    for (const auto& s : j.at("trace")) {
      TraceEntry e;
      e.position = s.at("position").get<std::size_t>();
      e.instruction = parse_instruction(s.at("instruction").get<std::string>());
      if (!s.at("reply").is_null()) e.reply = s.at("reply").get<bool>();
      t.entries.push_back(e);
    }
    r.trace = std::move(t);
  }
  return r;
}

std::string to_json(const SearchReportFile& r, int indent) {
  const MinimalityProfile& p = r.profile;
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "minimality_profile";

  ordered_json target;
  target["id"] = p.target_id;
  target["arity"] = p.target.arity();
  target["bits"] = p.target.bit_string();
  target["hash"] = "fnv1a64:" + hex64(p.target.hash());
  j["target"] = std::move(target);

  ordered_json constraints;
  constraints["n_inputs"] = p.constraints.n_inputs;
  constraints["k_aux"] = p.constraints.k_aux;
  constraints["allow_neg"] = p.constraints.allow_neg;
  constraints["allow_aux_set"] = p.constraints.allow_aux_set;
  constraints["max_len"] = p.constraints.max_len;
  j["constraints"] = std::move(constraints);

  ordered_json rules = ordered_json::array();
  for (auto rule : p.constraints.pruning.list()) rules.push_back(std::string(prune_rule_name(rule)));
  j["prune_rules"] = std::move(rules);

  ordered_json alphabet;
  ordered_json registers = ordered_json::array();
  for (std::uint32_t i = 1; i <= p.constraints.n_inputs; ++i) registers.push_back("in:" + std::to_string(i));
  registers.push_back("out");
  for (std::uint32_t i = 1; i <= p.constraints.k_aux; ++i) registers.push_back("aux:" + std::to_string(i));
  alphabet["registers"] = std::move(registers);
  alphabet["jumps"] = "#0..#length";
  alphabet["order"] = "register, command, mode (plain,+,-); jumps ascending; !";
  j["alphabet"] = std::move(alphabet);

  ordered_json lengths = ordered_json::array();
  for (const auto& s : p.lengths) {
    ordered_json l;
    l["length"] = s.length;
    l["alphabet_size"] = s.alphabet_size;
    l["candidates"] = s.candidates;
    l["evaluated"] = s.evaluated;
    l["computing"] = s.computing;
    l["verdict"] = s.exists ? "exists" : "none";
    lengths.push_back(std::move(l));
  }
  j["lengths"] = std::move(lengths);

  if (p.minimal_length) j["minimal_length"] = *p.minimal_length;
  else j["minimal_length"] = nullptr;
  if (p.witness) j["witness"] = render(*p.witness);
  else j["witness"] = nullptr;

  ordered_json run;
  run["workers"] = p.workers;
  run["vm_steps"] = p.vm_steps;
  run["wall_time_seconds"] = p.wall_time_seconds;
  run["started_at"] = r.started_at;
  run["finished_at"] = r.finished_at;
  j[kRunInfoKey] = std::move(run);
  return j.dump(indent);
}

SearchReportFile search_report_from_json(const std::string& text) {
  const auto j = ordered_json::parse(text);
  check_schema(j, "minimality_profile");

  const auto& t = j.at("target");
  TruthTable target = TruthTable::from_bits(t.at("bits").get<std::string>());
  if (target.arity() != t.at("arity").get<unsigned>())
    throw std::invalid_argument("target arity does not match its bits");

  SearchConstraints c;
  const auto& cj = j.at("constraints");
  c.n_inputs = cj.at("n_inputs").get<std::uint32_t>();
  c.k_aux = cj.at("k_aux").get<std::uint32_t>();
  c.allow_neg = cj.at("allow_neg").get<bool>();
  c.allow_aux_set = cj.at("allow_aux_set").get<bool>();
  c.max_len = cj.at("max_len").get<std::uint32_t>();
  for (const auto& name : j.at("prune_rules")) {
    auto rule = prune_rule_from_name(name.get<std::string>());
    if (!rule) throw std::invalid_argument("unknown prune rule in report");
    c.pruning.insert(*rule);
  }

  MinimalityProfile p{std::move(target), t.at("id").get<std::string>(), c, {}, std::nullopt,
                      std::nullopt, 0, 1, 0};
  for (const auto& l : j.at("lengths")) {
    LengthStats s;
    s.length = l.at("length").get<std::size_t>();
    s.alphabet_size = l.at("alphabet_size").get<std::size_t>();
    s.candidates = l.at("candidates").get<std::uint64_t>();
    s.evaluated = l.at("evaluated").get<std::uint64_t>();
    s.computing = l.at("computing").get<std::uint64_t>();
    s.exists = l.at("verdict").get<std::string>() == "exists";
    p.lengths.push_back(s);
  }
  if (!j.at("minimal_length").is_null()) p.minimal_length = j.at("minimal_length").get<std::size_t>();
  if (!j.at("witness").is_null()) p.witness = parse(j.at("witness").get<std::string>());

  SearchReportFile r{std::move(p), {}, {}};
  if (j.contains(kRunInfoKey)) {
    const auto& run = j.at(kRunInfoKey);
    r.profile.workers = run.value("workers", 1U);
    r.profile.vm_steps = run.value("vm_steps", std::uint64_t{0});
    r.profile.wall_time_seconds = run.value("wall_time_seconds", 0.0);
    r.started_at = run.value("started_at", std::string{});
    r.finished_at = run.value("finished_at", std::string{});
  }
  return r;
}

std::string strip_run_info(const std::string& json_text) {
  auto j = ordered_json::parse(json_text);
  j.erase(kRunInfoKey);
  return j.dump(2);
}

std::string summary_line(const MinimalityProfile& p) {
  if (p.minimal_length)
    return "minimal_length=" + std::to_string(*p.minimal_length) + " witness=" + render(*p.witness);
  return "minimal_length=none max_len=" + std::to_string(p.constraints.max_len);
}

Separation separation(const MinimalityProfile& without_aux, const MinimalityProfile& with_aux,
                      std::size_t budget) {
  auto refuse = [](const std::string& why) { return Separation{false, "separation not certified: " + why}; };
  if (without_aux.target != with_aux.target) return refuse("reports are for different targets");
  if (without_aux.constraints.k_aux != 0) return refuse("first report allows auxiliary registers");
  if (with_aux.constraints.k_aux == 0) return refuse("second report allows no auxiliary registers");

  for (std::size_t len = 1; len <= budget; ++len) {
    const LengthStats* found = nullptr;
    for (const auto& s : without_aux.lengths)
      if (s.length == len) found = &s;
    if (found == nullptr) return refuse("length " + std::to_string(len) + " missing from the first report");
    if (found->exists) return refuse("a program of length " + std::to_string(len) + " exists without auxiliary registers");
  }
  if (!with_aux.minimal_length || !with_aux.witness) return refuse("second report has no witness");
  if (psize(*with_aux.witness) != *with_aux.minimal_length)
    return refuse("second report's witness length disagrees with its minimal_length");
  if (*with_aux.minimal_length > budget) return refuse("second report's witness exceeds the budget");
  if (!is_computes(computes(*with_aux.witness, with_aux.target)))
    return refuse("second report's witness does not compute the target");
  if (max_register_indices(*with_aux.witness).max_aux > with_aux.constraints.k_aux)
    return refuse("second report's witness uses too many auxiliary registers");

  std::ostringstream os;
  os << "separation certified: target=" << without_aux.target_id << " n=" << without_aux.target.arity()
     << " budget=" << budget << ": no program of length <= " << budget
     << " without auxiliary registers (exhaustive over lengths 1.." << budget << "); a program of length "
     << *with_aux.minimal_length << " with " << with_aux.constraints.k_aux
     << " auxiliary register(s): " << render(*with_aux.witness);
  return {true, os.str()};
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace regseq::report
