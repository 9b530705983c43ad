#include "nerodectl/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "nerodectl/io.hpp"

namespace nerode::cli {

namespace {

using io::Json;

struct Options {
  std::string format = "json";
  std::string output;

  std::string system;
  std::string against;
  std::string input;
  std::string u1;
  std::string u2;
  std::string markov;
  std::string mode = "rest";
  Index from = 0;
  Index to = 0;
  std::size_t count = 0;
  std::optional<std::size_t> max_len;
  std::size_t block_rows = 0;
  std::size_t block_cols = 0;
  std::size_t p = 0;
  std::size_t m = 0;
};

struct Outcome {
  Json result;
  int exit_code = kOk;
};

/// Thrown for usage problems detected after argument parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream ss;
  ss << "fnv1a64:" << std::hex;
  ss.width(16);
  ss.fill('0');
  ss << h;
  return ss.str();
}

class Inputs {
 public:
  const std::string& read(const std::string& role, const std::string& path) {
    auto [it, fresh] = bytes_.emplace(role, std::string());
    if (fresh) {
      it->second = io::read_file(path);
      digests_[role] = digest(it->second);
    }
    return it->second;
  }

  Json digests() const { return Json(digests_); }

 private:
  std::map<std::string, std::string> bytes_;
  std::map<std::string, std::string> digests_;
};

System finite_system(Inputs& in, const std::string& role,
                     const std::string& path) {
  auto parsed = io::parse_system_text(in.read(role, path));
  if (auto* sys = std::get_if<System>(&parsed)) return std::move(*sys);
  throw UsageError(path + ": expected a finite system (mealy, window, or "
                          "linear with a modulus)");
}

LinearSystem linear_system(Inputs& in, const std::string& path) {
  auto parsed = io::parse_system_text(in.read("system", path));
  if (auto* sys = std::get_if<LinearSystem>(&parsed)) return std::move(*sys);
  throw UsageError(path + ": expected a rational linear system");
}

Sequence load_sequence(Inputs& in, const std::string& role,
                       const std::string& path, const Alphabet& alphabet) {
  return io::sequence_from_json(io::parse_json(in.read(role, path)), alphabet);
}

Json state_labels(const MealyMachine& m, const StateSet& states) {
  Json list = Json::array();
  for (StateId s : states) list.push_back(m.states[s]);
  return list;
}

Json word_labels(const Alphabet& alphabet, const std::vector<Symbol>& word) {
  std::vector<std::string> labels;
  for (Symbol a : word) labels.push_back(alphabet.label(a));
  return io::word_to_json(labels);
}

Outcome do_simulate(const Options& o, Inputs& in) {
  if (o.from > o.to) throw UsageError("--from must not exceed --to");
  System sys = finite_system(in, "system", o.system);
  Sequence u = load_sequence(in, "input", o.input, input_alphabet(sys));
  Sequence y = evaluate(sys, u, o.from, o.to);
  return {Json{{"from", o.from}, {"to", o.to}, {"output", io::to_json(y)}}};
}

DomainMode parse_mode(const std::string& mode) {
  if (mode == "rest") return DomainMode::kRestReachable;
  if (mode == "xc") return DomainMode::kControllable;
  throw UsageError("--mode must be rest or xc");
}

Outcome do_minimize(const Options& o, Inputs& in) {
  System sys = finite_system(in, "system", o.system);
  const MealyMachine source = to_mealy(sys);
  const NerodeRealization real = minimize(System{source}, parse_mode(o.mode));
  Json projection = Json::object();
  for (StateId s = 0; s < real.projection.size(); ++s) {
    if (real.projection[s]) {
      projection[source.states[s]] = real.machine.states[*real.projection[s]];
    }
  }
  return {Json{{"mode", to_string(real.mode)},
               {"states", real.machine.state_count()},
               {"machine", io::to_json(real.machine)},
               {"projection", std::move(projection)}}};
}

Outcome do_equiv(const Options& o, Inputs& in) {
  const MealyMachine m1 = to_mealy(finite_system(in, "system", o.system));
  const MealyMachine m2 = to_mealy(finite_system(in, "against", o.against));
  const EquivalenceResult r = machine_equivalence(m1, m2);
  if (!r.equivalent && o.max_len && r.counterexample.size() > *o.max_len) {
    return {Json{{"equivalent", true},
                 {"bounded", true},
                 {"max_len", *o.max_len},
                 {"counterexample", nullptr}}};
  }
  Json result{{"equivalent", r.equivalent}, {"counterexample", nullptr}};
  if (o.max_len) {
    result["bounded"] = true;
    result["max_len"] = *o.max_len;
  }
  if (!r.equivalent) {
    result["counterexample"] = word_labels(m1.inputs, r.counterexample);
    return {std::move(result), kPropertyFails};
  }
  return {std::move(result)};
}

Outcome do_quotient(const Options& o, Inputs& in) {
  const MealyMachine given = to_mealy(finite_system(in, "system", o.system));
  const NerodeRealization minimal =
      o.against.empty()
          ? minimize(System{given}, DomainMode::kControllable)
          : NerodeRealization{to_mealy(finite_system(in, "against", o.against)),
                              {}, DomainMode::kControllable};
  try {
    const QuotientMapReport report = quotient_map(given, minimal);
    Json result = io::report_to_json(report, given, minimal.machine);
    result["xc_size"] = report.map.size() + report.unmapped.size();
    result["quotient_states"] = minimal.machine.state_count();
    return {std::move(result), report.holds() ? kOk : kPropertyFails};
  } catch (const InequivalentError& e) {
    return {Json{{"error", "inequivalent"},
                 {"counterexample", io::word_to_json(e.word())}},
            kPropertyFails};
  }
}

Outcome do_xc(const Options& o, Inputs& in) {
  const MealyMachine m = to_mealy(finite_system(in, "system", o.system));
  return {Json{{"xc", state_labels(m, controllable_subset(m))},
               {"reachable", state_labels(m, reachable_states(m))}}};
}

Outcome do_nerode_eq(const Options& o, Inputs& in) {
  System sys = finite_system(in, "system", o.system);
  const NerodeRealization real = minimize(sys, DomainMode::kRestReachable);
  const Alphabet alphabet = input_alphabet(sys);
  Sequence u1 = load_sequence(in, "u1", o.u1, alphabet);
  Sequence u2 = load_sequence(in, "u2", o.u2, alphabet);
  const StateId c1 = state_at(real, u1, 0);
  const StateId c2 = state_at(real, u2, 0);
  const bool eq = c1 == c2;
  return {Json{{"equivalent", eq},
               {"class_u1", real.machine.states[c1]},
               {"class_u2", real.machine.states[c2]}},
          eq ? kOk : kPropertyFails};
}

Outcome do_markov(const Options& o, Inputs& in) {
  const LinearSystem sys = linear_system(in, o.system);
  return {io::markov_to_json(markov_parameters(sys, o.count))};
}

Outcome do_hokalman(const Options& o, Inputs& in) {
  const MarkovSequence markov =
      io::markov_from_json(io::parse_json(in.read("markov", o.markov)));
  const LinearSystem sys =
      ho_kalman(markov, o.block_rows, o.block_cols, o.p, o.m);
  return {Json{{"order", sys.order()}, {"system", io::to_json(sys)}}};
}

Outcome do_validate(const Options& o, Inputs& in) {
  const Json doc = io::parse_json(in.read("system", o.system));
  std::vector<io::Issue> issues;
  try {
    issues = io::load_system(doc).violations;
  } catch (const io::ParseError& e) {
    if (e.stage() != io::ParseError::Stage::kInvariant) throw;
    issues = e.issues();
  }
  Json list = Json::array();
  for (const auto& i : issues) {
    list.push_back(Json{{"location", i.location},
                        {"kind", i.kind},
                        {"message", i.message}});
  }
  const bool valid = issues.empty();
  return {Json{{"valid", valid}, {"violations", std::move(list)}},
          valid ? kOk : kPropertyFails};
}

std::string render_text(const std::string& verb, const Json& report) {
  std::ostringstream ss;
  ss << "verb: " << verb << "\n";
  for (const auto& [role, d] : report["inputs"].items()) {
    ss << "input " << role << ": " << d.get<std::string>() << "\n";
  }
  for (const auto& [key, value] : report["result"].items()) {
    ss << key << ": ";
    if (value.is_string()) {
      ss << value.get<std::string>();
    } else {
      ss << value.dump();
    }
    ss << "\n";
  }
  ss << "exit: " << report["exit_code"].get<int>() << "\n";
  return ss.str();
}

}  // namespace

RunReport run(const std::vector<std::string>& args) {
  RunReport rep;
  Options o;

  CLI::App app{"Nerode realization toolkit: simulate, minimize and verify "
               "state-space realizations",
               "nerodectl"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--output", o.output, "Write the report to this file");

  auto* simulate = app.add_subcommand("simulate", "Evaluate y = T u on a window");
  simulate->add_option("--system", o.system)->required();
  simulate->add_option("--input", o.input)->required();
  simulate->add_option("--from", o.from)->required();
  simulate->add_option("--to", o.to)->required();

  auto* minimize_cmd = app.add_subcommand("minimize", "Build the Nerode realization");
  minimize_cmd->add_option("--system", o.system)->required();
  minimize_cmd->add_option("--mode", o.mode)
      ->check(CLI::IsMember({"rest", "xc"}));

  auto* equiv = app.add_subcommand("equiv", "Check I/O equivalence of two systems");
  equiv->add_option("--system", o.system)->required();
  equiv->add_option("--against", o.against)->required();
  equiv->add_option("--max-len", o.max_len);

  auto* quotient = app.add_subcommand(
      "quotient", "Compute and verify the quotient map onto the Nerode states");
  quotient->add_option("--system", o.system)->required();
  quotient->add_option("--against", o.against);

  auto* xc = app.add_subcommand("xc", "Controllable subset of a realization");
  xc->add_option("--system", o.system)->required();

  auto* nerode_eq = app.add_subcommand("nerode-eq", "Nerode equivalence of two inputs at time 0");
  nerode_eq->add_option("--system", o.system)->required();
  nerode_eq->add_option("--u1", o.u1)->required();
  nerode_eq->add_option("--u2", o.u2)->required();

  auto* markov = app.add_subcommand("markov", "Markov parameters of a linear system");
  markov->add_option("--system", o.system)->required();
  markov->add_option("--count", o.count)->required();

  auto* hokalman = app.add_subcommand("hokalman", "Minimal realization from Markov parameters");
  hokalman->add_option("--markov", o.markov)->required();
  hokalman->add_option("--block-rows", o.block_rows)->required();
  hokalman->add_option("--block-cols", o.block_cols)->required();
  hokalman->add_option("--p", o.p)->required();
  hokalman->add_option("--m", o.m)->required();

  auto* validate = app.add_subcommand("validate", "Check a system file's invariants");
  validate->add_option("--system", o.system)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    rep.out = app.help();
    return rep;
  } catch (const CLI::CallForAllHelp&) {
    rep.out = app.help("", CLI::AppFormatMode::All);
    return rep;
  } catch (const CLI::ParseError& e) {
    rep.err = std::string(e.what()) + "\n";
    rep.exit_code = kUsageOrInputError;
    return rep;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string verb = sub->get_name();

  Inputs inputs;
  Outcome outcome;
  try {
    if (sub == simulate) outcome = do_simulate(o, inputs);
    else if (sub == minimize_cmd) outcome = do_minimize(o, inputs);
    else if (sub == equiv) outcome = do_equiv(o, inputs);
    else if (sub == quotient) outcome = do_quotient(o, inputs);
    else if (sub == xc) outcome = do_xc(o, inputs);
    else if (sub == nerode_eq) outcome = do_nerode_eq(o, inputs);
    else if (sub == markov) outcome = do_markov(o, inputs);
    else if (sub == hokalman) outcome = do_hokalman(o, inputs);
    else outcome = do_validate(o, inputs);
  } catch (const std::exception& e) {
    rep.err = verb + ": " + e.what() + "\n";
    rep.exit_code = kUsageOrInputError;
    return rep;
  }

  Json report{{"verb", verb},
              {"inputs", inputs.digests()},
              {"result", std::move(outcome.result)},
              {"exit_code", outcome.exit_code}};
  std::string text = o.format == "text" ? render_text(verb, report)
                                        : report.dump(2) + "\n";
  rep.exit_code = outcome.exit_code;
  if (o.output.empty()) {
    rep.out = std::move(text);
  } else {
    std::ofstream f(o.output, std::ios::binary);
    if (!f || !(f << text)) {
      rep.err = "cannot write " + o.output + "\n";
      rep.exit_code = kUsageOrInputError;
    }
  }
  return rep;
}

}  // namespace nerode::cli
