#include "nerodectl/io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace nerode::io {

namespace {

std::string stage_name(ParseError::Stage s) {
  switch (s) {
    case ParseError::Stage::kSyntax: return "malformed JSON";
    case ParseError::Stage::kSchema: return "schema violation";
    case ParseError::Stage::kInvariant: return "invariant violation";
  }
  return "parse error";
}

std::string describe(ParseError::Stage stage, const std::vector<Issue>& issues) {
  std::string what = stage_name(stage);
  for (const auto& i : issues) {
    what += "\n  ";
    what += i.location.empty() ? "/" : i.location;
    what += ": ";
    what += i.message;
  }
  return what;
}

std::string escape_pointer(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

std::string at(std::string_view base, std::string_view key) {
  return std::string(base) + "/" + escape_pointer(key);
}

[[noreturn]] void schema_error(std::string location, std::string message) {
  throw ParseError(ParseError::Stage::kSchema,
                   {{std::move(location), std::move(message), "schema"}});
}

const Json& member(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) schema_error(at("", key), "missing required key");
  return *it;
}

std::string string_member(const Json& doc, const char* key) {
  const Json& v = member(doc, key);
  if (!v.is_string()) schema_error(at("", key), "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> string_array(const Json& doc, const char* key) {
  const Json& v = member(doc, key);
  if (!v.is_array()) schema_error(at("", key), "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) {
      schema_error(at(at("", key), std::to_string(i)), "expected a string");
    }
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

const Json& object_member(const Json& doc, const char* key) {
  const Json& v = member(doc, key);
  if (!v.is_object()) schema_error(at("", key), "expected an object");
  return v;
}

std::optional<std::size_t> index_in(const std::vector<std::string>& labels,
                                    std::string_view label) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  return std::nullopt;
}

// Alphabet construction failures become invariant issues.
Alphabet input_alphabet_of(const Json& doc) {
  auto symbols = string_array(doc, "inputs");
  auto o = string_member(doc, "default_input");
  try {
    return Alphabet(std::move(symbols), o);
  } catch (const InputError& e) {
    throw ParseError(ParseError::Stage::kInvariant,
                     {{"/inputs", e.what(), "bad-input-alphabet"}});
  }
}

const char* location_of(Violation::Kind kind) {
  using K = Violation::Kind;
  switch (kind) {
    case K::kDuplicateState:
    case K::kNoStates: return "/states";
    case K::kDuplicateSymbol:
    case K::kEmptyAlphabet: return "/outputs";
    case K::kRestStateMissing:
    case K::kRestNotFixed: return "/rest_state";
    case K::kMissingTransition:
    case K::kBadTarget: return "/transitions";
    case K::kMissingEmission:
    case K::kBadOutput: return "/emissions";
    case K::kMissingTableEntry: return "/table";
    case K::kBadWindow: return "/window";
    case K::kBadModulus: return "/modulus";
    case K::kBadDimension: return "";
  }
  return "";
}

void append_violations(const std::vector<Violation>& vs,
                       std::vector<Issue>& out) {
  for (const auto& v : vs) {
    out.push_back({location_of(v.kind), v.message, to_string(v.kind)});
  }
}

LoadedSystem load_mealy(const Json& doc) {
  Alphabet inputs = input_alphabet_of(doc);
  auto outputs = string_array(doc, "outputs");
  auto states = string_array(doc, "states");
  auto rest_label = string_member(doc, "rest_state");
  const Json& transitions = object_member(doc, "transitions");
  const Json& emissions = object_member(doc, "emissions");

  std::vector<Issue> issues;
  const std::size_t k = inputs.size();
  MealyMachine m{inputs, outputs, states, 0,
                 std::vector<StateId>(states.size() * k, kNoState),
                 std::vector<Symbol>(states.size() * k, kNoSymbol)};

  bool rest_known = true;
  if (auto r = index_in(states, rest_label)) {
    m.rest_state = static_cast<StateId>(*r);
  } else {
    rest_known = false;
    m.rest_state = static_cast<StateId>(states.size());
    issues.push_back({"/rest_state",
                      "rest_state '" + rest_label + "' is not in states",
                      to_string(Violation::Kind::kRestStateMissing)});
  }

  auto fill = [&](const Json& table, const char* name, bool is_transition) {
    const std::string base = std::string("/") + name;
    for (const auto& [state_label, row] : table.items()) {
      const std::string row_at = at(base, state_label);
      if (!row.is_object()) schema_error(row_at, "expected an object");
      auto s = index_in(states, state_label);
      if (!s) {
        issues.push_back({row_at, "unknown state '" + state_label + "'",
                          "unknown-state"});
        continue;
      }
      for (const auto& [symbol_label, value] : row.items()) {
        const std::string cell_at = at(row_at, symbol_label);
        if (!value.is_string()) schema_error(cell_at, "expected a string");
        auto a = inputs.find(symbol_label);
        if (!a) {
          issues.push_back({cell_at,
                            "unknown input symbol '" + symbol_label + "'",
                            "unknown-symbol"});
          continue;
        }
        const std::string target = value.get<std::string>();
        const std::size_t slot = *s * k + *a;
        if (is_transition) {
          if (auto t = index_in(states, target)) {
            m.transition[slot] = static_cast<StateId>(*t);
          } else {
            m.transition[slot] = static_cast<StateId>(states.size());
            issues.push_back({cell_at, "unknown target state '" + target + "'",
                              to_string(Violation::Kind::kBadTarget)});
          }
        } else {
          if (auto y = index_in(outputs, target)) {
            m.emission[slot] = static_cast<Symbol>(*y);
          } else {
            m.emission[slot] = static_cast<Symbol>(outputs.size());
            issues.push_back({cell_at, "unknown output symbol '" + target + "'",
                              to_string(Violation::Kind::kBadOutput)});
          }
        }
      }
    }
  };
  fill(transitions, "transitions", true);
  fill(emissions, "emissions", false);

  std::vector<Violation> structural;
  for (auto& v : validate_machine(m)) {
    using K = Violation::Kind;
    // Already reported above with the offending label.
    if (v.kind == K::kBadTarget || v.kind == K::kBadOutput) continue;
    if (v.kind == K::kRestStateMissing && !rest_known) continue;
    structural.push_back(std::move(v));
  }
  append_violations(structural, issues);

  if (auto it = doc.find("default_output_check"); it != doc.end()) {
    if (!it->is_string()) {
      schema_error("/default_output_check", "expected a string");
    }
    if (issues.empty()) {
      const std::string& actual = m.outputs[m.output_default()];
      if (actual != it->get<std::string>()) {
        issues.push_back({"/default_output_check",
                          "declared default output '" +
                              it->get<std::string>() +
                              "' differs from emission(default input, "
                              "rest_state) = '" + actual + "'",
                          "default-output"});
      }
    }
  }
  return {System{std::move(m)}, std::move(issues)};
}

std::vector<std::string> split_word(const std::string& key) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : key) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

LoadedSystem load_window(const Json& doc) {
  Alphabet inputs = input_alphabet_of(doc);
  auto outputs = string_array(doc, "outputs");
  const Json& wv = member(doc, "window");
  if (!wv.is_number_integer() || wv.get<std::int64_t>() < 1) {
    schema_error("/window", "expected a positive integer");
  }
  const Json& table = object_member(doc, "table");

  std::vector<Issue> issues;
  for (const auto& s : inputs.symbols()) {
    if (s.find(',') != std::string::npos) {
      issues.push_back({"/inputs",
                        "input symbol '" + s + "' contains ',' which is the "
                        "word separator",
                        "bad-input-alphabet"});
    }
  }

  FiniteWindowSystem w{inputs, outputs, wv.get<std::size_t>(), {}};
  std::size_t count = 0;
  try {
    count = w.word_count();
  } catch (const CapacityError& e) {
    throw ParseError(ParseError::Stage::kInvariant,
                     {{"/window", e.what(), "bad-window"}});
  }
  w.table.assign(count, kNoSymbol);

  for (const auto& [key, value] : table.items()) {
    const std::string cell_at = at("/table", key);
    if (!value.is_string()) schema_error(cell_at, "expected a string");
    auto parts = split_word(key);
    if (parts.size() != w.window) {
      issues.push_back({cell_at,
                        "word '" + key + "' does not have length " +
                            std::to_string(w.window),
                        "bad-word"});
      continue;
    }
    std::vector<Symbol> word;
    bool ok = true;
    for (const auto& p : parts) {
      auto a = inputs.find(p);
      if (!a) {
        issues.push_back({cell_at, "unknown input symbol '" + p + "'",
                          "unknown-symbol"});
        ok = false;
        break;
      }
      word.push_back(*a);
    }
    if (!ok) continue;
    const std::string y = value.get<std::string>();
    if (auto yi = index_in(outputs, y)) {
      w.table[w.word_code(word)] = static_cast<Symbol>(*yi);
    } else {
      issues.push_back({cell_at, "unknown output symbol '" + y + "'",
                        to_string(Violation::Kind::kBadOutput)});
      w.table[w.word_code(word)] = static_cast<Symbol>(outputs.size());
    }
  }
  std::vector<Violation> structural;
  for (auto& v : validate_window(w)) {
    if (v.kind == Violation::Kind::kBadOutput) continue;
    structural.push_back(std::move(v));
  }
  append_violations(structural, issues);
  return {System{std::move(w)}, std::move(issues)};
}

LoadedSystem load_linear(const Json& doc) {
  RationalMatrix a = matrix_from_json(member(doc, "A"), "/A");
  RationalMatrix b = matrix_from_json(member(doc, "B"), "/B");
  RationalMatrix c = matrix_from_json(member(doc, "C"), "/C");
  RationalMatrix d = matrix_from_json(member(doc, "D"), "/D");
  // An empty JSON array carries no column count; recover it from D.
  if (a.rows() == 0) {
    if (b.rows() == 0) b = RationalMatrix(0, d.cols());
    if (c.cols() == 0) c = RationalMatrix(c.rows() == 0 ? d.rows() : c.rows(), 0);
  }

  std::vector<Issue> issues;
  if (auto it = doc.find("modulus"); it != doc.end()) {
    if (!it->is_number_unsigned()) {
      schema_error("/modulus", "expected a positive integer");
    }
    ModularLinearSystem s;
    s.modulus = it->get<std::uint32_t>();
    auto to_int = [&](const RationalMatrix& m, const char* name) {
      IntMatrix out(m.rows(), std::vector<std::int64_t>(m.cols()));
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
          const Rational& v = m(i, j);
          if (v.get_den() != 1 || !v.get_num().fits_slong_p()) {
            issues.push_back({std::string("/") + name + "/" +
                                  std::to_string(i) + "/" + std::to_string(j),
                              "modular systems need integer entries",
                              "bad-entry"});
            continue;
          }
          out[i][j] = v.get_num().get_si();
        }
      }
      return out;
    };
    s.a = to_int(a, "A");
    s.b = to_int(b, "B");
    s.c = to_int(c, "C");
    s.d = to_int(d, "D");
    append_violations(validate_modular(s), issues);
    return {System{std::move(s)}, std::move(issues)};
  }

  LinearSystem sys{std::move(a), std::move(b), std::move(c), std::move(d)};
  try {
    sys.check_dimensions();
  } catch (const InputError& e) {
    issues.push_back({"", e.what(), to_string(Violation::Kind::kBadDimension)});
  }
  return {std::move(sys), std::move(issues)};
}

}  // namespace

ParseError::ParseError(Stage stage, std::vector<Issue> issues)
    : Error(describe(stage, issues)), stage_(stage), issues_(std::move(issues)) {}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(ParseError::Stage::kSyntax,
                     {{"byte " + std::to_string(e.byte), e.what(), "syntax"}});
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(ParseError::Stage::kSyntax,
                     {{path.string(), "cannot open file", "syntax"}});
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedSystem load_system(const Json& doc) {
  if (!doc.is_object()) schema_error("", "expected a JSON object");
  const std::string type = string_member(doc, "type");
  if (type == "mealy") return load_mealy(doc);
  if (type == "window") return load_window(doc);
  if (type == "linear") return load_linear(doc);
  schema_error("/type", "unknown system type '" + type +
                            "' (expected mealy, window or linear)");
}

ParsedSystem parse_system(const Json& doc) {
  LoadedSystem loaded = load_system(doc);
  if (!loaded.violations.empty()) {
    throw ParseError(ParseError::Stage::kInvariant, std::move(loaded.violations));
  }
  return std::move(loaded.value);
}

ParsedSystem parse_system_text(std::string_view text) {
  return parse_system(parse_json(text));
}

ParsedSystem parse_system_file(const std::filesystem::path& path) {
  return parse_system_text(read_file(path));
}

// Serialization

Json to_json(const MealyMachine& m) {
  Json transitions = Json::object();
  Json emissions = Json::object();
  for (StateId s = 0; s < m.state_count(); ++s) {
    Json trow = Json::object(), erow = Json::object();
    for (Symbol a = 0; a < m.input_count(); ++a) {
      trow[m.inputs.label(a)] = m.states[m.next(s, a)];
      erow[m.inputs.label(a)] = m.outputs[m.output(s, a)];
    }
    transitions[m.states[s]] = std::move(trow);
    emissions[m.states[s]] = std::move(erow);
  }
  return Json{{"type", "mealy"},
              {"inputs", m.inputs.symbols()},
              {"outputs", m.outputs},
              {"default_input", m.inputs.default_label()},
              {"states", m.states},
              {"rest_state", m.states[m.rest_state]},
              {"transitions", std::move(transitions)},
              {"emissions", std::move(emissions)}};
}

Json to_json(const FiniteWindowSystem& w) {
  Json table = Json::object();
  for (std::size_t code = 0; code < w.table.size(); ++code) {
    std::string key;
    const auto word = w.word_of(code);
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (i) key += ',';
      key += w.inputs.label(word[i]);
    }
    table[key] = w.outputs[w.table[code]];
  }
  return Json{{"type", "window"},
              {"inputs", w.inputs.symbols()},
              {"outputs", w.outputs},
              {"default_input", w.inputs.default_label()},
              {"window", w.window},
              {"table", std::move(table)}};
}

Json to_json(const ModularLinearSystem& s) {
  auto mat = [](const IntMatrix& m) {
    Json rows = Json::array();
    for (const auto& r : m) {
      Json row = Json::array();
      for (auto v : r) row.push_back(std::to_string(v));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  return Json{{"type", "linear"}, {"modulus", s.modulus}, {"A", mat(s.a)},
              {"B", mat(s.b)},    {"C", mat(s.c)},        {"D", mat(s.d)}};
}

Json to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.push_back(format_rational(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const LinearSystem& s) {
  return Json{{"type", "linear"},
              {"A", to_json(s.a)},
              {"B", to_json(s.b)},
              {"C", to_json(s.c)},
              {"D", to_json(s.d)}};
}

Json to_json(const System& s) {
  return std::visit([](const auto& v) { return to_json(v); }, s);
}

Json to_json(const ParsedSystem& s) {
  return std::visit([](const auto& v) { return to_json(v); }, s);
}

Json to_json(const Sequence& u) {
  return Json{{"default", u.alphabet().default_label()},
              {"start", u.start()},
              {"values", u.labels()}};
}

Json markov_to_json(const MarkovSequence& markov) {
  Json list = Json::array();
  for (const auto& m : markov) list.push_back(to_json(m));
  return Json{{"markov", std::move(list)}};
}

Sequence sequence_from_json(const Json& doc, const Alphabet& alphabet) {
  if (!doc.is_object()) schema_error("", "expected a sequence object");
  const std::string o = string_member(doc, "default");
  const Json& start = member(doc, "start");
  if (!start.is_number_integer()) schema_error("/start", "expected an integer");
  auto values = string_array(doc, "values");

  std::vector<Issue> issues;
  if (o != alphabet.default_label()) {
    issues.push_back({"/default",
                      "default '" + o + "' differs from the alphabet default '" +
                          alphabet.default_label() + "'",
                      "default-mismatch"});
  }
  std::vector<Symbol> raw;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (auto a = alphabet.find(values[i])) {
      raw.push_back(*a);
    } else {
      issues.push_back({"/values/" + std::to_string(i),
                        "symbol '" + values[i] + "' is not in the alphabet",
                        "unknown-symbol"});
    }
  }
  if (!issues.empty()) {
    throw ParseError(ParseError::Stage::kInvariant, std::move(issues));
  }
  return Sequence::canonicalize(alphabet, start.get<Index>(), std::move(raw));
}

RationalMatrix matrix_from_json(const Json& doc, std::string_view where) {
  const std::string base(where);
  if (!doc.is_array()) schema_error(base, "expected an array of rows");
  const std::size_t rows = doc.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!doc[i].is_array()) {
      schema_error(base + "/" + std::to_string(i), "expected a row array");
    }
    if (i == 0) cols = doc[i].size();
    if (doc[i].size() != cols) {
      schema_error(base + "/" + std::to_string(i), "ragged matrix row");
    }
  }
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const Json& v = doc[i][j];
      const std::string cell = base + "/" + std::to_string(i) + "/" +
                               std::to_string(j);
      if (v.is_number_integer()) {
        m(i, j) = Rational(std::to_string(v.get<std::int64_t>()));
      } else if (v.is_string()) {
        try {
          m(i, j) = parse_rational(v.get<std::string>());
        } catch (const InputError& e) {
          schema_error(cell, e.what());
        }
      } else {
        schema_error(cell, "expected \"p/q\" string or integer");
      }
    }
  }
  return m;
}

MarkovSequence markov_from_json(const Json& doc) {
  const Json* list = &doc;
  std::string base;
  if (doc.is_object()) {
    auto it = doc.find("markov");
    if (it == doc.end()) schema_error("/markov", "missing required key");
    list = &*it;
    base = "/markov";
  }
  if (!list->is_array()) schema_error(base, "expected an array of matrices");
  MarkovSequence out;
  for (std::size_t i = 0; i < list->size(); ++i) {
    out.push_back(matrix_from_json((*list)[i], base + "/" + std::to_string(i)));
  }
  return out;
}

Json report_to_json(const QuotientMapReport& report, const MealyMachine& given,
                    const MealyMachine& minimal) {
  Json map = Json::object();
  for (const auto& [a, pa] : report.map) {
    map[given.states[a]] = minimal.states[pa];
  }
  auto pairs = [&](const std::vector<DiagramViolation>& vs) {
    Json list = Json::array();
    for (const auto& v : vs) {
      list.push_back(Json{{"input", given.inputs.label(v.input)},
                          {"state", given.states[v.state]}});
    }
    return list;
  };
  std::vector<std::string> unmapped;
  for (StateId s : report.unmapped) unmapped.push_back(given.states[s]);
  return Json{{"map", std::move(map)},
              {"surjective", report.surjective},
              {"f_violations", pairs(report.f_violations)},
              {"g_violations", pairs(report.g_violations)},
              {"unmapped", Json(unmapped)}};
}

Json word_to_json(const std::vector<std::string>& word) {
  return Json{{"word", word}};
}

}  // namespace nerode::io
