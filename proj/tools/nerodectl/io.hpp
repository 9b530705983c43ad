#pragma once

// JSON file formats for sequences, machines, window systems, linear systems,
// Markov lists and quotient-map reports.
//
// Serialization is canonical: object keys are sorted lexicographically and
// arrays follow declared alphabet/state order, so identical values always
// produce identical bytes.

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "nerode/nerode.hpp"

namespace nerode::io {

using Json = nlohmann::json;

struct Issue {
  /// JSON pointer into the offending document ("" for the root).
  std::string location;
  std::string message;
  /// Violation kind name for invariant issues, "schema" or "syntax"
  /// otherwise.
  std::string kind;
};

/// Malformed JSON, a schema violation, or broken invariants. Carries every
/// issue that was found, not just the first.
class ParseError : public Error {
 public:
  enum class Stage { kSyntax, kSchema, kInvariant };

  ParseError(Stage stage, std::vector<Issue> issues);

  Stage stage() const noexcept { return stage_; }
  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  Stage stage_;
  std::vector<Issue> issues_;
};

using ParsedSystem = std::variant<System, LinearSystem>;

/// Result of reading a system document without rejecting invariant
/// violations. Schema and syntax problems still throw ParseError.
struct LoadedSystem {
  ParsedSystem value;
  std::vector<Issue> violations;
};

LoadedSystem load_system(const Json& doc);

/// Throws ParseError (stage kInvariant) when any invariant is violated.
ParsedSystem parse_system(const Json& doc);
ParsedSystem parse_system_text(std::string_view text);
ParsedSystem parse_system_file(const std::filesystem::path& path);

/// Reads a whole file; throws ParseError (stage kSyntax) if unreadable.
std::string read_file(const std::filesystem::path& path);
Json parse_json(std::string_view text);

Json to_json(const MealyMachine& m);
Json to_json(const FiniteWindowSystem& w);
Json to_json(const ModularLinearSystem& s);
Json to_json(const LinearSystem& s);
Json to_json(const System& s);
Json to_json(const ParsedSystem& s);
Json to_json(const Sequence& u);
Json to_json(const RationalMatrix& m);
Json markov_to_json(const MarkovSequence& markov);

/// The sequence's default must be the alphabet's default symbol.
Sequence sequence_from_json(const Json& doc, const Alphabet& alphabet);
RationalMatrix matrix_from_json(const Json& doc, std::string_view where);
/// Accepts a bare array of matrices or {"markov": [...]}.
MarkovSequence markov_from_json(const Json& doc);

Json report_to_json(const QuotientMapReport& report, const MealyMachine& given,
                    const MealyMachine& minimal);
Json word_to_json(const std::vector<std::string>& word);

}  // namespace nerode::io
