#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nerode {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition (alphabet mismatch,
/// symbol outside an alphabet, malformed dimensions, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A size guard was exceeded (e.g. too many states to enumerate).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// The block-Hankel rank has not saturated for the supplied Markov data.
class OrderUndeterminedError : public Error {
 public:
  OrderUndeterminedError(std::size_t rank_rc, std::size_t rank_next)
      : Error("Hankel rank not saturated (" + std::to_string(rank_rc) +
              " at (r, c) vs " + std::to_string(rank_next) +
              " at (r+1, c+1)); supply more Markov parameters"),
        rank_rc_(rank_rc),
        rank_next_(rank_next) {}

  std::size_t rank_rc() const noexcept { return rank_rc_; }
  std::size_t rank_next() const noexcept { return rank_next_; }

 private:
  std::size_t rank_rc_;
  std::size_t rank_next_;
};

struct Violation {
  enum class Kind {
    kEmptyAlphabet,
    kDuplicateSymbol,
    kDuplicateState,
    kNoStates,
    kRestStateMissing,
    kRestNotFixed,
    kMissingTransition,
    kMissingEmission,
    kBadTarget,
    kBadOutput,
    kMissingTableEntry,
    kBadWindow,
    kBadModulus,
    kBadDimension,
  };

  Kind kind;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

const char* to_string(Violation::Kind kind) noexcept;

/// A machine or system failed validation. Carries every violation found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }

 private:
  std::vector<Violation> violations_;
};

/// Two machines expected to be behaviorally equivalent are not.
/// `word()` holds a shortest distinguishing input word, as symbol labels.
class InequivalentError : public Error {
 public:
  explicit InequivalentError(std::vector<std::string> word)
      : Error("machines are not equivalent"), word_(std::move(word)) {}

  const std::vector<std::string>& word() const noexcept { return word_; }

 private:
  std::vector<std::string> word_;
};

}  // namespace nerode
