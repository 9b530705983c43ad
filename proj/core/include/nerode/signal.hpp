#pragma once

// Bi-infinite sequences over a finite alphabet and the four basic signal
// operators: shift, projection, concatenation at a time index, and
// insertion of a single value.
//
// A sequence is stored as a finite perturbation of the constant sequence
// that takes the alphabet's default symbol everywhere. Every value is kept
// in canonical form (no leading or trailing default symbols), so
// structural equality coincides with pointwise equality.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nerode {

using Symbol = std::uint32_t;
using Index = std::int64_t;

/// Ordered finite set of symbol labels with one designated default symbol.
/// Cheap to copy; the symbol table is shared and immutable.
class Alphabet {
 public:
  /// Throws InputError when `symbols` is empty, holds duplicates, or does
  /// not contain `default_symbol`.
  Alphabet(std::vector<std::string> symbols, std::string_view default_symbol);

  /// Symbols "0", "1", ..., "k-1" with default "0".
  static Alphabet range(std::size_t k);

  std::size_t size() const noexcept;
  const std::vector<std::string>& symbols() const noexcept;
  const std::string& label(Symbol s) const;
  std::optional<Symbol> find(std::string_view label) const;
  /// Like find(), but throws InputError for unknown labels.
  Symbol index_of(std::string_view label) const;
  Symbol default_symbol() const noexcept;
  const std::string& default_label() const;

  friend bool operator==(const Alphabet& a, const Alphabet& b);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// Index set A used by the projection operator. Only the shapes needed by
/// the signal algebra are supported: half-lines, finite sets, everything.
class IndexSet {
 public:
  enum class Kind { kBefore, kFrom, kFinite, kAll };

  /// {k : k < n}. Z- (k <= 0) is `before(1)`.
  static IndexSet before(Index n);
  /// {k : k >= n}. N0 is `from(0)`.
  static IndexSet from(Index n);
  /// Sorts and deduplicates `indices`.
  static IndexSet finite(std::vector<Index> indices);
  static IndexSet all();

  Kind kind() const noexcept { return kind_; }
  Index bound() const noexcept { return bound_; }
  const std::vector<Index>& indices() const noexcept { return indices_; }

  bool contains(Index k) const;
  /// A + n = {k + n : k in A}.
  IndexSet translated(Index n) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  IndexSet(Kind kind, Index bound, std::vector<Index> indices)
      : kind_(kind), bound_(bound), indices_(std::move(indices)) {}

  Kind kind_;
  Index bound_;
  std::vector<Index> indices_;
};

class Sequence {
 public:
  /// The constant-default sequence.
  explicit Sequence(Alphabet alphabet);

  /// Builds a canonical sequence from a raw window starting at `start`.
  /// Throws InputError if a value is outside the alphabet.
  static Sequence canonicalize(Alphabet alphabet, Index start,
                               std::vector<Symbol> raw);
  static Sequence from_labels(Alphabet alphabet, Index start,
                              const std::vector<std::string>& labels);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  /// First index of the non-default window (0 for the constant sequence).
  Index start() const noexcept { return start_; }
  /// One past the last non-default index.
  Index end() const noexcept {
    return start_ + static_cast<Index>(values_.size());
  }
  std::span<const Symbol> values() const noexcept { return values_; }
  bool is_constant() const noexcept { return values_.empty(); }

  Symbol at(Index k) const noexcept;
  Symbol operator()(Index k) const noexcept { return at(k); }

  std::vector<std::string> labels() const;

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  Sequence(Alphabet alphabet, Index start, std::vector<Symbol> values)
      : alphabet_(std::move(alphabet)),
        start_(start),
        values_(std::move(values)) {}

  Alphabet alphabet_;
  Index start_ = 0;
  std::vector<Symbol> values_;
};

Sequence canonicalize(Index start, std::vector<Symbol> raw,
                      const Alphabet& alphabet);

/// (q^n u)(k) = u(k + n).
Sequence shift(const Sequence& u, Index n);

/// (pi_A u)(k) = u(k) for k in A, default otherwise.
Sequence project(const Sequence& u, const IndexSet& a);

/// u1 for k < n, u2 for k >= n. Throws InputError on alphabet mismatch.
Sequence concat(const Sequence& u1, const Sequence& u2, Index n);

/// u with value `a` at index n. Throws InputError if `a` is not a symbol of
/// u's alphabet.
Sequence insert(const Sequence& u, Symbol a, Index n);

}  // namespace nerode
