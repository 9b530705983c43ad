#pragma once

// Decidable classes of causal, time-invariant systems and a uniform
// evaluation oracle for them.
//
// All three classes are defined on finite-support inputs by anchoring the
// state at minus infinity in a rest state that is fixed under the default
// input symbol. For a Mealy machine this is `rest_state`; for a window
// system it is the all-default history; for a modular linear system it is
// the zero vector.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nerode/errors.hpp"
#include "nerode/signal.hpp"

namespace nerode {

using StateId = std::uint32_t;

inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();
inline constexpr Symbol kNoSymbol = std::numeric_limits<Symbol>::max();

/// Finite state-space realization x(n+1) = f(u(n), x(n)),
/// y(n) = g(u(n), x(n)).
///
/// Tables are indexed `[state * inputs.size() + symbol]`. Entries may hold
/// kNoState / kNoSymbol while a machine is being assembled; such a machine
/// fails validate_machine() and is rejected by every engine operation.
struct MealyMachine {
  Alphabet inputs;
  std::vector<std::string> outputs;
  std::vector<std::string> states;
  StateId rest_state = 0;
  std::vector<StateId> transition;
  std::vector<Symbol> emission;

  std::size_t state_count() const noexcept { return states.size(); }
  std::size_t input_count() const noexcept { return inputs.size(); }

  StateId next(StateId s, Symbol a) const {
    return transition[s * inputs.size() + a];
  }
  Symbol output(StateId s, Symbol a) const {
    return emission[s * inputs.size() + a];
  }

  /// g(o, rest_state); the output seen on the constant-default input.
  Symbol output_default() const;
  /// Output symbols with output_default() as the default.
  Alphabet output_alphabet() const;

  std::optional<StateId> find_state(std::string_view label) const;
};

/// Builds a machine by tabulating `next` and `emit` over every
/// (state, input) pair. States are labelled by `labels`.
MealyMachine tabulate_machine(
    Alphabet inputs, std::vector<std::string> outputs,
    std::vector<std::string> labels, StateId rest,
    const std::function<StateId(StateId, Symbol)>& next,
    const std::function<Symbol(StateId, Symbol)>& emit);

/// y(n) = table(u(n-m+1), ..., u(n)).
struct FiniteWindowSystem {
  Alphabet inputs;
  std::vector<std::string> outputs;
  std::size_t window = 1;
  /// Indexed by word_code(); kNoSymbol marks a missing entry.
  std::vector<Symbol> table;

  /// Big-endian base-|U| code of a length-`window` word (oldest symbol
  /// most significant).
  std::size_t word_code(std::span<const Symbol> word) const;
  std::vector<Symbol> word_of(std::size_t code) const;
  std::size_t word_count() const;

  Symbol output_default() const;
  Alphabet output_alphabet() const;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Single-input single-output linear system over the prime field Z_p:
/// x(n+1) = A x(n) + B u(n), y(n) = C x(n) + D u(n) (all mod p).
/// Inputs and outputs are the alphabet {"0", ..., "p-1"} with default "0".
struct ModularLinearSystem {
  std::uint32_t modulus = 2;
  IntMatrix a;  // n x n
  IntMatrix b;  // n x 1
  IntMatrix c;  // 1 x n
  IntMatrix d;  // 1 x 1

  std::size_t order() const noexcept { return a.size(); }
};

using System = std::variant<MealyMachine, FiniteWindowSystem,
                            ModularLinearSystem>;

Alphabet input_alphabet(const System& sys);
Alphabet output_alphabet(const System& sys);

/// Returns y = T u on [from, to]; indices outside the window take the output
/// default. Throws InputError on alphabet mismatch or from > to, and
/// ValidationError for an invalid system.
Sequence evaluate(const System& sys, const Sequence& u, Index from, Index to);

/// Empty iff every MealyMachine invariant holds.
std::vector<Violation> validate_machine(const MealyMachine& m);
std::vector<Violation> validate_window(const FiniteWindowSystem& w);
std::vector<Violation> validate_modular(const ModularLinearSystem& s);
std::vector<Violation> validate_system(const System& sys);

/// Throws ValidationError listing every violation.
void require_valid(const MealyMachine& m);
void require_valid(const System& sys);

/// States are the length-(m-1) input histories in word-code order,
/// labelled "[a,b,...]".
MealyMachine window_to_mealy(const FiniteWindowSystem& w);

/// Largest p^n accepted by linear_mod_p_to_mealy.
inline constexpr std::uint64_t kMaxModularStates = 1u << 16;

/// Enumerates (Z_p)^n in lexicographic order; states are labelled
/// "(x1,...,xn)". Throws CapacityError when p^n > kMaxModularStates and
/// ValidationError when p is not prime or dimensions disagree.
MealyMachine linear_mod_p_to_mealy(const ModularLinearSystem& sys);

/// Converts any system into an equivalent Mealy machine.
MealyMachine to_mealy(const System& sys);

}  // namespace nerode
