#pragma once

// Nerode equivalence on finite realizations: behavioral partitions, the
// quotient (minimal) realization, the controllable subset, and the
// surjection from any realization's controllable subset onto the quotient.
//
// Nerode classes are never materialized as sets of input sequences. A class
// is represented by a state of the quotient machine; for a machine with a
// rest state, the class of u at time n is the quotient state reached after
// feeding u(k) for every k < n.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nerode/signal.hpp"
#include "nerode/system.hpp"

namespace nerode {

using StateSet = std::vector<StateId>;

/// Behavioral partition of (a subset of) a machine's states.
struct Partition {
  /// Class id per state of the source machine; -1 for uncovered states.
  std::vector<int> class_of;
  std::size_t class_count = 0;

  bool covers(StateId s) const {
    return s < class_of.size() && class_of[s] >= 0;
  }
  bool same_class(StateId a, StateId b) const {
    return covers(a) && class_of[a] == class_of[b];
  }
  std::vector<StateSet> blocks() const;
};

enum class DomainMode { kRestReachable, kControllable };

const char* to_string(DomainMode mode) noexcept;

struct NerodeRealization {
  /// The quotient machine (f-bar, g-bar on class states). Its states are
  /// labelled "q0", "q1", ... in breadth-first order from the rest class.
  MealyMachine machine;
  /// Source state -> quotient state; nullopt outside the chosen domain.
  std::vector<std::optional<StateId>> projection;
  DomainMode mode = DomainMode::kRestReachable;
};

struct EquivalenceResult {
  bool equivalent = true;
  /// Shortest input word fed from the two rest states whose outputs differ
  /// at its last position. Empty when equivalent.
  std::vector<Symbol> counterexample;
};

struct DiagramViolation {
  Symbol input;
  StateId state;

  friend bool operator==(const DiagramViolation&,
                         const DiagramViolation&) = default;
};

struct QuotientMapReport {
  /// Source state (within X_c) -> quotient state.
  std::map<StateId, StateId> map;
  bool surjective = false;
  /// (b, a) with f-bar(b, P(a)) != P(f(b, a)).
  std::vector<DiagramViolation> f_violations;
  /// (b, a) with g-bar(b, P(a)) != g(b, a).
  std::vector<DiagramViolation> g_violations;
  /// X_c states with no behaviorally equivalent quotient state.
  StateSet unmapped;

  bool holds() const {
    return surjective && f_violations.empty() && g_violations.empty() &&
           unmapped.empty();
  }
};

/// States reachable from rest_state, in breadth-first order with inputs
/// taken in alphabet order.
StateSet reachable_states(const MealyMachine& m);

/// X_c: states admitting a bi-infinite trajectory through them, i.e. the
/// forward closure of all states lying on a directed cycle of the
/// transition graph (all inputs). Sorted by state id.
StateSet controllable_subset(const MealyMachine& m);

/// Moore refinement over the forward closure of `over`; the result covers
/// exactly the states in `over`. Class ids are assigned in order of first
/// appearance along `over`.
Partition partition_refine(const MealyMachine& m, const StateSet& over);

/// Builds the Nerode realization: restrict to the chosen domain, quotient
/// by behavioral equivalence. Throws ValidationError for invalid systems.
NerodeRealization minimize(const System& sys,
                           DomainMode mode = DomainMode::kRestReachable);

/// The quotient state (Nerode class) of u at time n.
StateId state_at(const NerodeRealization& real, const Sequence& u, Index n);

/// u1 ~0 u2 under the realized system.
bool nerode_equivalent(const NerodeRealization& real, const Sequence& u1,
                       const Sequence& u2);

/// Product-machine search from the paired rest states. Throws InputError
/// when the input alphabets or output symbol sets differ.
EquivalenceResult machine_equivalence(const MealyMachine& m1,
                                      const MealyMachine& m2);

/// Computes P-bar on X_c(given) by joint refinement of the disjoint union of
/// `given` and `minimal.machine`, then checks both squares of the
/// commutative diagram. Throws InequivalentError when the machines differ
/// on some finite-support input.
QuotientMapReport quotient_map(const MealyMachine& given,
                               const NerodeRealization& minimal);

}  // namespace nerode
