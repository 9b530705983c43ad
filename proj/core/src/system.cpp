#include "nerode/system.hpp"

#include <algorithm>
#include <set>

namespace nerode {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  const auto m = static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(((v % m) + m) % m);
}

// |U|^k, or nullopt when it exceeds `cap`.
std::optional<std::size_t> checked_power(std::size_t base, std::size_t k,
                                         std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (base != 0 && r > cap / base) return std::nullopt;
    r *= base;
  }
  return r;
}

constexpr std::size_t kMaxWindowTable = std::size_t{1} << 24;

void check_labels(const std::vector<std::string>& labels, Violation::Kind kind,
                  const char* what, std::vector<Violation>& out) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      out.push_back({kind, std::string("duplicate ") + what + " '" + l + "'"});
    }
  }
}

Alphabet modular_alphabet(std::uint32_t p) { return Alphabet::range(p); }

std::string join_word(const Alphabet& inputs,
                      std::span<const Symbol> word) {
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) s += ',';
    s += inputs.label(word[i]);
  }
  return s;
}

}  // namespace

// MealyMachine

Symbol MealyMachine::output_default() const {
  return output(rest_state, inputs.default_symbol());
}

Alphabet MealyMachine::output_alphabet() const {
  return Alphabet(outputs, outputs.at(output_default()));
}

std::optional<StateId> MealyMachine::find_state(std::string_view label) const {
  auto it = std::find(states.begin(), states.end(), label);
  if (it == states.end()) return std::nullopt;
  return static_cast<StateId>(it - states.begin());
}

MealyMachine tabulate_machine(
    Alphabet inputs, std::vector<std::string> outputs,
    std::vector<std::string> labels, StateId rest,
    const std::function<StateId(StateId, Symbol)>& next,
    const std::function<Symbol(StateId, Symbol)>& emit) {
  MealyMachine m{std::move(inputs), std::move(outputs), std::move(labels),
                 rest, {}, {}};
  const std::size_t k = m.inputs.size();
  m.transition.resize(m.states.size() * k);
  m.emission.resize(m.states.size() * k);
  for (StateId s = 0; s < m.states.size(); ++s) {
    for (Symbol a = 0; a < k; ++a) {
      m.transition[s * k + a] = next(s, a);
      m.emission[s * k + a] = emit(s, a);
    }
  }
  return m;
}

// FiniteWindowSystem

std::size_t FiniteWindowSystem::word_code(std::span<const Symbol> word) const {
  std::size_t code = 0;
  for (Symbol s : word) code = code * inputs.size() + s;
  return code;
}

std::vector<Symbol> FiniteWindowSystem::word_of(std::size_t code) const {
  std::vector<Symbol> word(window);
  for (std::size_t i = window; i-- > 0;) {
    word[i] = static_cast<Symbol>(code % inputs.size());
    code /= inputs.size();
  }
  return word;
}

std::size_t FiniteWindowSystem::word_count() const {
  auto n = checked_power(inputs.size(), window, kMaxWindowTable);
  if (!n) throw CapacityError("window table exceeds size guard");
  return *n;
}

Symbol FiniteWindowSystem::output_default() const {
  return table.at(word_code(
      std::vector<Symbol>(window, inputs.default_symbol())));
}

Alphabet FiniteWindowSystem::output_alphabet() const {
  return Alphabet(outputs, outputs.at(output_default()));
}

// Alphabets

Alphabet input_alphabet(const System& sys) {
  return std::visit(
      overloaded{
          [](const MealyMachine& m) { return m.inputs; },
          [](const FiniteWindowSystem& w) { return w.inputs; },
          [](const ModularLinearSystem& s) {
            return modular_alphabet(s.modulus);
          },
      },
      sys);
}

Alphabet output_alphabet(const System& sys) {
  require_valid(sys);
  return std::visit(
      overloaded{
          [](const MealyMachine& m) { return m.output_alphabet(); },
          [](const FiniteWindowSystem& w) { return w.output_alphabet(); },
          [](const ModularLinearSystem& s) {
            return modular_alphabet(s.modulus);
          },
      },
      sys);
}

// Validation

std::vector<Violation> validate_machine(const MealyMachine& m) {
  std::vector<Violation> out;
  using K = Violation::Kind;
  if (m.states.empty()) out.push_back({K::kNoStates, "machine has no states"});
  if (m.outputs.empty()) {
    out.push_back({K::kEmptyAlphabet, "output alphabet is empty"});
  }
  check_labels(m.states, K::kDuplicateState, "state", out);
  check_labels(m.outputs, K::kDuplicateSymbol, "output symbol", out);

  const std::size_t n = m.states.size();
  const std::size_t k = m.inputs.size();
  if (m.rest_state >= n) {
    out.push_back({K::kRestStateMissing, "rest_state is not a state"});
  }
  for (StateId s = 0; s < n; ++s) {
    for (Symbol a = 0; a < k; ++a) {
      const std::size_t i = s * k + a;
      const std::string where =
          "(state '" + m.states[s] + "', input '" + m.inputs.label(a) + "')";
      if (i >= m.transition.size() || m.transition[i] == kNoState) {
        out.push_back({K::kMissingTransition, "no transition for " + where});
      } else if (m.transition[i] >= n) {
        out.push_back({K::kBadTarget, "transition target out of range for " +
                                          where});
      }
      if (i >= m.emission.size() || m.emission[i] == kNoSymbol) {
        out.push_back({K::kMissingEmission, "no emission for " + where});
      } else if (m.emission[i] >= m.outputs.size()) {
        out.push_back({K::kBadOutput, "emission out of range for " + where});
      }
    }
  }
  if (m.rest_state < n) {
    const std::size_t i = m.rest_state * k + m.inputs.default_symbol();
    if (i < m.transition.size() && m.transition[i] < n &&
        m.transition[i] != m.rest_state) {
      out.push_back({K::kRestNotFixed,
                     "rest_state '" + m.states[m.rest_state] +
                         "' moves to '" + m.states[m.transition[i]] +
                         "' under default input '" + m.inputs.default_label() +
                         "'"});
    }
  }
  return out;
}

std::vector<Violation> validate_window(const FiniteWindowSystem& w) {
  std::vector<Violation> out;
  using K = Violation::Kind;
  if (w.outputs.empty()) {
    out.push_back({K::kEmptyAlphabet, "output alphabet is empty"});
  }
  check_labels(w.outputs, K::kDuplicateSymbol, "output symbol", out);
  if (w.window < 1) {
    out.push_back({K::kBadWindow, "window must be at least 1"});
    return out;
  }
  auto count = checked_power(w.inputs.size(), w.window, kMaxWindowTable);
  if (!count) {
    out.push_back({K::kBadWindow, "window table exceeds size guard"});
    return out;
  }
  for (std::size_t code = 0; code < *count; ++code) {
    if (code >= w.table.size() || w.table[code] == kNoSymbol) {
      out.push_back({K::kMissingTableEntry,
                     "no table entry for word '" +
                         join_word(w.inputs, w.word_of(code)) + "'"});
    } else if (w.table[code] >= w.outputs.size()) {
      out.push_back({K::kBadOutput,
                     "table entry out of range for word '" +
                         join_word(w.inputs, w.word_of(code)) + "'"});
    }
  }
  return out;
}

std::vector<Violation> validate_modular(const ModularLinearSystem& s) {
  std::vector<Violation> out;
  using K = Violation::Kind;
  if (!is_prime(s.modulus)) {
    out.push_back({K::kBadModulus,
                   "modulus " + std::to_string(s.modulus) + " is not prime"});
  }
  const std::size_t n = s.a.size();
  auto shape_ok = [](const IntMatrix& m, std::size_t rows, std::size_t cols) {
    if (m.size() != rows) return false;
    return std::all_of(m.begin(), m.end(),
                       [cols](const auto& r) { return r.size() == cols; });
  };
  if (!shape_ok(s.a, n, n)) out.push_back({K::kBadDimension, "A must be n x n"});
  if (!shape_ok(s.b, n, 1)) out.push_back({K::kBadDimension, "B must be n x 1"});
  if (!shape_ok(s.c, 1, n)) out.push_back({K::kBadDimension, "C must be 1 x n"});
  if (!shape_ok(s.d, 1, 1)) out.push_back({K::kBadDimension, "D must be 1 x 1"});
  return out;
}

std::vector<Violation> validate_system(const System& sys) {
  return std::visit(
      overloaded{
          [](const MealyMachine& m) { return validate_machine(m); },
          [](const FiniteWindowSystem& w) { return validate_window(w); },
          [](const ModularLinearSystem& s) { return validate_modular(s); },
      },
      sys);
}

void require_valid(const MealyMachine& m) {
  auto v = validate_machine(m);
  if (!v.empty()) throw ValidationError(std::move(v));
}

void require_valid(const System& sys) {
  auto v = validate_system(sys);
  if (!v.empty()) throw ValidationError(std::move(v));
}

// Evaluation

namespace {

Index iteration_start(const Sequence& u, Index from) {
  return u.is_constant() ? from : std::min(u.start(), from);
}

std::vector<Symbol> run_mealy(const MealyMachine& m, const Sequence& u,
                              Index from, Index to) {
  std::vector<Symbol> raw;
  raw.reserve(static_cast<std::size_t>(to - from + 1));
  StateId x = m.rest_state;
  for (Index k = iteration_start(u, from); k <= to; ++k) {
    const Symbol a = u.at(k);
    if (k >= from) raw.push_back(m.output(x, a));
    x = m.next(x, a);
  }
  return raw;
}

std::vector<Symbol> run_window(const FiniteWindowSystem& w, const Sequence& u,
                               Index from, Index to) {
  std::vector<Symbol> raw;
  raw.reserve(static_cast<std::size_t>(to - from + 1));
  const auto m = static_cast<Index>(w.window);
  for (Index k = from; k <= to; ++k) {
    std::size_t code = 0;
    for (Index j = k - m + 1; j <= k; ++j) {
      code = code * w.inputs.size() + u.at(j);
    }
    raw.push_back(w.table[code]);
  }
  return raw;
}

std::vector<Symbol> run_modular(const ModularLinearSystem& s, const Sequence& u,
                                Index from, Index to) {
  const std::uint32_t p = s.modulus;
  const std::size_t n = s.order();
  std::vector<std::uint32_t> x(n, 0), next(n);
  std::vector<Symbol> raw;
  raw.reserve(static_cast<std::size_t>(to - from + 1));
  for (Index k = iteration_start(u, from); k <= to; ++k) {
    const std::int64_t a = u.at(k);
    if (k >= from) {
      std::int64_t y = s.d[0][0] * a;
      for (std::size_t j = 0; j < n; ++j) y += s.c[0][j] * x[j];
      raw.push_back(reduce(y, p));
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t v = s.b[i][0] * a;
      for (std::size_t j = 0; j < n; ++j) v += s.a[i][j] * x[j];
      next[i] = reduce(v, p);
    }
    x.swap(next);
  }
  return raw;
}

}  // namespace

Sequence evaluate(const System& sys, const Sequence& u, Index from, Index to) {
  if (from > to) throw InputError("evaluate: from > to");
  require_valid(sys);
  if (!(u.alphabet() == input_alphabet(sys))) {
    throw InputError("evaluate: input sequence is over a different alphabet");
  }
  auto raw = std::visit(
      overloaded{
          [&](const MealyMachine& m) { return run_mealy(m, u, from, to); },
          [&](const FiniteWindowSystem& w) {
            return run_window(w, u, from, to);
          },
          [&](const ModularLinearSystem& s) {
            return run_modular(s, u, from, to);
          },
      },
      sys);
  return Sequence::canonicalize(output_alphabet(sys), from, std::move(raw));
}

// Conversions

MealyMachine window_to_mealy(const FiniteWindowSystem& w) {
  auto violations = validate_window(w);
  if (!violations.empty()) throw ValidationError(std::move(violations));

  const std::size_t k = w.inputs.size();
  const std::size_t hist_len = w.window - 1;
  const std::size_t count = *checked_power(k, hist_len, kMaxWindowTable);

  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    std::vector<Symbol> h(hist_len);
    std::size_t c = code;
    for (std::size_t i = hist_len; i-- > 0;) {
      h[i] = static_cast<Symbol>(c % k);
      c /= k;
    }
    labels.push_back("[" + join_word(w.inputs, h) + "]");
  }

  std::size_t rest = 0;
  for (std::size_t i = 0; i < hist_len; ++i) {
    rest = rest * k + w.inputs.default_symbol();
  }

  return tabulate_machine(
      w.inputs, w.outputs, std::move(labels), static_cast<StateId>(rest),
      [&](StateId h, Symbol a) {
        return static_cast<StateId>((h * k + a) % count);
      },
      [&](StateId h, Symbol a) { return w.table[h * k + a]; });
}

MealyMachine linear_mod_p_to_mealy(const ModularLinearSystem& sys) {
  auto violations = validate_modular(sys);
  if (!violations.empty()) throw ValidationError(std::move(violations));

  const std::uint32_t p = sys.modulus;
  const std::size_t n = sys.order();
  auto count = checked_power(p, n, kMaxModularStates);
  if (!count) {
    throw CapacityError("p^n = " + std::to_string(p) + "^" +
                        std::to_string(n) + " exceeds the enumeration guard");
  }

  auto decode = [&](std::size_t code) {
    std::vector<std::uint32_t> x(n);
    for (std::size_t i = n; i-- > 0;) {
      x[i] = static_cast<std::uint32_t>(code % p);
      code /= p;
    }
    return x;
  };
  auto encode = [&](const std::vector<std::uint32_t>& x) {
    std::size_t code = 0;
    for (auto v : x) code = code * p + v;
    return static_cast<StateId>(code);
  };

  std::vector<std::string> labels;
  labels.reserve(*count);
  for (std::size_t code = 0; code < *count; ++code) {
    auto x = decode(code);
    std::string l = "(";
    for (std::size_t i = 0; i < n; ++i) {
      if (i) l += ',';
      l += std::to_string(x[i]);
    }
    labels.push_back(l + ")");
  }

  std::vector<std::string> outputs = modular_alphabet(p).symbols();
  return tabulate_machine(
      modular_alphabet(p), std::move(outputs), std::move(labels), 0,
      [&](StateId s, Symbol a) {
        auto x = decode(s);
        std::vector<std::uint32_t> y(n);
        for (std::size_t i = 0; i < n; ++i) {
          std::int64_t v = sys.b[i][0] * std::int64_t{a};
          for (std::size_t j = 0; j < n; ++j) v += sys.a[i][j] * x[j];
          y[i] = reduce(v, p);
        }
        return encode(y);
      },
      [&](StateId s, Symbol a) {
        auto x = decode(s);
        std::int64_t v = sys.d[0][0] * std::int64_t{a};
        for (std::size_t j = 0; j < n; ++j) v += sys.c[0][j] * x[j];
        return static_cast<Symbol>(reduce(v, p));
      });
}

MealyMachine to_mealy(const System& sys) {
  return std::visit(
      overloaded{
          [](const MealyMachine& m) {
            require_valid(m);
            return m;
          },
          [](const FiniteWindowSystem& w) { return window_to_mealy(w); },
          [](const ModularLinearSystem& s) {
            return linear_mod_p_to_mealy(s);
          },
      },
      sys);
}

}  // namespace nerode
