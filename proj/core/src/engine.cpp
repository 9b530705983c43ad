#include "nerode/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace nerode {

const char* to_string(DomainMode mode) noexcept {
  return mode == DomainMode::kRestReachable ? "rest" : "xc";
}

std::vector<StateSet> Partition::blocks() const {
  std::vector<StateSet> out(class_count);
  for (StateId s = 0; s < class_of.size(); ++s) {
    if (class_of[s] >= 0) out[static_cast<std::size_t>(class_of[s])].push_back(s);
  }
  return out;
}

namespace {

StateSet forward_closure(const MealyMachine& m, const StateSet& seeds) {
  std::vector<bool> seen(m.state_count(), false);
  std::deque<StateId> queue;
  StateSet order;
  for (StateId s : seeds) {
    if (!seen[s]) {
      seen[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    order.push_back(s);
    for (Symbol a = 0; a < m.input_count(); ++a) {
      StateId t = m.next(s, a);
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  return order;
}

// Marks every state that lies on a directed cycle (nontrivial strongly
// connected component, or a self-loop). Iterative Tarjan.
std::vector<bool> cycle_states(const MealyMachine& m) {
  const std::size_t n = m.state_count();
  const std::size_t k = m.input_count();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false), on_cycle(n, false);
  std::vector<StateId> stack;
  std::size_t counter = 0;

  struct Frame {
    StateId state;
    Symbol next_input;
  };
  for (StateId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next_input < k) {
        StateId t = m.next(f.state, f.next_input++);
        if (t == f.state) on_cycle[t] = true;
        if (index[t] == kUnvisited) {
          index[t] = low[t] = counter++;
          stack.push_back(t);
          on_stack[t] = true;
          call.push_back({t, 0});
        } else if (on_stack[t]) {
          low[f.state] = std::min(low[f.state], index[t]);
        }
        continue;
      }
      const StateId v = f.state;
      call.pop_back();
      if (!call.empty()) {
        StateId parent = call.back().state;
        low[parent] = std::min(low[parent], low[v]);
      }
      if (low[v] == index[v]) {
        std::vector<StateId> component;
        StateId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        if (component.size() > 1) {
          for (StateId s : component) on_cycle[s] = true;
        }
      }
    }
  }
  return on_cycle;
}

std::vector<std::string> output_labels_of(const MealyMachine& m) {
  auto labels = m.outputs;
  std::sort(labels.begin(), labels.end());
  return labels;
}

}  // namespace

StateSet reachable_states(const MealyMachine& m) {
  require_valid(m);
  return forward_closure(m, {m.rest_state});
}

StateSet controllable_subset(const MealyMachine& m) {
  require_valid(m);
  const auto on_cycle = cycle_states(m);
  StateSet seeds;
  for (StateId s = 0; s < m.state_count(); ++s) {
    if (on_cycle[s]) seeds.push_back(s);
  }
  StateSet xc = forward_closure(m, seeds);
  std::sort(xc.begin(), xc.end());
  return xc;
}

Partition partition_refine(const MealyMachine& m, const StateSet& over) {
  require_valid(m);
  for (StateId s : over) {
    if (s >= m.state_count()) throw InputError("partition_refine: bad state");
  }
  StateSet closure = forward_closure(m, over);
  std::sort(closure.begin(), closure.end());

  const std::size_t k = m.input_count();
  std::vector<int> cls(m.state_count(), -1);
  std::size_t count = 0;
  {
    std::map<std::vector<Symbol>, int> ids;
    for (StateId s : closure) {
      std::vector<Symbol> row(k);
      for (Symbol a = 0; a < k; ++a) row[a] = m.output(s, a);
      auto [it, fresh] = ids.emplace(std::move(row), static_cast<int>(ids.size()));
      cls[s] = it->second;
    }
    count = ids.size();
  }
  for (;;) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> refined(m.state_count(), -1);
    for (StateId s : closure) {
      std::vector<int> key(k + 1);
      key[0] = cls[s];
      for (Symbol a = 0; a < k; ++a) key[a + 1] = cls[m.next(s, a)];
      auto [it, fresh] = ids.emplace(std::move(key), static_cast<int>(ids.size()));
      refined[s] = it->second;
    }
    cls.swap(refined);
    if (ids.size() == count) break;
    count = ids.size();
  }

  Partition p;
  p.class_of.assign(m.state_count(), -1);
  std::map<int, int> renumber;
  for (StateId s : over) {
    auto [it, fresh] = renumber.emplace(cls[s], static_cast<int>(renumber.size()));
    p.class_of[s] = it->second;
  }
  p.class_count = renumber.size();
  return p;
}

NerodeRealization minimize(const System& sys, DomainMode mode) {
  MealyMachine m = to_mealy(sys);
  const StateSet domain = mode == DomainMode::kRestReachable
                              ? reachable_states(m)
                              : controllable_subset(m);
  const Partition p = partition_refine(m, domain);
  const std::size_t k = m.input_count();

  std::vector<StateId> rep(p.class_count, kNoState);
  for (StateId s : domain) {
    auto c = static_cast<std::size_t>(p.class_of[s]);
    if (rep[c] == kNoState) rep[c] = s;
  }
  auto class_next = [&](std::size_t c, Symbol a) {
    return static_cast<std::size_t>(p.class_of[m.next(rep[c], a)]);
  };

  // Breadth-first numbering from the rest class, then any classes not
  // reachable from it (controllable mode) in class order.
  std::vector<StateId> number(p.class_count, kNoState);
  std::vector<std::size_t> order;
  auto visit_from = [&](std::size_t root) {
    if (number[root] != kNoState) return;
    std::deque<std::size_t> queue{root};
    number[root] = static_cast<StateId>(order.size());
    order.push_back(root);
    while (!queue.empty()) {
      std::size_t c = queue.front();
      queue.pop_front();
      for (Symbol a = 0; a < k; ++a) {
        std::size_t t = class_next(c, a);
        if (number[t] == kNoState) {
          number[t] = static_cast<StateId>(order.size());
          order.push_back(t);
          queue.push_back(t);
        }
      }
    }
  };
  visit_from(static_cast<std::size_t>(p.class_of[m.rest_state]));
  for (std::size_t c = 0; c < p.class_count; ++c) visit_from(c);

  std::vector<std::string> labels;
  labels.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    labels.push_back("q" + std::to_string(i));
  }

  NerodeRealization real{
      tabulate_machine(
          m.inputs, m.outputs, std::move(labels), 0,
          [&](StateId q, Symbol a) { return number[class_next(order[q], a)]; },
          [&](StateId q, Symbol a) { return m.output(rep[order[q]], a); }),
      std::vector<std::optional<StateId>>(m.state_count()), mode};
  for (StateId s : domain) {
    real.projection[s] = number[static_cast<std::size_t>(p.class_of[s])];
  }
  return real;
}

StateId state_at(const NerodeRealization& real, const Sequence& u, Index n) {
  const MealyMachine& q = real.machine;
  if (!(u.alphabet() == q.inputs)) {
    throw InputError("state_at: input sequence is over a different alphabet");
  }
  StateId x = q.rest_state;
  for (Index k = u.start(); k < std::min(n, u.end()); ++k) {
    x = q.next(x, u.at(k));
  }
  // Past the support every input is the default symbol. The rest class is
  // fixed under it, but other classes need not be.
  for (Index k = std::max(u.end(), u.start()); k < n; ++k) {
    x = q.next(x, u.alphabet().default_symbol());
  }
  return x;
}

bool nerode_equivalent(const NerodeRealization& real, const Sequence& u1,
                       const Sequence& u2) {
  return state_at(real, u1, 0) == state_at(real, u2, 0);
}

EquivalenceResult machine_equivalence(const MealyMachine& m1,
                                      const MealyMachine& m2) {
  require_valid(m1);
  require_valid(m2);
  if (!(m1.inputs == m2.inputs)) {
    throw InputError("machine_equivalence: input alphabets differ");
  }
  if (output_labels_of(m1) != output_labels_of(m2)) {
    throw InputError("machine_equivalence: output alphabets differ");
  }

  using Pair = std::pair<StateId, StateId>;
  struct Back {
    Pair parent;
    Symbol input;
  };
  std::map<Pair, Back> parent;
  std::deque<Pair> queue;
  const Pair start{m1.rest_state, m2.rest_state};
  parent.emplace(start, Back{start, kNoSymbol});
  queue.push_back(start);

  auto word_to = [&](Pair at) {
    std::vector<Symbol> word;
    while (at != start) {
      const Back& b = parent.at(at);
      word.push_back(b.input);
      at = b.parent;
    }
    std::reverse(word.begin(), word.end());
    return word;
  };

  while (!queue.empty()) {
    Pair cur = queue.front();
    queue.pop_front();
    for (Symbol a = 0; a < m1.input_count(); ++a) {
      if (m1.outputs[m1.output(cur.first, a)] !=
          m2.outputs[m2.output(cur.second, a)]) {
        auto word = word_to(cur);
        word.push_back(a);
        return {false, std::move(word)};
      }
      Pair nxt{m1.next(cur.first, a), m2.next(cur.second, a)};
      if (parent.emplace(nxt, Back{cur, a}).second) queue.push_back(nxt);
    }
  }
  return {true, {}};
}

QuotientMapReport quotient_map(const MealyMachine& given,
                               const NerodeRealization& minimal) {
  const MealyMachine& q = minimal.machine;
  if (auto eq = machine_equivalence(given, q); !eq.equivalent) {
    std::vector<std::string> word;
    for (Symbol a : eq.counterexample) word.push_back(given.inputs.label(a));
    throw InequivalentError(std::move(word));
  }

  // Disjoint union: given's states first, then the quotient's. Outputs are
  // matched by label.
  const auto n1 = static_cast<StateId>(given.state_count());
  const std::size_t k = given.input_count();
  std::vector<std::string> outputs = given.outputs;
  std::vector<Symbol> q_out(q.outputs.size());
  for (std::size_t i = 0; i < q.outputs.size(); ++i) {
    auto it = std::find(outputs.begin(), outputs.end(), q.outputs[i]);
    q_out[i] = static_cast<Symbol>(it - outputs.begin());
  }
  std::vector<std::string> labels;
  for (const auto& s : given.states) labels.push_back("g:" + s);
  for (const auto& s : q.states) labels.push_back("m:" + s);
  const MealyMachine joint = tabulate_machine(
      given.inputs, outputs, std::move(labels), given.rest_state,
      [&](StateId s, Symbol a) {
        return s < n1 ? given.next(s, a) : n1 + q.next(s - n1, a);
      },
      [&](StateId s, Symbol a) {
        return s < n1 ? given.output(s, a) : q_out[q.output(s - n1, a)];
      });

  StateSet all(joint.state_count());
  for (StateId s = 0; s < all.size(); ++s) all[s] = s;
  const Partition p = partition_refine(joint, all);

  std::vector<StateId> quotient_of_class(p.class_count, kNoState);
  for (StateId s = static_cast<StateId>(q.state_count()); s-- > 0;) {
    quotient_of_class[static_cast<std::size_t>(p.class_of[n1 + s])] = s;
  }

  QuotientMapReport report;
  const StateSet xc = controllable_subset(given);
  for (StateId a : xc) {
    StateId target = quotient_of_class[static_cast<std::size_t>(p.class_of[a])];
    if (target == kNoState) {
      report.unmapped.push_back(a);
    } else {
      report.map.emplace(a, target);
    }
  }

  for (const auto& [a, pa] : report.map) {
    for (Symbol b = 0; b < k; ++b) {
      auto it = report.map.find(given.next(a, b));
      if (it == report.map.end() || q.next(pa, b) != it->second) {
        report.f_violations.push_back({b, a});
      }
      if (q.outputs[q.output(pa, b)] != given.outputs[given.output(a, b)]) {
        report.g_violations.push_back({b, a});
      }
    }
  }

  std::set<StateId> image;
  for (const auto& [a, pa] : report.map) image.insert(pa);
  report.surjective = image.size() == q.state_count();
  return report;
}

}  // namespace nerode
