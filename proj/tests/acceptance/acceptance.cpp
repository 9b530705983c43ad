// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.
//
// Usage: acceptance [path/to/nerodectl]
// With a nerodectl path, criterion 9 also runs the installed binary and
// compares its stdout with the in-process report.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "nerode/nerode.hpp"
#include "nerodectl/cli.hpp"
#include "nerodectl/io.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace nerode;
using namespace nerode::testing;

namespace {

struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void check(bool ok, const std::function<std::string()>& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = what();
  }
};

struct Outcome {
  std::string summary;
  Tally tally;
  std::size_t min_cases = 0;
};

// A system in the acceptance corpus together with a word-level reference
// that never goes through the engine.
struct CorpusSystem {
  std::string name;
  System system;
  std::function<Word(const Word&)> reference;
};

std::vector<CorpusSystem> build_corpus() {
  std::vector<CorpusSystem> out;
  auto add_machine = [&](std::string name, MealyMachine m) {
    out.push_back({std::move(name), m, [m](const Word& w) { return run_machine(m, w); }});
  };
  auto add_window = [&](std::string name, FiniteWindowSystem w) {
    out.push_back({std::move(name), w, [w](const Word& x) { return run_window(w, x); }});
  };
  auto add_modular = [&](std::string name, ModularLinearSystem s) {
    out.push_back({std::move(name), s, [s](const Word& x) { return run_modular(s, x); }});
  };

  add_machine("delay1", delay1());
  add_machine("redundant-delay1", redundant_delay1());
  add_machine("padded-delay1", padded_delay1());
  add_window("delay2", delay2_window());
  for (std::size_t k = 1; k <= 3; ++k) add_window("identity/" + std::to_string(k), identity_window(k));
  add_modular("parity", parity());
  add_modular("gf2-unobservable", gf2_unobservable());

  // Window systems with |U| <= 3 and m <= 3: every binary-output table when
  // there are at most 4 window words, otherwise 12 random tables per shape.
  Rng rng(9001);
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t m = 1; m <= 3; ++m) {
      FiniteWindowSystem shape{Alphabet::range(k), labels("y", 2), m, {}};
      const std::size_t words = shape.word_count();
      if (words <= 4) {
        for (std::size_t bits = 0; bits < (std::size_t{1} << words); ++bits) {
          FiniteWindowSystem w = shape;
          for (std::size_t i = 0; i < words; ++i) w.table.push_back((bits >> i) & 1);
          add_window("window/k" + std::to_string(k) + "m" + std::to_string(m) + "/" +
                         std::to_string(bits),
                     w);
        }
      } else {
        for (int i = 0; i < 12; ++i)
          add_window("window/k" + std::to_string(k) + "m" + std::to_string(m) + "/r" +
                         std::to_string(i),
                     random_window(rng, k, m, uniform(rng, 2, 3)));
      }
    }
  }

  for (int i = 0; i < 60; ++i) {
    const std::size_t n = uniform(rng, 1, 8), k = uniform(rng, 1, 3);
    add_machine("mealy/" + std::to_string(i),
                i % 3 == 2 ? random_layered_machine(rng, n, uniform(rng, 1, n), k, 3)
                           : random_machine(rng, n, k, uniform(rng, 2, 3)));
  }
  return out;
}

// Criterion 1.
Outcome signal_laws() {
  Outcome o{"signal-algebra laws (projection-shift, shift over concatenation, insertion across concatenation)", {}, 3000};
  Rng rng(101);
  auto show = [](const Sequence& u) { return io::to_json(u).dump(); };
  for (int i = 0; i < 1200; ++i) {
    const Alphabet al = random_alphabet(rng, uniform(rng, 2, 4));
    const Sequence u = random_sequence(rng, al), v = random_sequence(rng, al);
    const Index n = uniform_index(rng, -8, 8), k = uniform_index(rng, -10, 10);
    const Symbol a = static_cast<Symbol>(uniform(rng, 0, al.size() - 1));

    const Sequence l1 = project(shift(u, n), IndexSet::before(1));
    const Sequence r1 = shift(project(u, IndexSet::before(n + 1)), n);
    const Sequence l1b = project(shift(u, n), IndexSet::from(0));
    const Sequence r1b = shift(project(u, IndexSet::from(n)), n);
    bool pointwise = true;
    for (Index j = -30; j <= 30; ++j)
      pointwise = pointwise && l1(j) == r1(j) && l1b(j) == r1b(j);
    o.tally.check(l1 == r1 && l1b == r1b && pointwise, [&] {
      return "projection-shift law, u=" + show(u) + " n=" + std::to_string(n);
    });

    const Sequence l2 = shift(concat(u, v, k), n);
    const Sequence r2 = concat(shift(u, n), shift(v, n), k - n);
    o.tally.check(l2 == r2, [&] {
      return "shift over concatenation, u1=" + show(u) + " u2=" + show(v) +
             " k=" + std::to_string(k) + " n=" + std::to_string(n);
    });

    const Sequence l3 = concat(u, insert(v, a, 0), 0);
    const Sequence r3 = concat(insert(u, a, 0), v, 1);
    o.tally.check(l3 == r3, [&] {
      return "insertion law, u1=" + show(u) + " u2=" + show(v) + " a=" + al.label(a);
    });
  }
  return o;
}

// Criterion 2.
Outcome system_axioms(const std::vector<CorpusSystem>& corpus) {
  Outcome o{"causality and time invariance on every corpus system (500 inputs each)", {}, 500 * corpus.size()};
  Rng rng(202);
  for (const CorpusSystem& c : corpus) {
    const Alphabet al = input_alphabet(c.system);
    for (int i = 0; i < 500; ++i) {
      const Sequence u = random_sequence(rng, al);
      const Index n = uniform_index(rng, -8, 8);
      const bool causal = evaluate(c.system, project(u, IndexSet::before(n + 1)), n, n) ==
                          evaluate(c.system, u, n, n);
      const Index a = uniform_index(rng, -16, 8), b = a + uniform_index(rng, 0, 12);
      const bool invariant = evaluate(c.system, shift(u, n), a, b) ==
                             shift(evaluate(c.system, u, a + n, b + n), n);
      o.tally.check(causal && invariant, [&] {
        return c.name + (causal ? " time invariance" : " causality") + " fails at n=" +
               std::to_string(n);
      });
    }
  }
  return o;
}

// Criterion 3.
Outcome realization_soundness(const std::vector<CorpusSystem>& corpus) {
  Outcome o{"Nerode realization reproduces the I/O map on all words of length <= 6", {}, 0};
  std::size_t machines = 0;
  for (const CorpusSystem& c : corpus) {
    if (std::holds_alternative<MealyMachine>(c.system)) ++machines;
    const NerodeRealization q = minimize(c.system);
    const std::size_t k = input_alphabet(c.system).size();
    for (const Word& w : all_words(k, 6)) {
      o.tally.check(run_machine(q.machine, w) == c.reference(w), [&] {
        return c.name + " differs on a word of length " + std::to_string(w.size());
      });
    }
  }
  o.tally.check(machines >= 50, [&] { return "only " + std::to_string(machines) + " Mealy machines"; });
  o.min_cases = o.tally.cases;
  return o;
}

// Criterion 4.
Outcome minimality() {
  Outcome o{"quotient size equals the pairwise-distinguishability class count (all machines n<=3,|U|<=2,|Y|=2 plus 400 random n<=6,|U|<=3)", {}, 400};
  auto check = [&](const MealyMachine& m, const std::string& tag) {
    const std::size_t got = minimize(m).machine.state_count();
    const std::size_t want = distinct_behaviours(m, dfs_reachable(m));
    o.tally.check(got == want, [&] {
      return tag + ": quotient " + std::to_string(got) + " vs oracle " + std::to_string(want);
    });
  };

  // Exhaustive enumeration of small machines with binary outputs.
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t k = 1; k <= 2; ++k) {
      const std::size_t cells = n * k;
      std::size_t next_count = 1;
      for (std::size_t i = 0; i < cells; ++i) next_count *= n;
      for (std::size_t tcode = 0; tcode < next_count; ++tcode) {
        std::vector<StateId> next(cells);
        std::size_t t = tcode;
        for (auto& x : next) { x = static_cast<StateId>(t % n); t /= n; }
        if (next[0] != 0) continue;  // rest state 0 fixed under symbol 0
        for (std::size_t ecode = 0; ecode < (std::size_t{1} << cells); ++ecode) {
          const MealyMachine m = tabulate_machine(
              Alphabet::range(k), {"0", "1"}, labels("x", n), 0,
              [&](StateId s, Symbol a) { return next[s * k + a]; },
              [&](StateId s, Symbol a) { return static_cast<Symbol>((ecode >> (s * k + a)) & 1); });
          check(m, "enumerated n=" + std::to_string(n));
        }
      }
    }
  }

  Rng rng(404);
  for (int i = 0; i < 400; ++i) {
    const std::size_t n = uniform(rng, 1, 6), k = uniform(rng, 1, 3);
    const MealyMachine m = i % 4 == 3 ? doubled(random_machine(rng, std::max<std::size_t>(n / 2, 1), k, 2))
                                      : random_machine(rng, n, k, uniform(rng, 2, 3));
    check(m, "random #" + std::to_string(i));
  }
  for (const MealyMachine& m : {delay1(), redundant_delay1(), padded_delay1(),
                                window_to_mealy(delay2_window())})
    check(m, "named");
  return o;
}

// Criterion 5.
Outcome quotient_diagram() {
  Outcome o{"quotient map over X_c is surjective with a commuting diagram, |quotient| <= |X_c| (150 pairs)", {}, 100};
  Rng rng(505);
  for (int i = 0; i < 150; ++i) {
    const std::size_t n = uniform(rng, 1, 8), k = uniform(rng, 1, 3);
    const MealyMachine m = i % 3 == 2 ? random_layered_machine(rng, n, uniform(rng, 1, n), k, 2)
                                      : random_machine(rng, n, k, uniform(rng, 2, 3));
    // Every other pair takes its minimal machine from an equivalent but
    // different realization.
    const NerodeRealization q = minimize(i % 2 == 0 ? m : doubled(m), DomainMode::kControllable);
    const QuotientMapReport r = quotient_map(m, q);
    const std::size_t xc = controllable_subset(m).size();
    o.tally.check(r.holds() && q.machine.state_count() <= xc, [&] {
      std::ostringstream s;
      s << "pair #" << i << ": surjective=" << r.surjective << " f=" << r.f_violations.size()
        << " g=" << r.g_violations.size() << " |q|=" << q.machine.state_count() << " |X_c|=" << xc;
      return s.str();
    });
  }
  return o;
}

// Criterion 6.
Outcome controllable(const std::vector<CorpusSystem>& corpus) {
  Outcome o{"X_c equals the predecessor-closure fixed point on every corpus machine (<= 8 states)", {}, 200};
  Rng rng(606);
  auto check = [&](const MealyMachine& m, const std::string& tag) {
    o.tally.check(controllable_subset(m) == backward_infinite_states(m),
                  [&] { return tag + ": sets differ"; });
  };
  for (const CorpusSystem& c : corpus) {
    const MealyMachine m = to_mealy(c.system);
    if (m.state_count() <= 8) check(m, c.name);
  }
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = uniform(rng, 1, 8);
    check(random_layered_machine(rng, n, uniform(rng, 1, n), uniform(rng, 1, 3), 2),
          "layered #" + std::to_string(i));
  }
  return o;
}

// Criterion 7.
Outcome ho_kalman_round_trip() {
  Outcome o{"Ho-Kalman round trip matches 2n+2 Markov parameters and the minimal dimension (60 systems)", {}, 50};
  Rng rng(707);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = uniform(rng, 1, 4), p = uniform(rng, 1, 2), m = uniform(rng, 1, 2);
    const LinearSystem s = random_linear_system(rng, n, p, m);
    const MarkovSequence mk = markov_parameters(s, 2 * n + 4);
    const LinearSystem r = ho_kalman(mk, n + 1, n + 1, p, m);
    const MarkovSequence back = markov_parameters(r, 2 * n + 2);
    const bool match = std::equal(back.begin(), back.end(), mk.begin());
    const std::size_t want = minimal_dimension(s);
    o.tally.check(match && r.order() == want, [&] {
      return "system #" + std::to_string(i) + ": order " + std::to_string(r.order()) +
             " vs oracle " + std::to_string(want) + (match ? "" : ", Markov mismatch");
    });
  }
  return o;
}

// Criterion 8.
Outcome gf2_bridge() {
  Outcome o{"GF(2) SISO quotient has 2^d states with d from the finite-field oracle (40 systems)", {}, 20};
  Rng rng(808);
  std::vector<ModularLinearSystem> systems{gf2_unobservable(), parity()};
  while (systems.size() < 40) systems.push_back(random_gf2_system(rng, uniform(rng, 1, 4)));
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const std::size_t got = minimize(linear_mod_p_to_mealy(systems[i])).machine.state_count();
    const std::size_t want = std::size_t{1} << gf2_hankel_rank(systems[i]);
    o.tally.check(got == want, [&] {
      return "system #" + std::to_string(i) + ": " + std::to_string(got) + " vs " + std::to_string(want);
    });
  }
  return o;
}

std::string fixture(const std::string& name) {
  return std::string(NERODE_FIXTURE_DIR) + "/" + name;
}

std::string run_binary(const std::string& exe, const std::vector<std::string>& args, int& status) {
  std::string cmd = "'" + exe + "'";
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int raw = pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

// Criterion 9.
Outcome cli_contract(const std::string& exe) {
  Outcome o{"CLI exit codes and byte-identical reports on the fixture corpus", {}, 0};
  struct Case {
    std::vector<std::string> args;
    int exit_code;
    std::function<bool(const io::Json&)> check;
  };
  auto result = [](const io::Json& j) { return j.at("result"); };
  const std::vector<Case> cases{
      {{"simulate", "--system", fixture("delay1.json"), "--input", fixture("pulse.json"), "--from", "-2", "--to", "4"}, 0,
       [&](const io::Json& j) { return result(j)["output"]["start"] == 1; }},
      {{"minimize", "--system", fixture("delay2.json"), "--mode", "rest"}, 0,
       [&](const io::Json& j) { return result(j)["states"] == 4; }},
      {{"minimize", "--system", fixture("redundant.json"), "--mode", "xc"}, 0,
       [&](const io::Json& j) { return result(j)["states"] == 2; }},
      {{"minimize", "--system", fixture("gf2_unobservable.json")}, 0,
       [&](const io::Json& j) { return result(j)["states"] == 2; }},
      {{"equiv", "--system", fixture("delay1.json"), "--against", fixture("delay2.json")}, 1,
       [&](const io::Json& j) { return result(j)["counterexample"]["word"].size() == 2; }},
      {{"equiv", "--system", fixture("delay1.json"), "--against", fixture("redundant.json")}, 0, nullptr},
      {{"equiv", "--system", fixture("delay1.json"), "--against", fixture("delay2.json"), "--max-len", "1"}, 0, nullptr},
      {{"quotient", "--system", fixture("redundant.json")}, 0,
       [&](const io::Json& j) {
         return result(j)["surjective"] == true && result(j)["f_violations"].empty() &&
                result(j)["g_violations"].empty();
       }},
      {{"quotient", "--system", fixture("delay2.json"), "--against", fixture("delay1.json")}, 1, nullptr},
      {{"xc", "--system", fixture("redundant.json")}, 0,
       [&](const io::Json& j) { return result(j)["xc"].size() == 4; }},
      {{"nerode-eq", "--system", fixture("delay1.json"), "--u1", fixture("u_saw1.json"), "--u2", fixture("u_saw0.json")}, 1, nullptr},
      {{"nerode-eq", "--system", fixture("delay1.json"), "--u1", fixture("u_saw0.json"), "--u2", fixture("pulse.json")}, 0, nullptr},
      {{"markov", "--system", fixture("half_pole.json"), "--count", "8"}, 0,
       [&](const io::Json& j) { return result(j)["markov"].size() == 8; }},
      {{"markov", "--system", fixture("mimo.json"), "--count", "6"}, 0, nullptr},
      {{"hokalman", "--markov", fixture("markov_delay.json"), "--block-rows", "2", "--block-cols", "2", "--p", "1", "--m", "1"}, 0,
       [&](const io::Json& j) { return result(j)["order"] == 1; }},
      {{"hokalman", "--markov", fixture("markov_two_pole_short.json"), "--block-rows", "1", "--block-cols", "1", "--p", "1", "--m", "1"}, 2, nullptr},
      {{"validate", "--system", fixture("delay1.json")}, 0, nullptr},
      {{"validate", "--system", fixture("window_missing.json")}, 1, nullptr},
      {{"validate", "--system", fixture("bad_rest.json")}, 1, nullptr},
      {{"validate", "--system", fixture("malformed.json")}, 2, nullptr},
      {{"validate", "--system", fixture("no_type.json")}, 2, nullptr},
      {{"minimize", "--system", fixture("missing_transition.json")}, 2, nullptr},
      {{"minimize", "--system", fixture("half_pole.json")}, 2, nullptr},
      {{"simulate", "--system", fixture("delay1.json"), "--input", fixture("pulse.json"), "--from", "3", "--to", "1"}, 2, nullptr},
      {{"minimize", "--system", fixture("absent.json")}, 2, nullptr},
      {{"minimize", "--system", fixture("delay1.json"), "--mode", "sideways"}, 2, nullptr},
      {{"frobnicate"}, 2, nullptr},
      {{}, 2, nullptr},
      {{"--format", "text", "xc", "--system", fixture("delay1.json")}, 0, nullptr},
  };

  for (const Case& c : cases) {
    std::string line;
    for (const auto& a : c.args) line += a.substr(a.find_last_of('/') + 1) + " ";
    const cli::RunReport first = cli::run(c.args), second = cli::run(c.args);
    o.tally.check(first.exit_code == c.exit_code, [&] {
      return line + "exited " + std::to_string(first.exit_code) + ", expected " +
             std::to_string(c.exit_code);
    });
    o.tally.check(first.out == second.out && first.err == second.err && first.exit_code == second.exit_code,
                  [&] { return line + "is not deterministic"; });
    if (c.check) {
      bool ok = false;
      try {
        ok = c.check(io::Json::parse(first.out));
      } catch (const std::exception&) {
        ok = false;
      }
      o.tally.check(ok, [&] { return line + "payload check failed"; });
    }
    if (!exe.empty()) {
      int status = 0;
      const std::string out = run_binary(exe, c.args, status);
      o.tally.check(status == c.exit_code && out == first.out,
                    [&] { return line + "binary output differs from in-process run"; });
    }
  }
  o.min_cases = o.tally.cases;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  const std::vector<CorpusSystem> corpus = build_corpus();

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1", signal_laws},
      {"AC2", [&] { return system_axioms(corpus); }},
      {"AC3", [&] { return realization_soundness(corpus); }},
      {"AC4", minimality},
      {"AC5", quotient_diagram},
      {"AC6", [&] { return controllable(corpus); }},
      {"AC7", ho_kalman_round_trip},
      {"AC8", gf2_bridge},
      {"AC9", [&] { return cli_contract(exe); }},
  };

  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    Outcome o;
    std::string error;
    try {
      o = fn();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool enough = o.tally.cases >= o.min_cases && o.tally.cases > 0;
    const bool pass = error.empty() && o.tally.failures == 0 && enough;
    if (!pass) ++failed;
    std::cout << (pass ? "PASS " : "FAIL ") << id << " " << o.summary << " [" << o.tally.cases
              << " cases";
    if (o.tally.failures > 0) std::cout << ", " << o.tally.failures << " failed; first: " << o.tally.first_failure;
    if (!error.empty()) std::cout << ", threw: " << error;
    if (error.empty() && !enough) std::cout << ", fewer than " << o.min_cases << " required";
    std::cout << "]\n";
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
