#pragma once

// Brute-force reference computations. None of these call into the engine
// or the linear-algebra routines under test beyond plain data access and
// matrix multiplication, so they can serve as independent oracles.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "nerode/nerode.hpp"

namespace nerode::testing {

using Word = std::vector<Symbol>;

/// Every word over {0..k-1} of length 0..max_len, shortest first.
inline std::vector<Word> all_words(std::size_t k, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Symbol a = 0; a < k; ++a) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

inline Word run_from(const MealyMachine& m, StateId s, const Word& word) {
  Word out;
  for (Symbol a : word) {
    out.push_back(m.output(s, a));
    s = m.next(s, a);
  }
  return out;
}

inline Word run_machine(const MealyMachine& m, const Word& word) {
  return run_from(m, m.rest_state, word);
}

/// Output of a window system on `word` fed from rest: the history before
/// the first symbol is all default.
inline Word run_window(const FiniteWindowSystem& w, const Word& word) {
  const std::size_t k = w.inputs.size();
  Word padded(w.window - 1, w.inputs.default_symbol());
  padded.insert(padded.end(), word.begin(), word.end());
  Word out;
  for (std::size_t n = 0; n < word.size(); ++n) {
    std::size_t code = 0;
    for (std::size_t i = 0; i < w.window; ++i) code = code * k + padded[n + i];
    out.push_back(w.table[code]);
  }
  return out;
}

inline Word run_modular(const ModularLinearSystem& s, const Word& word) {
  const std::int64_t p = s.modulus;
  const std::size_t n = s.order();
  std::vector<std::int64_t> x(n, 0);
  Word out;
  for (Symbol u : word) {
    std::int64_t y = s.d[0][0] * u;
    for (std::size_t j = 0; j < n; ++j) y += s.c[0][j] * x[j];
    out.push_back(static_cast<Symbol>(((y % p) + p) % p));
    std::vector<std::int64_t> nx(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t v = s.b[i][0] * u;
      for (std::size_t j = 0; j < n; ++j) v += s.a[i][j] * x[j];
      nx[i] = ((v % p) + p) % p;
    }
    x = std::move(nx);
  }
  return out;
}

/// Recursive depth-first reachability from the rest state, sorted.
inline StateSet dfs_reachable(const MealyMachine& m) {
  std::vector<bool> seen(m.state_count(), false);
  std::function<void(StateId)> visit = [&](StateId s) {
    if (seen[s]) return;
    seen[s] = true;
    for (Symbol a = 0; a < m.input_count(); ++a) visit(m.next(s, a));
  };
  visit(m.rest_state);
  StateSet out;
  for (StateId s = 0; s < m.state_count(); ++s)
    if (seen[s]) out.push_back(s);
  return out;
}

/// States with an infinite backward history: repeatedly discard states that
/// have no predecessor among the survivors. Sorted.
inline StateSet backward_infinite_states(const MealyMachine& m) {
  std::vector<bool> alive(m.state_count(), true);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<bool> has_pred(m.state_count(), false);
    for (StateId s = 0; s < m.state_count(); ++s) {
      if (!alive[s]) continue;
      for (Symbol a = 0; a < m.input_count(); ++a) has_pred[m.next(s, a)] = true;
    }
    for (StateId s = 0; s < m.state_count(); ++s) {
      if (alive[s] && !has_pred[s]) {
        alive[s] = false;
        changed = true;
      }
    }
  }
  StateSet out;
  for (StateId s = 0; s < m.state_count(); ++s)
    if (alive[s]) out.push_back(s);
  return out;
}

inline bool distinguishable(const MealyMachine& m, StateId s, StateId t,
                            const std::vector<Word>& words) {
  for (const Word& w : words)
    if (run_from(m, s, w) != run_from(m, t, w)) return true;
  return false;
}

/// Number of behaviorally distinct states within `over`, comparing every
/// word of length up to max(|X| - 1, 1).
inline std::size_t distinct_behaviours(const MealyMachine& m,
                                       const StateSet& over) {
  const std::size_t len = std::max<std::size_t>(m.state_count() - 1, 1);
  const auto words = all_words(m.input_count(), len);
  std::vector<StateId> reps;
  for (StateId s : over) {
    const bool fresh = std::none_of(reps.begin(), reps.end(), [&](StateId r) {
      return !distinguishable(m, s, r, words);
    });
    if (fresh) reps.push_back(s);
  }
  return reps.size();
}

/// Rank over GF(2) of rows packed into bitmasks.
inline std::size_t gf2_rank(std::vector<std::uint64_t> rows) {
  std::size_t rank = 0;
  for (int bit = 63; bit >= 0; --bit) {
    const std::uint64_t mask = std::uint64_t{1} << bit;
    auto pivot = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank),
                              rows.end(),
                              [&](std::uint64_t r) { return (r & mask) != 0; });
    if (pivot == rows.end()) continue;
    std::swap(*pivot, rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && (rows[i] & mask)) rows[i] ^= rows[rank];
    ++rank;
  }
  return rank;
}

/// Rank of the n x n Hankel matrix h(i, j) = C A^(i+j) B over GF(2). The
/// reachable states of a SISO GF(2) system collapse to 2^rank behaviours.
inline std::size_t gf2_hankel_rank(const ModularLinearSystem& s) {
  const std::size_t n = s.order();
  std::vector<std::uint64_t> seq;  // C A^k B for k < 2n
  std::vector<std::int64_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = s.b[i][0] & 1;
  for (std::size_t k = 0; k < 2 * n; ++k) {
    std::int64_t y = 0;
    for (std::size_t j = 0; j < n; ++j) y ^= (s.c[0][j] & v[j]) & 1;
    seq.push_back(static_cast<std::uint64_t>(y));
    std::vector<std::int64_t> nv(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) nv[i] ^= (s.a[i][j] & v[j]) & 1;
    v = std::move(nv);
  }
  std::vector<std::uint64_t> rows(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (seq[i + j]) rows[i] |= std::uint64_t{1} << j;
  return gf2_rank(rows);
}

/// Rank by fraction-free (Bareiss) elimination over the integers after
/// clearing denominators row by row.
inline std::size_t bareiss_rank(const RationalMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      mpz_class d = m(i, j).get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t j = 0; j < cols; ++j) {
      mpq_class scaled = m(i, j) * mpq_class(l);
      a[i][j] = scaled.get_num();
    }
  }
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

inline RationalMatrix power(const RationalMatrix& a, std::size_t k) {
  RationalMatrix out = RationalMatrix::identity(a.rows());
  for (std::size_t i = 0; i < k; ++i) out = out * a;
  return out;
}

/// M_0 = D, M_k = C A^(k-1) B, each power rebuilt from scratch.
inline MarkovSequence markov_by_powers(const LinearSystem& sys,
                                       std::size_t count) {
  MarkovSequence out;
  for (std::size_t k = 0; k < count; ++k)
    out.push_back(k == 0 ? sys.d : sys.c * power(sys.a, k - 1) * sys.b);
  return out;
}

/// rank(O * R) with O = [C; CA; ...; CA^(n-1)] and R = [B, AB, ...,
/// A^(n-1)B]: the dimension of a minimal realization.
inline std::size_t minimal_dimension(const LinearSystem& sys) {
  const std::size_t n = sys.order();
  if (n == 0) return 0;
  const std::size_t p = sys.outputs(), m = sys.inputs();
  RationalMatrix obs(n * p, n), ctrb(n, n * m);
  for (std::size_t k = 0; k < n; ++k) {
    const RationalMatrix ak = power(sys.a, k);
    const RationalMatrix ck = sys.c * ak;
    const RationalMatrix bk = ak * sys.b;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < n; ++j) obs(k * p + i, j) = ck(i, j);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) ctrb(i, k * m + j) = bk(i, j);
  }
  return bareiss_rank(obs * ctrb);
}

}  // namespace nerode::testing
