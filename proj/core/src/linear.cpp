#include "nerode/linear.hpp"

#include <string>

#include "nerode/errors.hpp"

namespace nerode {

void LinearSystem::check_dimensions() const {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InputError("A must be square");
  if (b.rows() != n) throw InputError("B must have as many rows as A");
  if (c.cols() != n) throw InputError("C must have as many columns as A");
  if (d.rows() != c.rows()) throw InputError("D and C must have equal rows");
  if (d.cols() != b.cols()) throw InputError("D and B must have equal columns");
}

MarkovSequence markov_parameters(const LinearSystem& sys, std::size_t count) {
  sys.check_dimensions();
  MarkovSequence out;
  out.reserve(count);
  if (count == 0) return out;
  out.push_back(sys.d);
  RationalMatrix power_b = sys.b;  // A^{k-1} B
  for (std::size_t k = 1; k < count; ++k) {
    out.push_back(sys.c * power_b);
    power_b = sys.a * power_b;
  }
  return out;
}

namespace {

void check_markov_shapes(const MarkovSequence& markov) {
  for (const auto& m : markov) {
    if (m.rows() != markov.front().rows() || m.cols() != markov.front().cols()) {
      throw InputError("Markov parameters have inconsistent shapes");
    }
  }
}

// Blocks M_{i+j+1+offset}.
RationalMatrix assemble(const MarkovSequence& markov, std::size_t r,
                        std::size_t c, std::size_t offset) {
  const std::size_t p = markov.front().rows();
  const std::size_t m = markov.front().cols();
  RationalMatrix h(r * p, c * m);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      h.set_block(i * p, j * m, markov[i + j + 1 + offset]);
  return h;
}

void require_terms(const MarkovSequence& markov, std::size_t needed,
                   const char* what) {
  if (markov.size() < needed) {
    throw InputError(std::string(what) + ": need " + std::to_string(needed) +
                     " Markov parameters (M_0 .. M_" +
                     std::to_string(needed - 1) + "), got " +
                     std::to_string(markov.size()));
  }
}

// Rank at (r, c) after checking it equals the rank at (r+1, c+1).
std::size_t saturated_rank(const MarkovSequence& markov, std::size_t r,
                           std::size_t c) {
  if (r == 0 || c == 0) throw InputError("block dimensions must be positive");
  require_terms(markov, r + c + 2, "rank saturation check");
  check_markov_shapes(markov);
  const std::size_t now = rank(assemble(markov, r, c, 0));
  const std::size_t next = rank(assemble(markov, r + 1, c + 1, 0));
  if (now != next) throw OrderUndeterminedError(now, next);
  return now;
}

}  // namespace

HankelMatrix block_hankel(const MarkovSequence& markov, std::size_t r,
                          std::size_t c) {
  if (r == 0 || c == 0) throw InputError("block dimensions must be positive");
  require_terms(markov, r + c, "block_hankel");
  check_markov_shapes(markov);
  return {r, c, markov, assemble(markov, r, c, 0)};
}

RankFactorization rank_factor(const RationalMatrix& h) {
  EchelonForm e = row_reduce(h);
  const std::size_t k = e.rank();
  return {h.select_cols(e.pivots), e.reduced.block(0, 0, k, h.cols()), k,
          e.pivots};
}

LinearSystem ho_kalman(const MarkovSequence& markov, std::size_t r,
                       std::size_t c, std::size_t p, std::size_t m) {
  const std::size_t n = saturated_rank(markov, r, c);
  if (markov.front().rows() != p || markov.front().cols() != m) {
    throw InputError("Markov parameters are not " + std::to_string(p) + " x " +
                     std::to_string(m));
  }

  const RationalMatrix h = assemble(markov, r, c, 0);
  const RationalMatrix shifted = assemble(markov, r, c, 1);
  const RankFactorization f = rank_factor(h);

  // O A R = H shifted. R is the identity on the pivot columns, so picking n
  // independent rows of O leaves a square system O_rows A = H_up(rows, piv).
  const std::vector<std::size_t> rows = row_reduce(f.o.transpose()).pivots;
  const RationalMatrix o_rows = f.o.select_rows(rows);
  const RationalMatrix rhs = shifted.select_rows(rows).select_cols(f.pivot_cols);

  LinearSystem sys;
  sys.a = inverse(o_rows) * rhs;
  sys.b = f.r.block(0, 0, n, m);
  sys.c = f.o.block(0, 0, p, n);
  sys.d = markov.front();
  return sys;
}

std::size_t mcmillan_degree(const MarkovSequence& markov, std::size_t r,
                            std::size_t c) {
  return saturated_rank(markov, r, c);
}

}  // namespace nerode
