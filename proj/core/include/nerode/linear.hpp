#pragma once

// Exact Ho-Kalman realization: Markov parameters, block-Hankel assembly,
// rank factorization, and the minimal (A, B, C, D) recovered from Hankel
// data in rational arithmetic.

#include <cstddef>
#include <vector>

#include "nerode/rational_matrix.hpp"

namespace nerode {

/// x(k+1) = A x(k) + B u(k), y(k) = C x(k) + D u(k).
struct LinearSystem {
  RationalMatrix a;  // n x n
  RationalMatrix b;  // n x m
  RationalMatrix c;  // p x n
  RationalMatrix d;  // p x m

  std::size_t order() const noexcept { return a.rows(); }
  std::size_t inputs() const noexcept { return d.cols(); }
  std::size_t outputs() const noexcept { return d.rows(); }

  /// Throws InputError if the four shapes are inconsistent.
  void check_dimensions() const;

  friend bool operator==(const LinearSystem&, const LinearSystem&) = default;
};

using MarkovSequence = std::vector<RationalMatrix>;

/// [M_0, ..., M_{count-1}] with M_0 = D and M_k = C A^{k-1} B.
MarkovSequence markov_parameters(const LinearSystem& sys, std::size_t count);

struct HankelMatrix {
  std::size_t block_rows = 0;
  std::size_t block_cols = 0;
  /// The Markov list the matrix was assembled from (M_0 first).
  MarkovSequence markov;
  /// Block (i, j) equals M_{i+j+1}.
  RationalMatrix assembled;
};

/// Needs M_1 .. M_{r+c-1}, i.e. at least r + c entries counting M_0.
/// Throws InputError when too few are given or shapes disagree.
HankelMatrix block_hankel(const MarkovSequence& markov, std::size_t r,
                          std::size_t c);

/// H = O R with O of full column rank and R of full row rank. O collects
/// the pivot columns of H; R is the nonzero part of H's reduced row-echelon
/// form, so R restricted to `pivot_cols` is the identity.
struct RankFactorization {
  RationalMatrix o;
  RationalMatrix r;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

RankFactorization rank_factor(const RationalMatrix& h);

/// Minimal realization from Markov data. Requires at least r + c + 2
/// entries (M_0 .. M_{r+c+1}) so that rank saturation between the (r, c)
/// and (r+1, c+1) Hankel matrices can be verified; throws
/// OrderUndeterminedError when the ranks differ.
LinearSystem ho_kalman(const MarkovSequence& markov, std::size_t r,
                       std::size_t c, std::size_t p, std::size_t m);

/// Saturated block-Hankel rank, the minimal state dimension. Same data
/// requirements and errors as ho_kalman().
std::size_t mcmillan_degree(const MarkovSequence& markov, std::size_t r,
                            std::size_t c);

}  // namespace nerode
