#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bohr/series.hpp"

namespace bohr {

// Least-squares estimate of the cyclicity distance
//   delta(F) = inf_p ||1 - p F||
// over the monomial dictionary {zeta^alpha(k) : k in dictionary} with the
// residual measured on coefficient rows n <= M. The finite window drops
// tail rows, so the value underestimates the dictionary-restricted
// distance; (N, M) always travel with the number.
struct DeltaEstimate {
  std::size_t dictionary_size = 0;  // N
  Index window = 0;                 // M
  double value = 0.0;
  std::vector<Complex> coefficients;  // minimizing c, dictionary order
  double conditioning = 0.0;          // |R_NN| / |R_11| from the pivoted QR
  std::ptrdiff_t rank = 0;
};

// Column k of the design matrix is zeta^alpha(k) * F truncated to M rows:
// entry (n, k) = a_{n/k} when k | n. Solved by a rank-revealing
// column-pivoted Householder QR (normal equations are forbidden; the Gram
// matrices of dilation dictionaries condition badly).
DeltaEstimate delta_hat(const BohrSeries& f, std::size_t dictionary_size, Index window);

// Same with an explicit dictionary index list (e.g. a subsemigroup).
DeltaEstimate delta_hat(const BohrSeries& f, const std::vector<Index>& dictionary,
                        Index window);

// One row per N, nonincreasing values (nested dictionaries); a violation
// beyond 1e-10 is reported as a solver diagnostic failure.
std::vector<DeltaEstimate> delta_sweep(const BohrSeries& f,
                                       const std::vector<std::size_t>& dictionary_sizes,
                                       Index window);

// CSV with header N,M,delta_hat,cond.
std::string sweep_csv(const std::vector<DeltaEstimate>& sweep);

}  // namespace bohr
