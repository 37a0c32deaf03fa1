#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "specbound/dense_tensor.hpp"

namespace specbound {

struct HopmSettings {
  std::size_t starts = 32;
  std::size_t max_iters = 1000;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

enum class HopmStop { converged, max_iters };

struct HopmResult {
  double value = 0.0;                        // best |<T, x_1 (x) ... (x) x_d>|
  std::vector<std::vector<double>> factors;  // unit witnesses, one per mode
  std::size_t best_start = 0;
  std::size_t iterations = 0;  // sweeps used by the best start
  HopmStop stopped_by = HopmStop::converged;
};

/// Alternating (higher-order power method) maximization of
/// |<T, x_1 (x) ... (x) x_d>| over unit vectors. Each sweep replaces x_j by
/// the normalized contraction of T with all other factors, for j = 1..d in
/// turn, which never decreases the objective. The result is a lower bound on
/// the spectral norm. Multistart streams are derived from `seed` by start
/// index; ties keep the lowest start index.
HopmResult hopm_spectral_estimate(const DenseTensor& t, const HopmSettings& settings = {});

}  // namespace specbound
