#include "specbound/hopm.hpp"

#include <cmath>

#include "specbound/parallel.hpp"
#include "specbound/rng.hpp"
#include "specbound/summation.hpp"
#include "specbound/tensor.hpp"

namespace specbound {
namespace {

HopmResult run_start(const DenseTensor& t, const HopmSettings& settings, std::size_t start) {
  const std::size_t d = t.order();
  CounterRng rng(settings.seed, start);
  HopmResult r;
  r.best_start = start;
  r.factors.reserve(d);
  for (std::size_t k = 0; k < d; ++k) r.factors.push_back(random_unit_vector(rng, t.dim(k)));

  if (d == 1) {
    const double nv = hs_norm(t);
    if (nv > 0.0) {
      for (std::size_t i = 0; i < t.size(); ++i) r.factors[0][i] = t.data()[i] / nv;
    }
    r.value = nv;
    r.iterations = 1;
    return r;
  }

  double objective = std::abs(compensated_dot(contract_all_but(t, r.factors, d - 1), r.factors[d - 1]));
  r.stopped_by = HopmStop::max_iters;
  for (std::size_t it = 0; it < settings.max_iters; ++it) {
    double last = objective;
    for (std::size_t j = 0; j < d; ++j) {
      auto v = contract_all_but(t, r.factors, j);
      const double nv = euclidean_norm(v);
      if (nv == 0.0) continue;
      for (auto& x : v) x /= nv;
      r.factors[j] = std::move(v);
      last = nv;
    }
    r.iterations = it + 1;
    const double improvement = last - objective;
    objective = std::max(objective, last);
    if (improvement <= settings.tol * std::max(1.0, objective)) {
      r.stopped_by = HopmStop::converged;
      break;
    }
  }
  r.value = objective;
  return r;
}

}  // namespace

HopmResult hopm_spectral_estimate(const DenseTensor& t, const HopmSettings& settings) {
  const std::size_t starts = std::max<std::size_t>(1, settings.starts);
  std::vector<HopmResult> results(starts);
  parallel_for(starts, settings.threads, [&](std::size_t s) { results[s] = run_start(t, settings, s); });
  std::size_t best = 0;
  for (std::size_t s = 1; s < starts; ++s) {
    if (results[s].value > results[best].value) best = s;
  }
  return results[best];
}

}  // namespace specbound
