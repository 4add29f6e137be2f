#pragma once

// Estimating mu and alpha from the subsequence u_m = log e_{pm}, assuming
// e_{pm} ~ kappa mu^{pm} (pm)^alpha (1 + c1/m + c2/m^2 + ...).
//
// The second difference
//   alpha_m = (u_{m+1} - 2 u_m + u_{m-1}) / log((m+1)(m-1)/m^2)
// cancels kappa and mu exactly, leaving alpha + O(1/m). Richardson levels
//   R^k_m = (m R^{k-1}_m - (m-k) R^{k-1}_{m-1}) / k
// remove the successive 1/m corrections.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tandem/enumerate.hpp"

namespace tandem {

class InsufficientDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FitOptions {
  int richardson_levels = 3;
  /// Levels closer than this are considered converged.
  double stability_threshold = 1e-3;
  /// First subsequence index used.
  std::int64_t m_min = 0;
};

struct RichardsonLevel {
  std::vector<std::int64_t> m;
  std::vector<double> value;
};

struct FitResult {
  std::int64_t period = 1;
  std::int64_t m_first = 0;
  std::int64_t m_last = 0;
  /// Level 0 is the raw estimator alpha_m.
  std::vector<RichardsonLevel> richardson;
  int level_used = 0;
  double alpha_final = 0.0;
  double mu_final = 0.0;
  std::optional<double> reference_alpha;
  std::optional<double> deviation() const {
    if (!reference_alpha) return std::nullopt;
    return alpha_final - *reference_alpha;
  }
  const RichardsonLevel& alpha_estimates() const { return richardson.front(); }
};

/// Richardson table built on top of `base` (level 0).
std::vector<RichardsonLevel> richardson_table(const RichardsonLevel& base, int levels);

/// Only terms at indices p*m are read. Throws InsufficientDataError when
/// fewer than five terms are available and ValidationError when a needed
/// term is zero. Also fills mu_final via estimate_mu.
FitResult estimate_alpha(const CountSequence& e, std::int64_t p, const FitOptions& opts = {});

/// log mu_m = (u_{m+1} - u_m - alpha log((m+1)/m)) / p, Richardson-refined
/// with `levels` levels and read at the largest m.
double estimate_mu(const CountSequence& e, std::int64_t p, double alpha_hat, int levels = 1,
                   const FitOptions& opts = {});

}  // namespace tandem
