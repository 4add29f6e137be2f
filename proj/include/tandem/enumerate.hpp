#pragma once

// Level-by-level dynamic programming over the quarter plane.
//
// Level n holds the number of walks of length n ending at each cell of a
// dense rectangle [0,xhi] x [0,yhi]. The rectangle at level n+1 is the
// bounding box of the nonzero cells of level n grown by the largest
// positive step, clipped (for a fixed target) to cells that can still
// reach the target in the remaining steps. Rows are independent given the
// previous level, so a level is split across worker threads by row blocks;
// every reduction is done in a fixed row-major order.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tandem/model.hpp"

namespace tandem {

enum class CountMode { exact, logfloat };

/// Counts e_n (or q_n) for n = 0..n_max, either exact or as natural logs.
class CountSequence {
 public:
  static CountSequence make_exact(std::vector<mpz_class> terms);
  /// log(0) is -infinity.
  static CountSequence make_logfloat(std::vector<double> log_terms);

  CountMode mode() const { return mode_; }
  std::size_t size() const { return mode_ == CountMode::exact ? exact_.size() : logs_.size(); }
  bool is_zero(std::size_t n) const;
  /// Natural log of term n (-inf when zero); exact terms use a 2-exponent split.
  double log_term(std::size_t n) const;

  const std::vector<mpz_class>& exact() const;
  const std::vector<double>& logs() const;

 private:
  CountMode mode_ = CountMode::exact;
  std::vector<mpz_class> exact_;
  std::vector<double> logs_;
};

double log_of(const mpz_class& v);

struct EnumerateOptions {
  /// Upper bound on the total number of cells swept over all levels.
  std::uint64_t cell_limit = 200'000'000;
  unsigned threads = 1;
};

/// Walks from (0,0) back to (0,0) staying in x,y >= 0.
CountSequence count_excursions(const StepSet& steps, std::int64_t n_max, CountMode mode,
                               const EnumerateOptions& opts = {});
/// Walks from (0,0) with any endpoint in the quarter plane.
CountSequence count_walks_total(const StepSet& steps, std::int64_t n_max, CountMode mode,
                                const EnumerateOptions& opts = {});
/// Walks from (0,0) to `target`.
CountSequence count_endpoint(const StepSet& steps, std::int64_t n_max, Point target,
                             CountMode mode = CountMode::exact, const EnumerateOptions& opts = {});

/// Direct 3D count of ballot walks: term n counts unit-step walks from the
/// origin to (an,bn,cn) inside A x >= B y >= C z >= 0.
CountSequence count_ballot_3d(const BallotModel& m, std::int64_t rounds_max,
                              const EnumerateOptions& opts = {});

/// gcd of the indices n >= 1 with a nonzero term. Throws ValidationError
/// when no such index exists in range.
std::int64_t empirical_period(const CountSequence& e);

struct Witness {
  Point start;
  /// Points visited from `start` to (0,0), both ends included.
  std::vector<Point> path;
};

/// Backward breadth-first search from the origin; returns the first
/// strictly positive start point found (smallest in lexicographic order
/// within its depth) together with a walk from it to the origin.
std::optional<Witness> reachable_from_infinity(const StepSet& steps, std::int64_t depth_bound);

}  // namespace tandem
