#pragma once

// Walk models: generalized 3-ballot parameters (a,b,c), large tandem
// parameters (A,B,C), their correspondence a*A = b*B = c*C = lcm, and the
// planar step sets the enumeration engine consumes.

#include <array>
#include <compare>
#include <iosfwd>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tandem {

/// Raised when a model, step set or argument violates its invariants.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an enumeration would exceed its configured cell budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

std::string to_string(Point p);

class TandemModel;

/// Votes per round (a,b,c) of a generalized 3-ballot problem.
class BallotModel {
 public:
  /// Throws ValidationError unless a,b,c >= 1 and gcd(a,b,c) = 1.
  BallotModel(std::int64_t a, std::int64_t b, std::int64_t c);

  std::int64_t a() const { return v_[0]; }
  std::int64_t b() const { return v_[1]; }
  std::int64_t c() const { return v_[2]; }
  const std::array<std::int64_t, 3>& values() const { return v_; }
  /// M = lcm(a,b,c).
  std::int64_t lcm() const { return lcm_; }

  friend bool operator==(const BallotModel&, const BallotModel&) = default;

 private:
  std::array<std::int64_t, 3> v_;
  std::int64_t lcm_;
};

/// Step lengths (A,B,C) of the quarter-plane steps (A,0), (-B,B), (0,-C).
/// This is the canonical parameterization; ballot parameters are derived.
class TandemModel {
 public:
  /// Throws ValidationError unless A,B,C >= 1 and gcd(A,B,C) = 1.
  TandemModel(std::int64_t A, std::int64_t B, std::int64_t C);

  std::int64_t A() const { return v_[0]; }
  std::int64_t B() const { return v_[1]; }
  std::int64_t C() const { return v_[2]; }
  const std::array<std::int64_t, 3>& values() const { return v_; }
  std::int64_t lcm() const { return lcm_; }

  /// The mirrored model (C,B,A).
  TandemModel swapped() const { return TandemModel(v_[2], v_[1], v_[0]); }

  friend bool operator==(const TandemModel&, const TandemModel&) = default;
  friend auto operator<=>(const TandemModel& l, const TandemModel& r) { return l.v_ <=> r.v_; }

 private:
  std::array<std::int64_t, 3> v_;
  std::int64_t lcm_;
};

std::string to_string(const TandemModel& m);
std::string to_string(const BallotModel& m);

std::ostream& operator<<(std::ostream& os, Point p);
std::ostream& operator<<(std::ostream& os, const TandemModel& m);
std::ostream& operator<<(std::ostream& os, const BallotModel& m);

TandemModel ballot_to_tandem(const BallotModel& m);
BallotModel tandem_to_ballot(const TandemModel& m);

/// Period of excursions, p = a + b + c.
std::int64_t period(const TandemModel& m);

/// A finite set of distinct planar steps, each of weight one.
class StepSet {
 public:
  /// Throws ValidationError on an empty list or duplicate steps.
  explicit StepSet(std::vector<Point> steps);

  const std::vector<Point>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }

  /// True iff no nonzero u has u.s >= 0 for every step s.
  bool not_in_half_plane() const;
  /// True iff some step lies in the closed first quadrant.
  bool has_nonnegative_step() const;

  std::int64_t max_dx() const;  // max(0, max s.x)
  std::int64_t max_dy() const;
  std::int64_t max_neg_dx() const;  // max(0, max -s.x)
  std::int64_t max_neg_dy() const;

 private:
  std::vector<Point> steps_;
};

/// {(A,0), (-B,B), (0,-C)} in that order (R, D, U).
StepSet tandem_step_set(const TandemModel& m);

/// Parses "A,B,C" as a tandem model or "ballot:a,b,c" as a ballot model
/// converted to tandem parameters.
TandemModel parse_model(std::string_view text);
/// Parses "a,b,c" (an optional "ballot:" prefix is accepted).
BallotModel parse_ballot(std::string_view text);

/// The fifteen models of the Ekhad-Zeilberger list, as ballot parameters.
const std::vector<BallotModel>& reference_ballot_models();

/// All (A,B,C) with 1 <= A,B,C <= bound and gcd(A,B,C) = 1, lexicographic.
std::vector<TandemModel> coprime_triples(std::int64_t bound);

}  // namespace tandem
