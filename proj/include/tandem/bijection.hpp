#pragma once

// Walk-level correspondence between 3-ballot walks and large tandem
// excursions, (x,y,z) -> (Ax - By, By - Cz), and the reverse-and-reflect
// involution between the models (A,B,C) and (C,B,A).
//
// Walks are stored as letter strings: X,Y,Z for the unit steps in 3D and
// R,D,U for the planar steps (A,0), (-B,B), (0,-C). Points are recomputed
// on demand.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tandem/model.hpp"

namespace tandem {

struct Point3 {
  std::int64_t x = 0, y = 0, z = 0;
  friend constexpr Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr bool operator==(const Point3&, const Point3&) = default;
};

/// True iff A x >= B y >= C z >= 0.
bool in_ballot_cone(Point3 p, const TandemModel& t);

class Walk3 {
 public:
  /// Throws ValidationError on a letter outside {X,Y,Z} or a prefix that
  /// leaves the cone.
  Walk3(BallotModel model, std::string steps);

  const BallotModel& model() const { return model_; }
  const std::string& steps() const { return steps_; }
  std::size_t length() const { return steps_.size(); }
  /// Prefix points, starting with the origin.
  std::vector<Point3> points() const;
  Point3 endpoint() const;

  friend bool operator==(const Walk3&, const Walk3&) = default;

 private:
  BallotModel model_;
  std::string steps_;
};

class Walk2 {
 public:
  /// Throws ValidationError on a letter outside {R,D,U} or a prefix that
  /// leaves the quarter plane.
  Walk2(TandemModel model, std::string steps);

  const TandemModel& model() const { return model_; }
  const std::string& steps() const { return steps_; }
  std::size_t length() const { return steps_.size(); }
  std::vector<Point> points() const;
  Point endpoint() const;
  bool is_excursion() const { return endpoint() == Point{0, 0}; }

  friend bool operator==(const Walk2&, const Walk2&) = default;

 private:
  TandemModel model_;
  std::string steps_;
};

Point phi(Point3 p, const BallotModel& m);

/// X -> R, Y -> D, Z -> U over ballot_to_tandem(w.model()).
Walk2 map_walk_3to2(const Walk3& w);
/// Inverse of map_walk_3to2.
Walk3 map_walk_2to3(const Walk2& w);

/// Reads the excursion backwards and reflects in y = x: the result is an
/// excursion of the same length over (C,B,A). Throws ValidationError if
/// `w` is not an excursion.
Walk2 reverse_reflect(const Walk2& w);

/// Hard cap on the number of walks a brute-force generator may produce.
inline constexpr std::size_t kBruteForceCap = 10'000'000;

struct BruteForceResult {
  std::vector<std::string> walks;
  bool capped = false;
};

/// Every ballot walk from the origin to (an,bn,cn), by depth-first search,
/// in lexicographic letter order.
BruteForceResult brute_force_ballot_walks(const BallotModel& m, std::int64_t rounds,
                                          std::size_t cap = kBruteForceCap);
/// Every quarter-plane excursion of the given length, by depth-first search.
BruteForceResult brute_force_excursions(const TandemModel& m, std::int64_t length,
                                        std::size_t cap = kBruteForceCap);

}  // namespace tandem
