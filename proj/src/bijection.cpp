#include "tandem/bijection.hpp"

#include <algorithm>

namespace tandem {
namespace {

Point3 unit_step(char letter) {
  switch (letter) {
    case 'X': return {1, 0, 0};
    case 'Y': return {0, 1, 0};
    case 'Z': return {0, 0, 1};
  }
  throw ValidationError(std::string("malformed ballot step '") + letter + "', expected X, Y or Z");
}

Point tandem_step(char letter, const TandemModel& m) {
  switch (letter) {
    case 'R': return {m.A(), 0};
    case 'D': return {-m.B(), m.B()};
    case 'U': return {0, -m.C()};
  }
  throw ValidationError(std::string("malformed tandem step '") + letter + "', expected R, D or U");
}

}  // namespace

bool in_ballot_cone(Point3 p, const TandemModel& t) {
  return t.A() * p.x >= t.B() * p.y && t.B() * p.y >= t.C() * p.z && p.z >= 0;
}

Walk3::Walk3(BallotModel model, std::string steps) : model_(model), steps_(std::move(steps)) {
  const auto t = ballot_to_tandem(model_);
  Point3 p;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    p = p + unit_step(steps_[i]);
    if (!in_ballot_cone(p, t)) {
      throw ValidationError("ballot walk '" + steps_ + "' leaves the cone after step " + std::to_string(i + 1));
    }
  }
}

std::vector<Point3> Walk3::points() const {
  std::vector<Point3> pts{Point3{}};
  for (char c : steps_) pts.push_back(pts.back() + unit_step(c));
  return pts;
}

Point3 Walk3::endpoint() const { return points().back(); }

Walk2::Walk2(TandemModel model, std::string steps) : model_(model), steps_(std::move(steps)) {
  Point p;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    p = p + tandem_step(steps_[i], model_);
    if (p.x < 0 || p.y < 0) {
      throw ValidationError("tandem walk '" + steps_ + "' leaves the quarter plane after step " +
                            std::to_string(i + 1));
    }
  }
}

std::vector<Point> Walk2::points() const {
  std::vector<Point> pts{Point{}};
  for (char c : steps_) pts.push_back(pts.back() + tandem_step(c, model_));
  return pts;
}

Point Walk2::endpoint() const { return points().back(); }

Point phi(Point3 p, const BallotModel& m) {
  const auto t = ballot_to_tandem(m);
  return {t.A() * p.x - t.B() * p.y, t.B() * p.y - t.C() * p.z};
}

Walk2 map_walk_3to2(const Walk3& w) {
  std::string out = w.steps();
  for (char& c : out) c = c == 'X' ? 'R' : c == 'Y' ? 'D' : 'U';
  return Walk2(ballot_to_tandem(w.model()), std::move(out));
}

Walk3 map_walk_2to3(const Walk2& w) {
  std::string out = w.steps();
  for (char& c : out) c = c == 'R' ? 'X' : c == 'D' ? 'Y' : 'Z';
  return Walk3(tandem_to_ballot(w.model()), std::move(out));
}

Walk2 reverse_reflect(const Walk2& w) {
  if (!w.is_excursion()) {
    throw ValidationError("reverse_reflect needs an excursion; '" + w.steps() + "' ends at " +
                          to_string(w.endpoint()));
  }
  std::string out(w.steps().rbegin(), w.steps().rend());
  for (char& c : out) c = c == 'R' ? 'U' : c == 'U' ? 'R' : 'D';
  return Walk2(w.model().swapped(), std::move(out));
}

BruteForceResult brute_force_ballot_walks(const BallotModel& m, std::int64_t rounds, std::size_t cap) {
  const auto t = ballot_to_tandem(m);
  const Point3 goal{m.a() * rounds, m.b() * rounds, m.c() * rounds};
  BruteForceResult res;
  std::string path;
  auto dfs = [&](auto&& self, Point3 p) -> void {
    if (res.capped) return;
    if (p == goal) {
      if (res.walks.size() >= cap) {
        res.capped = true;
        return;
      }
      res.walks.push_back(path);
      return;
    }
    for (char c : {'X', 'Y', 'Z'}) {
      auto q = p + unit_step(c);
      if (q.x > goal.x || q.y > goal.y || q.z > goal.z || !in_ballot_cone(q, t)) continue;
      path.push_back(c);
      self(self, q);
      path.pop_back();
    }
  };
  dfs(dfs, Point3{});
  return res;
}

BruteForceResult brute_force_excursions(const TandemModel& m, std::int64_t length, std::size_t cap) {
  BruteForceResult res;
  std::string path;
  auto dfs = [&](auto&& self, Point p) -> void {
    if (res.capped) return;
    const auto remaining = length - static_cast<std::int64_t>(path.size());
    if (remaining == 0) {
      if (p == Point{0, 0}) {
        if (res.walks.size() >= cap) {
          res.capped = true;
          return;
        }
        res.walks.push_back(path);
      }
      return;
    }
    for (char c : {'D', 'R', 'U'}) {
      auto q = p + tandem_step(c, m);
      if (q.x < 0 || q.y < 0) continue;
      // Clearing x takes ceil(x/B) D steps, and the y they add must then be cleared by U steps.
      const auto d = (q.x + m.B() - 1) / m.B();
      const auto u = (q.y + d * m.B() + m.C() - 1) / m.C();
      if (d + u > remaining - 1) continue;
      path.push_back(c);
      self(self, q);
      path.pop_back();
    }
  };
  dfs(dfs, Point{});
  return res;
}

}  // namespace tandem
