#include "tandem/model.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <charconv>
#include <numeric>
#include <ostream>
#include <set>

namespace tandem {
namespace {

std::int64_t to_int64(const mpz_class& v, const char* what) {
  if (!v.fits_slong_p()) {
    throw ValidationError(std::string(what) + " does not fit in 64 bits: " + v.get_str());
  }
  return v.get_si();
}

void check_triple(const std::array<std::int64_t, 3>& v, const char* kind) {
  for (auto x : v) {
    if (x < 1) {
      throw ValidationError(std::string(kind) + " parameters must be positive, got (" +
                            std::to_string(v[0]) + "," + std::to_string(v[1]) + "," +
                            std::to_string(v[2]) + ")");
    }
  }
  mpz_class g;
  mpz_class a(static_cast<long>(v[0])), b(static_cast<long>(v[1])), c(static_cast<long>(v[2]));
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g != 1) {
    throw ValidationError(std::string(kind) + " parameters (" + std::to_string(v[0]) + "," +
                          std::to_string(v[1]) + "," + std::to_string(v[2]) +
                          ") are not coprime: gcd = " + g.get_str());
  }
}

std::int64_t lcm3(const std::array<std::int64_t, 3>& v) {
  mpz_class m(static_cast<long>(v[0]));
  for (int i = 1; i < 3; ++i) {
    mpz_class x(static_cast<long>(v[i]));
    mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), x.get_mpz_t());
  }
  return to_int64(m, "lcm");
}

std::array<std::int64_t, 3> parse_triple(std::string_view text) {
  std::array<std::int64_t, 3> out{};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    auto end = text.find(',', pos);
    if ((i < 2) != (end != std::string_view::npos)) {
      throw ValidationError("malformed model '" + std::string(text) + "': expected three comma-separated integers");
    }
    auto field = text.substr(pos, i < 2 ? end - pos : std::string_view::npos);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out[i]);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
      throw ValidationError("malformed model '" + std::string(text) + "': bad integer '" + std::string(field) + "'");
    }
    pos = end + 1;
  }
  return out;
}

// Sign-aware angular order on nonzero directions.
bool angle_less(Point a, Point b) {
  auto half = [](Point p) { return p.y < 0 || (p.y == 0 && p.x < 0); };
  if (half(a) != half(b)) return !half(a);
  return static_cast<__int128>(a.x) * b.y - static_cast<__int128>(a.y) * b.x > 0;
}

}  // namespace

std::string to_string(Point p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

BallotModel::BallotModel(std::int64_t a, std::int64_t b, std::int64_t c) : v_{a, b, c} {
  check_triple(v_, "ballot");
  lcm_ = lcm3(v_);
}

TandemModel::TandemModel(std::int64_t A, std::int64_t B, std::int64_t C) : v_{A, B, C} {
  check_triple(v_, "tandem");
  lcm_ = lcm3(v_);
}

std::string to_string(const TandemModel& m) {
  return std::to_string(m.A()) + "," + std::to_string(m.B()) + "," + std::to_string(m.C());
}

std::string to_string(const BallotModel& m) {
  return std::to_string(m.a()) + "," + std::to_string(m.b()) + "," + std::to_string(m.c());
}

std::ostream& operator<<(std::ostream& os, Point p) { return os << to_string(p); }
std::ostream& operator<<(std::ostream& os, const TandemModel& m) { return os << "(" << to_string(m) << ")"; }
std::ostream& operator<<(std::ostream& os, const BallotModel& m) { return os << "ballot(" << to_string(m) << ")"; }

TandemModel ballot_to_tandem(const BallotModel& m) {
  const auto M = m.lcm();
  TandemModel t(M / m.a(), M / m.b(), M / m.c());
  if (t.lcm() != M) throw std::logic_error("ballot_to_tandem: lcm not preserved");
  return t;
}

BallotModel tandem_to_ballot(const TandemModel& m) {
  const auto M = m.lcm();
  return BallotModel(M / m.A(), M / m.B(), M / m.C());
}

std::int64_t period(const TandemModel& m) {
  const auto b = tandem_to_ballot(m);
  return b.a() + b.b() + b.c();
}

StepSet::StepSet(std::vector<Point> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) throw ValidationError("step set must be nonempty");
  std::set<Point> seen(steps_.begin(), steps_.end());
  if (seen.size() != steps_.size()) throw ValidationError("step set contains duplicate steps");
}

bool StepSet::not_in_half_plane() const {
  std::vector<Point> dirs;
  for (auto s : steps_) {
    if (s.x == 0 && s.y == 0) continue;
    auto g = std::gcd(s.x, s.y);
    dirs.push_back({s.x / g, s.y / g});
  }
  std::sort(dirs.begin(), dirs.end(), angle_less);
  dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
  if (dirs.size() < 3) return false;
  // Every angular gap between consecutive directions must be below pi.
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    auto a = dirs[i];
    auto b = dirs[(i + 1) % dirs.size()];
    if (static_cast<__int128>(a.x) * b.y - static_cast<__int128>(a.y) * b.x <= 0) return false;
  }
  return true;
}

bool StepSet::has_nonnegative_step() const {
  return std::any_of(steps_.begin(), steps_.end(), [](Point s) { return s.x >= 0 && s.y >= 0; });
}

std::int64_t StepSet::max_dx() const {
  std::int64_t r = 0;
  for (auto s : steps_) r = std::max(r, s.x);
  return r;
}
std::int64_t StepSet::max_dy() const {
  std::int64_t r = 0;
  for (auto s : steps_) r = std::max(r, s.y);
  return r;
}
std::int64_t StepSet::max_neg_dx() const {
  std::int64_t r = 0;
  for (auto s : steps_) r = std::max(r, -s.x);
  return r;
}
std::int64_t StepSet::max_neg_dy() const {
  std::int64_t r = 0;
  for (auto s : steps_) r = std::max(r, -s.y);
  return r;
}

StepSet tandem_step_set(const TandemModel& m) {
  return StepSet({{m.A(), 0}, {-m.B(), m.B()}, {0, -m.C()}});
}

TandemModel parse_model(std::string_view text) {
  constexpr std::string_view prefix = "ballot:";
  if (text.starts_with(prefix)) {
    auto v = parse_triple(text.substr(prefix.size()));
    return ballot_to_tandem(BallotModel(v[0], v[1], v[2]));
  }
  auto v = parse_triple(text);
  return TandemModel(v[0], v[1], v[2]);
}

BallotModel parse_ballot(std::string_view text) {
  constexpr std::string_view prefix = "ballot:";
  if (text.starts_with(prefix)) text.remove_prefix(prefix.size());
  auto v = parse_triple(text);
  return BallotModel(v[0], v[1], v[2]);
}

const std::vector<BallotModel>& reference_ballot_models() {
  static const std::vector<BallotModel> models = {
      {1, 1, 1}, {1, 2, 2}, {1, 1, 2}, {1, 3, 3}, {2, 3, 6}, {2, 3, 3}, {1, 1, 3}, {2, 2, 3},
      {1, 4, 4}, {1, 2, 4}, {3, 4, 12}, {3, 4, 6}, {3, 4, 4}, {1, 1, 4}, {3, 3, 4},
  };
  return models;
}

std::vector<TandemModel> coprime_triples(std::int64_t bound) {
  std::vector<TandemModel> out;
  for (std::int64_t A = 1; A <= bound; ++A)
    for (std::int64_t B = 1; B <= bound; ++B)
      for (std::int64_t C = 1; C <= bound; ++C)
        if (std::gcd(std::gcd(A, B), C) == 1) out.emplace_back(A, B, C);
  return out;
}

}  // namespace tandem
