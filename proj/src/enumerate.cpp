#include "tandem/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <thread>

namespace tandem {

CountSequence CountSequence::make_exact(std::vector<mpz_class> terms) {
  CountSequence s;
  s.mode_ = CountMode::exact;
  s.exact_ = std::move(terms);
  return s;
}

CountSequence CountSequence::make_logfloat(std::vector<double> log_terms) {
  CountSequence s;
  s.mode_ = CountMode::logfloat;
  s.logs_ = std::move(log_terms);
  return s;
}

bool CountSequence::is_zero(std::size_t n) const {
  if (mode_ == CountMode::exact) return sgn(exact_.at(n)) == 0;
  return std::isinf(logs_.at(n)) && logs_.at(n) < 0;
}

double log_of(const mpz_class& v) {
  if (sgn(v) <= 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

double CountSequence::log_term(std::size_t n) const {
  if (mode_ == CountMode::exact) return log_of(exact_.at(n));
  return logs_.at(n);
}

const std::vector<mpz_class>& CountSequence::exact() const {
  if (mode_ != CountMode::exact) throw std::logic_error("CountSequence is not in exact mode");
  return exact_;
}

const std::vector<double>& CountSequence::logs() const {
  if (mode_ != CountMode::logfloat) throw std::logic_error("CountSequence is not in logfloat mode");
  return logs_;
}

namespace {

constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max() / 4;

inline bool is_zero_cell(const mpz_class& v) { return sgn(v) == 0; }
inline bool is_zero_cell(double v) { return v == 0.0; }
inline void clear_cell(mpz_class& v) { v = 0; }
inline void clear_cell(double& v) { v = 0.0; }

struct Box {
  std::int64_t xhi = -1;  // inclusive; -1 means empty
  std::int64_t yhi = -1;
  std::int64_t width() const { return xhi + 1; }
  std::uint64_t cells() const {
    return xhi < 0 || yhi < 0 ? 0 : static_cast<std::uint64_t>(xhi + 1) * static_cast<std::uint64_t>(yhi + 1);
  }
};

enum class Collect { target, total };

struct Limits {
  const StepSet& steps;
  std::int64_t n_max;
  std::optional<Point> target;

  // Largest coordinates from which the target is still reachable after level n.
  std::int64_t xcap(std::int64_t n) const {
    if (!target) return kUnbounded;
    return target->x + (n_max - n) * steps.max_neg_dx();
  }
  std::int64_t ycap(std::int64_t n) const {
    if (!target) return kUnbounded;
    return target->y + (n_max - n) * steps.max_neg_dy();
  }
};

std::uint64_t estimate_cells(const Limits& lim) {
  std::uint64_t total = 0;
  for (std::int64_t n = 0; n <= lim.n_max; ++n) {
    auto xhi = std::min(n * lim.steps.max_dx(), lim.xcap(n));
    auto yhi = std::min(n * lim.steps.max_dy(), lim.ycap(n));
    total += Box{xhi, yhi}.cells();
    if (total > std::numeric_limits<std::uint64_t>::max() / 2) break;
  }
  return total;
}

struct RowStats {
  std::int64_t xmax = -1;  // largest nonzero x in the row, -1 if none
  double vmax = 0.0;
};

template <class Cell>
void sweep_rows(const std::vector<Cell>& prev, Box pb, std::vector<Cell>& next, Box nb,
                const std::vector<Point>& steps, std::int64_t y0, std::int64_t y1,
                std::vector<RowStats>& stats) {
  const auto pw = pb.width();
  const auto nw = nb.width();
  for (auto y = y0; y < y1; ++y) {
    Cell* row = next.data() + y * nw;
    for (std::int64_t x = 0; x < nw; ++x) clear_cell(row[x]);
    for (auto s : steps) {
      const auto py = y - s.y;
      if (py < 0 || py > pb.yhi) continue;
      const auto xlo = std::max<std::int64_t>(0, s.x);
      const auto xhi = std::min(nb.xhi, pb.xhi + s.x);
      const Cell* src = prev.data() + py * pw - s.x;
      for (auto x = xlo; x <= xhi; ++x) {
        if constexpr (std::is_same_v<Cell, double>) {
          row[x] += src[x];
        } else {
          if (!is_zero_cell(src[x])) row[x] += src[x];
        }
      }
    }
    RowStats st;
    for (auto x = nw - 1; x >= 0; --x) {
      if (!is_zero_cell(row[x])) {
        st.xmax = x;
        break;
      }
    }
    if constexpr (std::is_same_v<Cell, double>) {
      for (std::int64_t x = 0; x <= st.xmax; ++x) st.vmax = std::max(st.vmax, row[x]);
    }
    stats[y] = st;
  }
}

template <class Cell>
void sweep_level(const std::vector<Cell>& prev, Box pb, std::vector<Cell>& next, Box nb,
                 const std::vector<Point>& steps, unsigned threads, std::vector<RowStats>& stats) {
  const auto rows = nb.yhi + 1;
  stats.assign(rows, RowStats{});
  const auto workers = std::max<std::int64_t>(1, std::min<std::int64_t>(threads, rows));
  if (workers == 1) {
    sweep_rows(prev, pb, next, nb, steps, 0, rows, stats);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::int64_t w = 0; w < workers; ++w) {
    auto y0 = rows * w / workers;
    auto y1 = rows * (w + 1) / workers;
    pool.emplace_back([&, y0, y1] { sweep_rows(prev, pb, next, nb, steps, y0, y1, stats); });
  }
}

template <class Cell>
struct Engine {
  Limits lim;
  Collect collect;
  unsigned threads;

  // Returns per-level terms: exact counts or logs.
  std::vector<Cell> run(std::vector<double>* logs_out) {
    const auto& steps = lim.steps.steps();
    std::vector<Cell> cur(1), nxt;
    cur[0] = 1;
    Box box{0, 0};
    double log_scale = 0.0;
    std::vector<Cell> terms;
    std::vector<RowStats> stats;
    terms.reserve(lim.n_max + 1);
    if (logs_out) logs_out->reserve(lim.n_max + 1);

    auto record = [&](const std::vector<Cell>& level, Box b) {
      Cell term{};
      if (collect == Collect::total) {
        for (std::uint64_t i = 0; i < b.cells(); ++i) term += level[i];
      } else if (lim.target->x <= b.xhi && lim.target->y <= b.yhi) {
        term = level[lim.target->y * b.width() + lim.target->x];
      }
      if constexpr (std::is_same_v<Cell, double>) {
        logs_out->push_back(term > 0 ? std::log(term) + log_scale
                                     : -std::numeric_limits<double>::infinity());
      } else {
        terms.push_back(std::move(term));
      }
    };

    record(cur, box);
    for (std::int64_t n = 1; n <= lim.n_max; ++n) {
      Box nb;
      if (box.xhi >= 0) {
        nb.xhi = std::min(box.xhi + lim.steps.max_dx(), lim.xcap(n));
        nb.yhi = std::min(box.yhi + lim.steps.max_dy(), lim.ycap(n));
      }
      if (nb.cells() == 0) {
        box = Box{};
        cur.clear();
        record(cur, box);
        continue;
      }
      if (nxt.size() < nb.cells()) nxt.resize(nb.cells());
      sweep_level(cur, box, nxt, nb, steps, threads, stats);

      Box actual;
      double vmax = 0.0;
      for (std::int64_t y = 0; y <= nb.yhi; ++y) {
        if (stats[y].xmax >= 0) {
          actual.yhi = y;
          actual.xhi = std::max(actual.xhi, stats[y].xmax);
          vmax = std::max(vmax, stats[y].vmax);
        }
      }
      if constexpr (std::is_same_v<Cell, double>) {
        if (vmax > 0.0) {
          for (std::uint64_t i = 0; i < nb.cells(); ++i) nxt[i] /= vmax;
          log_scale += std::log(vmax);
        }
      }
      std::swap(cur, nxt);
      box = nb;
      record(cur, box);
      if (actual.xhi < 0) {
        box = Box{};
      } else if (actual.xhi < nb.xhi || actual.yhi < nb.yhi) {
        // Shrink to the bounding box of the nonzero cells.
        repack(cur, nb, actual);
        box = actual;
      }
    }
    return terms;
  }

  static void repack(std::vector<Cell>& level, Box from, Box to) {
    const auto fw = from.width();
    const auto tw = to.width();
    for (std::int64_t y = 0; y <= to.yhi; ++y)
      for (std::int64_t x = 0; x < tw; ++x)
        if (y * tw + x != y * fw + x) std::swap(level[y * tw + x], level[y * fw + x]);
  }
};

CountSequence run_engine(const StepSet& steps, std::int64_t n_max, std::optional<Point> target,
                         Collect collect, CountMode mode, const EnumerateOptions& opts) {
  if (n_max < 0) throw ValidationError("n_max must be nonnegative, got " + std::to_string(n_max));
  if (target && (target->x < 0 || target->y < 0)) {
    throw ValidationError("target " + to_string(*target) + " is outside the quarter plane");
  }
  Limits lim{steps, n_max, target};
  const auto est = estimate_cells(lim);
  if (est > opts.cell_limit) {
    throw ResourceError("enumeration needs about " + std::to_string(est) + " cells, above the limit of " +
                        std::to_string(opts.cell_limit));
  }
  const unsigned threads = std::max(1u, opts.threads);
  if (mode == CountMode::exact) {
    Engine<mpz_class> eng{lim, collect, threads};
    return CountSequence::make_exact(eng.run(nullptr));
  }
  Engine<double> eng{lim, collect, threads};
  std::vector<double> logs;
  eng.run(&logs);
  return CountSequence::make_logfloat(std::move(logs));
}

}  // namespace

CountSequence count_excursions(const StepSet& steps, std::int64_t n_max, CountMode mode,
                               const EnumerateOptions& opts) {
  return run_engine(steps, n_max, Point{0, 0}, Collect::target, mode, opts);
}

CountSequence count_walks_total(const StepSet& steps, std::int64_t n_max, CountMode mode,
                                const EnumerateOptions& opts) {
  return run_engine(steps, n_max, std::nullopt, Collect::total, mode, opts);
}

CountSequence count_endpoint(const StepSet& steps, std::int64_t n_max, Point target, CountMode mode,
                             const EnumerateOptions& opts) {
  return run_engine(steps, n_max, target, Collect::target, mode, opts);
}

CountSequence count_ballot_3d(const BallotModel& m, std::int64_t rounds_max, const EnumerateOptions& opts) {
  if (rounds_max < 0) throw ValidationError("rounds must be nonnegative, got " + std::to_string(rounds_max));
  const auto t = ballot_to_tandem(m);
  const auto A = t.A(), B = t.B(), C = t.C();
  const auto xmax = m.a() * rounds_max, ymax = m.b() * rounds_max, zmax = m.c() * rounds_max;
  const auto p = m.a() + m.b() + m.c();
  const auto kmax = p * rounds_max;
  const auto w = xmax + 1;
  const auto cells = static_cast<std::uint64_t>(xmax + 1) * static_cast<std::uint64_t>(ymax + 1);
  if (cells * static_cast<std::uint64_t>(kmax + 1) > opts.cell_limit) {
    throw ResourceError("3D ballot enumeration needs about " + std::to_string(cells * (kmax + 1)) +
                        " cells, above the limit of " + std::to_string(opts.cell_limit));
  }
  auto inside = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
    return A * x >= B * y && B * y >= C * z && z >= 0;
  };
  std::vector<mpz_class> cur(cells), nxt(cells);
  cur[0] = 1;
  std::vector<mpz_class> terms{mpz_class(1)};
  for (std::int64_t k = 1; k <= kmax; ++k) {
    for (auto& v : nxt) v = 0;
    for (std::int64_t x = 0; x <= std::min(k, xmax); ++x) {
      for (std::int64_t y = 0; y <= std::min(k - x, ymax); ++y) {
        const auto z = k - x - y;
        if (z > zmax || !inside(x, y, z)) continue;
        auto& cell = nxt[y * w + x];
        if (x > 0) cell += cur[y * w + x - 1];
        if (y > 0) cell += cur[(y - 1) * w + x];
        if (z > 0) cell += cur[y * w + x];
      }
    }
    std::swap(cur, nxt);
    if (k % p == 0) {
      const auto n = k / p;
      terms.push_back(cur[(m.b() * n) * w + m.a() * n]);
    }
  }
  return CountSequence::make_exact(std::move(terms));
}

std::int64_t empirical_period(const CountSequence& e) {
  std::int64_t g = 0;
  for (std::size_t n = 1; n < e.size(); ++n)
    if (!e.is_zero(n)) g = std::gcd(g, static_cast<std::int64_t>(n));
  if (g == 0) throw ValidationError("period undefined: no nonzero term at n >= 1 in range");
  return g;
}

std::optional<Witness> reachable_from_infinity(const StepSet& steps, std::int64_t depth_bound) {
  const Point origin{0, 0};
  std::map<Point, Point> next_hop;  // point -> successor on a walk to the origin
  std::set<Point> frontier{origin};
  next_hop.emplace(origin, origin);
  for (std::int64_t depth = 1; depth <= depth_bound && !frontier.empty(); ++depth) {
    std::set<Point> discovered;
    for (auto q : frontier) {
      for (auto s : steps.steps()) {
        auto pred = q - s;
        if (pred.x < 0 || pred.y < 0 || next_hop.contains(pred)) continue;
        next_hop.emplace(pred, q);
        discovered.insert(pred);
      }
    }
    for (auto p : discovered) {
      if (p.x > 0 && p.y > 0) {
        Witness w{p, {p}};
        while (w.path.back() != origin) w.path.push_back(next_hop.at(w.path.back()));
        return w;
      }
    }
    frontier = std::move(discovered);
  }
  return std::nullopt;
}

}  // namespace tandem
