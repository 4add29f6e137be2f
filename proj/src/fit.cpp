#include "tandem/fit.hpp"

#include <cmath>
#include <string>

namespace tandem {
namespace {

struct Subsequence {
  std::int64_t m_first;
  std::vector<double> u;  // u[i] = log e_{p (m_first + i)}
  const std::vector<mpz_class>* exact = nullptr;
  std::int64_t p = 1;

  const mpz_class& term(std::size_t i) const { return (*exact)[p * (m_first + static_cast<std::int64_t>(i))]; }

  // u[i+1] - 2u[i] + u[i-1]; exact counts go through the exact ratio.
  double second_difference(std::size_t i) const {
    if (!exact) return u[i + 1] - 2.0 * u[i] + u[i - 1];
    const mpz_class num = term(i + 1) * term(i - 1);
    const mpz_class den = term(i) * term(i);
    return std::log1p(mpq_class(num - den, den).get_d());
  }

  // u[i+1] - u[i].
  double first_difference(std::size_t i) const {
    if (!exact) return u[i + 1] - u[i];
    return std::log(mpq_class(term(i + 1), term(i)).get_d());
  }
};

Subsequence collect(const CountSequence& e, std::int64_t p, const FitOptions& opts) {
  if (p < 1) throw ValidationError("period must be positive, got " + std::to_string(p));
  const auto size = static_cast<std::int64_t>(e.size());
  if (size == 0) throw InsufficientDataError("empty count sequence");
  const auto m_last = (size - 1) / p;
  Subsequence s{opts.m_min, {}};
  s.p = p;
  if (e.mode() == CountMode::exact) s.exact = &e.exact();
  for (auto m = opts.m_min; m <= m_last; ++m) {
    if (e.is_zero(p * m)) {
      throw ValidationError("term e_" + std::to_string(p * m) + " vanishes; the fit needs every e_{pm}");
    }
    s.u.push_back(e.log_term(p * m));
  }
  if (s.u.size() < 5) {
    throw InsufficientDataError("need at least 5 terms on the progression p*m, have " + std::to_string(s.u.size()));
  }
  return s;
}

}  // namespace

std::vector<RichardsonLevel> richardson_table(const RichardsonLevel& base, int levels) {
  std::vector<RichardsonLevel> table{base};
  for (int k = 1; k <= levels; ++k) {
    const auto& prev = table.back();
    RichardsonLevel next;
    for (std::size_t i = 1; i < prev.m.size(); ++i) {
      const double m = static_cast<double>(prev.m[i]);
      if (prev.m[i] - k <= 0) continue;
      next.m.push_back(prev.m[i]);
      next.value.push_back((m * prev.value[i] - (m - k) * prev.value[i - 1]) / k);
    }
    if (next.m.empty()) break;
    table.push_back(std::move(next));
  }
  return table;
}

FitResult estimate_alpha(const CountSequence& e, std::int64_t p, const FitOptions& opts) {
  const auto sub = collect(e, p, opts);
  FitResult r;
  r.period = p;
  r.m_first = sub.m_first;
  r.m_last = sub.m_first + static_cast<std::int64_t>(sub.u.size()) - 1;

  RichardsonLevel base;
  for (std::size_t i = 1; i + 1 < sub.u.size(); ++i) {
    const auto m = sub.m_first + static_cast<std::int64_t>(i);
    if (m < 2) continue;
    const double md = static_cast<double>(m);
    const double denom = std::log1p(-1.0 / (md * md));
    base.m.push_back(m);
    base.value.push_back(sub.second_difference(i) / denom);
  }
  if (base.m.size() < 2) throw InsufficientDataError("too few terms for the second-difference estimator");

  r.richardson = richardson_table(base, opts.richardson_levels);
  r.level_used = 0;
  double prev_diff = 0.0;
  for (std::size_t k = 1; k < r.richardson.size(); ++k) {
    const double diff = std::abs(r.richardson[k].value.back() - r.richardson[k - 1].value.back());
    if (k >= 2 && diff > prev_diff) break;
    r.level_used = static_cast<int>(k);
    if (diff < opts.stability_threshold) break;
    prev_diff = diff;
  }
  r.alpha_final = r.richardson[r.level_used].value.back();
  r.mu_final = estimate_mu(e, p, r.alpha_final, r.level_used, opts);
  return r;
}

double estimate_mu(const CountSequence& e, std::int64_t p, double alpha_hat, int levels, const FitOptions& opts) {
  const auto sub = collect(e, p, opts);
  RichardsonLevel base;
  for (std::size_t i = 0; i + 1 < sub.u.size(); ++i) {
    const auto m = sub.m_first + static_cast<std::int64_t>(i);
    if (m < 1) continue;
    const double md = static_cast<double>(m);
    base.m.push_back(m);
    base.value.push_back((sub.first_difference(i) - alpha_hat * std::log1p(1.0 / md)) / static_cast<double>(p));
  }
  if (base.m.empty()) throw InsufficientDataError("too few terms to estimate mu");
  const auto table = richardson_table(base, levels);
  return std::exp(table.back().value.back());
}

}  // namespace tandem
