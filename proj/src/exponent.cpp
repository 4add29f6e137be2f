#include "tandem/exponent.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace tandem {

StepPolynomialValues evaluate_step_polynomial(const StepSet& steps, double x, double y) {
  StepPolynomialValues v{0, 0, 0, 0, 0, 0};
  for (auto s : steps.steps()) {
    const double i = static_cast<double>(s.x), j = static_cast<double>(s.y);
    const double m = std::pow(x, i) * std::pow(y, j);
    v.S += m;
    v.Sx += i * m / x;
    v.Sy += j * m / y;
    v.Sxx += i * (i - 1) * m / (x * x);
    v.Syy += j * (j - 1) * m / (y * y);
    v.Sxy += i * j * m / (x * y);
  }
  return v;
}

CriticalPoint closed_form_critical_point(const TandemModel& m) {
  const double A = m.A(), B = m.B(), C = m.C();
  const double D = A * B + A * C + B * C;
  const double lx = (C * std::log(B) + B * std::log(C) - (B + C) * std::log(A)) / D;
  const double ly = ((A + B) * std::log(C) - B * std::log(A) - A * std::log(B)) / D;
  return {std::exp(lx), std::exp(ly)};
}

namespace {

struct LogObjective {
  const StepSet& steps;

  // f(u,v) = sum exp(i u + j v), with gradient and Hessian.
  struct Eval {
    double f, gu, gv, huu, huv, hvv;
  };
  Eval operator()(double u, double v) const {
    Eval e{0, 0, 0, 0, 0, 0};
    for (auto s : steps.steps()) {
      const double i = static_cast<double>(s.x), j = static_cast<double>(s.y);
      const double w = std::exp(i * u + j * v);
      e.f += w;
      e.gu += i * w;
      e.gv += j * w;
      e.huu += i * i * w;
      e.huv += i * j * w;
      e.hvv += j * j * w;
    }
    return e;
  }
};

}  // namespace

CriticalPoint solve_critical_point(const StepSet& steps, const Tolerances& tol) {
  if (!steps.not_in_half_plane()) {
    throw ValidationError("step set is contained in a half-plane; no interior critical point");
  }
  if (!steps.has_nonnegative_step()) {
    throw ValidationError("step set has no step in the closed first quadrant");
  }
  LogObjective obj{steps};
  double u = 0.0, v = 0.0;
  for (int it = 0; it <= tol.solver_max_iterations; ++it) {
    const auto e = obj(u, v);
    if (std::hypot(e.gu, e.gv) <= tol.solver_gradient) return {std::exp(u), std::exp(v)};
    const double det = e.huu * e.hvv - e.huv * e.huv;
    const double du = -(e.hvv * e.gu - e.huv * e.gv) / det;
    const double dv = -(e.huu * e.gv - e.huv * e.gu) / det;
    // Near the minimum f stops resolving progress; a smaller gradient is then accepted too.
    const double g = std::hypot(e.gu, e.gv);
    double t = 1.0;
    for (; t > 1e-20; t *= 0.5) {
      const auto n = obj(u + t * du, v + t * dv);
      if (n.f < e.f || (n.f <= e.f * (1 + 1e-14) && std::hypot(n.gu, n.gv) < g)) break;
    }
    u += t * du;
    v += t * dv;
  }
  std::ostringstream msg;
  msg << "critical point solver did not reach gradient norm " << tol.solver_gradient << " within "
      << tol.solver_max_iterations << " iterations";
  throw ConvergenceError(msg.str());
}

double log_gradient_norm(const StepSet& steps, CriticalPoint p) {
  const auto v = evaluate_step_polynomial(steps, p.X, p.Y);
  return std::hypot(p.X * v.Sx, p.Y * v.Sy);
}

double growth_constant(const TandemModel& m) {
  const double A = m.A(), B = m.B(), C = m.C();
  const double D = A * B + A * C + B * C;
  const double base = B * std::log(A) + A * std::log(B) - (A + B) * std::log(C);
  return C * std::exp(C / D * base) * (1.0 / A + 1.0 / B + 1.0 / C);
}

mpq_class gamma_exact_sq(const TandemModel& m) {
  const mpz_class A(static_cast<long>(m.A())), B(static_cast<long>(m.B())), C(static_cast<long>(m.C()));
  mpq_class r(B * B, (A + B) * (B + C));
  r.canonicalize();
  return r;
}

double gamma_general(const StepSet& steps, CriticalPoint p) {
  const auto v = evaluate_step_polynomial(steps, p.X, p.Y);
  if (!(v.Sxx > 0.0) || !(v.Syy > 0.0)) {
    throw ValidationError("degenerate Hessian at the critical point: S_xx = " + std::to_string(v.Sxx) +
                          ", S_yy = " + std::to_string(v.Syy));
  }
  return v.Sxy / std::sqrt(v.Sxx * v.Syy);
}

double alpha_from_gamma(double gamma) {
  if (!(gamma > -1.0 && gamma < 1.0)) {
    throw ValidationError("gamma must lie in (-1,1), got " + std::to_string(gamma));
  }
  return -1.0 - std::numbers::pi / std::acos(-gamma);
}

Rationality classify_rationality(const mpq_class& gamma_sq) {
  if (sgn(gamma_sq) <= 0 || gamma_sq >= 1) {
    throw ValidationError("gamma^2 must lie in (0,1), got " + gamma_sq.get_str());
  }
  if (gamma_sq == mpq_class(1, 4)) return {true, -4};
  if (gamma_sq == mpq_class(1, 2)) return {true, -5};
  if (gamma_sq == mpq_class(3, 4)) return {true, -7};
  return {false, 0};
}

std::string to_string(DFiniteness d) {
  switch (d) {
    case DFiniteness::not_dfinite_proven: return "not_dfinite_proven";
    case DFiniteness::known_dfinite: return "known_dfinite";
    case DFiniteness::unknown: return "unknown";
  }
  return "unknown";
}

std::string alpha_closed_form(const mpq_class& gamma_sq) {
  return "-1 - pi/arccos(sqrt(" + gamma_sq.get_num().get_str() + "/" + gamma_sq.get_den().get_str() + "))";
}

ExponentReport exponent_report(const TandemModel& m) {
  ExponentReport r{.model = m};
  r.critical = closed_form_critical_point(m);
  r.mu = growth_constant(m);
  r.gamma_sq = gamma_exact_sq(m);
  r.gamma = -std::sqrt(r.gamma_sq.get_d());
  r.rationality = classify_rationality(r.gamma_sq);
  r.alpha = r.rationality.rational ? static_cast<double>(r.rationality.alpha) : alpha_from_gamma(r.gamma);
  r.alpha_closed_form = alpha_closed_form(r.gamma_sq);
  if (!r.rationality.rational) {
    r.dfiniteness = DFiniteness::not_dfinite_proven;
  } else if (m == TandemModel(1, 1, 1)) {
    r.dfiniteness = DFiniteness::known_dfinite;
  } else {
    r.dfiniteness = DFiniteness::unknown;
  }
  return r;
}

}  // namespace tandem
