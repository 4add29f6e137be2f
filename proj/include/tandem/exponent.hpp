#pragma once

// Critical point, growth constant and critical excursion exponent of a
// quarter-plane model.
//
// For a step polynomial S(x,y) with positive critical point (X,Y):
//   mu    = S(X,Y)
//   gamma = S_xy / sqrt(S_xx S_yy)  at (X,Y)
//   alpha = -1 - pi / arccos(-gamma)
// For the tandem steps (A,0), (-B,B), (0,-C) all of these have closed
// forms, and gamma^2 = B^2 / ((A+B)(B+C)) is an exact rational. alpha is
// rational exactly when gamma^2 is 1/4, 1/2 or 3/4, and an irrational
// alpha rules out a D-finite excursion generating function.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

#include "tandem/model.hpp"

namespace tandem {

struct Tolerances {
  double solver_gradient = 1e-12;
  int solver_max_iterations = 200;
};

struct CriticalPoint {
  double X = 0.0;
  double Y = 0.0;
};

/// Raised when the damped Newton iteration fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// S and its partial derivatives at (x,y).
struct StepPolynomialValues {
  double S, Sx, Sy, Sxx, Syy, Sxy;
};
StepPolynomialValues evaluate_step_polynomial(const StepSet& steps, double x, double y);

CriticalPoint closed_form_critical_point(const TandemModel& m);

/// Minimizes S over the open quadrant by Newton's method in (log x, log y),
/// halving the step until the objective does not increase. Throws
/// ValidationError if the step set lies in a half-plane or has no step in
/// the closed first quadrant, ConvergenceError after max_iterations.
CriticalPoint solve_critical_point(const StepSet& steps, const Tolerances& tol = {});

/// Gradient norm of S in log coordinates, i.e. |(x S_x, y S_y)|.
double log_gradient_norm(const StepSet& steps, CriticalPoint p);

/// Closed-form exponential growth.
double growth_constant(const TandemModel& m);

/// B^2 / ((A+B)(B+C)) in lowest terms.
mpq_class gamma_exact_sq(const TandemModel& m);

/// gamma at a critical point from the monomial second derivatives. Throws
/// ValidationError when S_xx or S_yy is not positive.
double gamma_general(const StepSet& steps, CriticalPoint p);

/// Throws ValidationError outside (-1, 1).
double alpha_from_gamma(double gamma);

struct Rationality {
  bool rational = false;
  /// Exact alpha when rational: -4, -5 or -7.
  int alpha = 0;
};

/// Classification of alpha for gamma^2 = r with 0 < r < 1 rational.
/// Throws ValidationError for r outside (0,1).
Rationality classify_rationality(const mpq_class& gamma_sq);

enum class DFiniteness { not_dfinite_proven, known_dfinite, unknown };
std::string to_string(DFiniteness d);

struct ExponentReport {
  TandemModel model;
  CriticalPoint critical;
  double mu = 0.0;
  mpq_class gamma_sq;
  double gamma = 0.0;
  double alpha = 0.0;
  std::string alpha_closed_form;
  Rationality rationality;
  DFiniteness dfiniteness = DFiniteness::unknown;
};

ExponentReport exponent_report(const TandemModel& m);

/// "-1 - pi/arccos(sqrt(num/den))".
std::string alpha_closed_form(const mpq_class& gamma_sq);

}  // namespace tandem
