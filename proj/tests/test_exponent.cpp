#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tandem/enumerate.hpp"
#include "tandem/exponent.hpp"

using namespace tandem;

namespace {

// "Correct Approx." column of the reference table, in table order.
const double kTableAlpha[15] = {-4,       -3.7312,  -4.28854, -3.59758, -4.05556, -3.83755, -4.44572, -4.16962,
                                -3.51519, -3.90911, -4.24544, -4.02370, -3.88346, -4.54551, -4.12021};
// The squares implied by the printed closed forms.
const char* kTableGammaSq[15] = {"1/4",  "1/6",  "1/3", "1/8", "4/15", "1/5", "3/8", "3/10",
                                 "1/10", "2/9", "9/28", "9/35", "3/14", "2/5", "2/7"};

// Every row prints six digits except (1,2,2), printed as -3.7312.
double tolerance_for(std::size_t row) { return row == 1 ? 1e-4 : 5e-6; }

}  // namespace

TEST(Exponent, ClosedFormExamples) {
  auto c = closed_form_critical_point(TandemModel(1, 1, 1));
  EXPECT_DOUBLE_EQ(c.X, 1.0);
  EXPECT_DOUBLE_EQ(c.Y, 1.0);
  c = closed_form_critical_point(TandemModel(2, 1, 1));
  EXPECT_NEAR(c.X, std::pow(0.25, 0.2), 1e-14);
  // Solving S_x = S_y = 0 by hand gives Y^5 = 1/2.
  EXPECT_NEAR(c.Y, std::pow(0.5, 0.2), 1e-14);
  const auto v = evaluate_step_polynomial(tandem_step_set(TandemModel(2, 1, 1)), c.X, c.Y);
  EXPECT_NEAR(v.Sx, 0.0, 1e-12);
  EXPECT_NEAR(v.Sy, 0.0, 1e-12);
  const auto s = tandem_step_set(TandemModel(3, 2, 1));
  c = closed_form_critical_point(TandemModel(3, 2, 1));
  const auto w = evaluate_step_polynomial(s, c.X, c.Y);
  EXPECT_LT(std::abs(w.Sx), 1e-10);
  EXPECT_LT(std::abs(w.Sy), 1e-10);
}

TEST(Exponent, SolverExamples) {
  const auto c = solve_critical_point(tandem_step_set(TandemModel(1, 1, 1)));
  EXPECT_NEAR(c.X, 1.0, 1e-12);
  EXPECT_NEAR(c.Y, 1.0, 1e-12);
  EXPECT_THROW(solve_critical_point(StepSet({{1, 0}, {0, 1}})), ValidationError);
  EXPECT_THROW(solve_critical_point(StepSet({{-1, 0}, {0, -1}, {-1, -1}})), ValidationError);
}

TEST(Exponent, GrowthConstant) {
  EXPECT_NEAR(growth_constant(TandemModel(1, 1, 1)), 3.0, 1e-14);
  EXPECT_NEAR(growth_constant(TandemModel(2, 1, 1)), 2.5 * std::pow(2.0, 0.2), 1e-13);
  for (const auto& t : coprime_triples(10)) EXPECT_LE(growth_constant(t), 3.0 + 1e-12) << to_string(t);
}

TEST(Exponent, GrowthMatchesEnumerationTrend) {
  const auto e = count_excursions(tandem_step_set(TandemModel(2, 1, 1)), 500, CountMode::logfloat);
  // e_{n+5}/e_n -> mu^5, with a polynomial correction of order 1/n.
  const double ratio = std::exp((e.logs()[500] - e.logs()[495]) / 5.0);
  EXPECT_NEAR(ratio, growth_constant(TandemModel(2, 1, 1)), 0.03);
}

TEST(Exponent, GammaExamples) {
  EXPECT_EQ(gamma_exact_sq(TandemModel(1, 1, 1)), mpq_class(1, 4));
  EXPECT_EQ(gamma_exact_sq(TandemModel(3, 2, 1)), mpq_class(4, 15));
  EXPECT_EQ(gamma_exact_sq(TandemModel(4, 4, 3)), mpq_class(2, 7));
  EXPECT_NEAR(gamma_general(tandem_step_set(TandemModel(1, 1, 1)), {1, 1}), -0.5, 1e-14);
  const auto s = tandem_step_set(TandemModel(2, 1, 1));
  EXPECT_NEAR(gamma_general(s, solve_critical_point(s)), -1 / std::sqrt(6.0), 1e-12);
}

TEST(Exponent, AlphaFromGamma) {
  EXPECT_NEAR(alpha_from_gamma(-0.5), -4.0, 1e-13);
  EXPECT_NEAR(alpha_from_gamma(-1 / std::sqrt(6.0)), -3.7312, 1e-4);
  EXPECT_NEAR(alpha_from_gamma(-2 / std::sqrt(15.0)), -4.05556, 1e-5);
  EXPECT_THROW(alpha_from_gamma(1.0), ValidationError);
  EXPECT_THROW(alpha_from_gamma(-1.0), ValidationError);
}

TEST(Exponent, Rationality) {
  EXPECT_EQ(classify_rationality(mpq_class(1, 4)).alpha, -4);
  EXPECT_EQ(classify_rationality(mpq_class(1, 2)).alpha, -5);
  EXPECT_EQ(classify_rationality(mpq_class(3, 4)).alpha, -7);
  EXPECT_TRUE(classify_rationality(mpq_class(3, 4)).rational);
  EXPECT_FALSE(classify_rationality(mpq_class(1, 6)).rational);
  EXPECT_FALSE(classify_rationality(mpq_class(4, 15)).rational);
  EXPECT_THROW(classify_rationality(mpq_class(0)), ValidationError);
  EXPECT_THROW(classify_rationality(mpq_class(1)), ValidationError);
  EXPECT_THROW(classify_rationality(mpq_class(5, 4)), ValidationError);
}

TEST(Exponent, RationalCasesMatchFloatingPoint) {
  for (auto [num, den, alpha] : {std::tuple{1, 4, -4}, {1, 2, -5}, {3, 4, -7}}) {
    EXPECT_NEAR(alpha_from_gamma(-std::sqrt(double(num) / den)), alpha, 1e-12);
  }
}

TEST(Exponent, Report) {
  const auto r = exponent_report(TandemModel(3, 2, 1));
  EXPECT_NEAR(r.alpha, -4.05556, 1e-5);
  EXPECT_EQ(r.dfiniteness, DFiniteness::not_dfinite_proven);
  EXPECT_EQ(r.alpha_closed_form, "-1 - pi/arccos(sqrt(4/15))");
  const auto one = exponent_report(TandemModel(1, 1, 1));
  EXPECT_EQ(one.dfiniteness, DFiniteness::known_dfinite);
  EXPECT_EQ(one.alpha, -4.0);
  EXPECT_TRUE(one.rationality.rational);
  EXPECT_EQ(to_string(DFiniteness::not_dfinite_proven), "not_dfinite_proven");
}

TEST(Exponent, TableOne) {
  const auto& ms = reference_ballot_models();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const auto r = exponent_report(ballot_to_tandem(ms[i]));
    EXPECT_EQ(r.gamma_sq, mpq_class(kTableGammaSq[i])) << to_string(ms[i]);
    EXPECT_NEAR(r.alpha, kTableAlpha[i], tolerance_for(i)) << to_string(ms[i]);
    EXPECT_EQ(r.dfiniteness, i == 0 ? DFiniteness::known_dfinite : DFiniteness::not_dfinite_proven);
  }
}

TEST(ExponentProperty, SolverMatchesClosedForm) {
  for (const auto& t : coprime_triples(10)) {
    const auto s = tandem_step_set(t);
    const auto cf = closed_form_critical_point(t);
    const auto sv = solve_critical_point(s);
    EXPECT_NEAR(sv.X, cf.X, 1e-10) << to_string(t);
    EXPECT_NEAR(sv.Y, cf.Y, 1e-10) << to_string(t);
    const double mu = growth_constant(t);
    EXPECT_NEAR(evaluate_step_polynomial(s, sv.X, sv.Y).S / mu, 1.0, 1e-10) << to_string(t);
    EXPECT_LE(log_gradient_norm(s, sv), 1e-12) << to_string(t);
    const double g = -std::sqrt(gamma_exact_sq(t).get_d());
    EXPECT_NEAR(gamma_general(s, sv), g, 1e-10) << to_string(t);
  }
}

TEST(ExponentProperty, SecondDerivativeSimplification) {
  // Simplified gamma against the raw Hessian at the closed-form point.
  for (const auto& t : coprime_triples(10)) {
    const auto c = closed_form_critical_point(t);
    const auto v = evaluate_step_polynomial(tandem_step_set(t), c.X, c.Y);
    const double raw = v.Sxy / std::sqrt(v.Sxx * v.Syy);
    const double A = t.A(), B = t.B(), C = t.C();
    EXPECT_NEAR(raw, -B / std::sqrt((A + B) * (B + C)), 1e-10) << to_string(t);
  }
}

TEST(ExponentProperty, SwapInvariance) {
  for (const auto& t : coprime_triples(10)) {
    EXPECT_EQ(gamma_exact_sq(t), gamma_exact_sq(t.swapped()));
    const auto a = exponent_report(t), b = exponent_report(t.swapped());
    EXPECT_NEAR(a.gamma, b.gamma, 1e-12);
    EXPECT_NEAR(a.alpha, b.alpha, 1e-12);
  }
}

TEST(ExponentProperty, Range) {
  for (const auto& t : coprime_triples(10)) {
    const auto r = exponent_report(t);
    EXPECT_GT(r.gamma, -1.0);
    EXPECT_LT(r.gamma, 0.0);
    const double ac = std::acos(-r.gamma);
    EXPECT_GT(ac, 0.0);
    EXPECT_LT(ac, std::numbers::pi / 2);
    EXPECT_LT(r.alpha, -3.0) << to_string(t);
  }
}

TEST(ExponentProperty, MuIsLocalMinimum) {
  for (const auto& t : coprime_triples(10)) {
    const auto s = tandem_step_set(t);
    const auto c = closed_form_critical_point(t);
    const double S = evaluate_step_polynomial(s, c.X, c.Y).S;
    for (double f : {1 - 1e-3, 1 + 1e-3}) {
      EXPECT_GE(evaluate_step_polynomial(s, c.X * f, c.Y).S, S);
      EXPECT_GE(evaluate_step_polynomial(s, c.X, c.Y * f).S, S);
    }
  }
}
