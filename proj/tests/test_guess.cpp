#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "tandem/enumerate.hpp"
#include "tandem/guess.hpp"

using namespace tandem;

namespace {

std::vector<mpq_class> subsequence(const CountSequence& e, std::int64_t p, std::size_t count) {
  std::vector<mpq_class> out;
  for (std::size_t m = 0; m < count; ++m) out.emplace_back(e.exact()[p * m]);
  return out;
}

std::vector<mpq_class> tandem_terms(std::size_t count) {
  return subsequence(count_excursions(tandem_step_set(TandemModel(1, 1, 1)), 3 * (count - 1), CountMode::exact), 3,
                     count);
}

}  // namespace

TEST(Guess, ClassicalTandem) {
  const auto terms = tandem_terms(30);
  const auto res = guess_recurrence(terms, 3, 3);
  ASSERT_TRUE(res.recurrence);
  const auto& rec = *res.recurrence;
  EXPECT_EQ(rec.order(), 1);
  EXPECT_EQ(rec.degree(), 2);
  // (m+2)(m+3) t_{m+1} - 3(3m+1)(3m+2) t_m = 0.
  const Recurrence expect({{-6, -27, -27}, {6, 5, 1}});
  EXPECT_EQ(rec, expect);
  EXPECT_TRUE(verify_recurrence(rec, tandem_terms(130)));
}

TEST(Guess, Constant) {
  const std::vector<mpq_class> ones(25, mpq_class(1));
  const auto res = guess_recurrence(ones, 2, 2);
  ASSERT_TRUE(res.recurrence);
  EXPECT_EQ(*res.recurrence, Recurrence({{-1}, {1}}));
  EXPECT_EQ(res.recurrence->to_string(), "(-1)*t(n) + (1)*t(n+1) = 0");
}

TEST(Guess, RationalTerms) {
  std::vector<mpq_class> h{0};
  for (int n = 1; n < 40; ++n) h.push_back(h.back() + mpq_class(1, n));
  const auto res = guess_recurrence(h, 3, 3);
  ASSERT_TRUE(res.recurrence);
  EXPECT_EQ(res.recurrence->order(), 2);
  EXPECT_TRUE(verify_recurrence(*res.recurrence, h));
}

TEST(Guess, SearchOrder) {
  const auto res = guess_recurrence(std::vector<mpq_class>(60, mpq_class(2)), 3, 3);
  const std::vector<std::pair<int, int>> expect{{0, 0}, {0, 1}, {1, 0}};
  EXPECT_EQ(res.searched, expect);
  std::mt19937_64 rng(3);
  std::vector<mpq_class> r;
  for (int i = 0; i < 40; ++i) r.emplace_back(static_cast<long>(rng() % 1000));
  const auto none = guess_recurrence(r, 2, 2);
  EXPECT_FALSE(none.recurrence);
  ASSERT_EQ(none.searched.size(), 9u);
  for (std::size_t i = 1; i < none.searched.size(); ++i) {
    auto [r0, d0] = none.searched[i - 1];
    auto [r1, d1] = none.searched[i];
    EXPECT_TRUE(r0 + d0 < r1 + d1 || (r0 + d0 == r1 + d1 && r0 < r1));
  }
}

TEST(Guess, InsufficientTerms) {
  EXPECT_THROW(guess_recurrence(tandem_terms(30), 10, 10), ValidationError);
  EXPECT_THROW(guess_recurrence(tandem_terms(18), 1, 4), ValidationError);
  EXPECT_NO_THROW(guess_recurrence(tandem_terms(18), 1, 2));
}

TEST(Guess, VerifyRejectsCorruption) {
  auto terms = tandem_terms(120);
  const Recurrence rec({{-6, -27, -27}, {6, 5, 1}});
  EXPECT_TRUE(verify_recurrence(rec, terms));
  terms[77] += 1;
  EXPECT_FALSE(verify_recurrence(rec, terms));
}

TEST(Guess, RecurrenceValidation) {
  EXPECT_THROW(Recurrence({{0, 0}, {0, 0}}), ValidationError);
  EXPECT_THROW(Recurrence({{1, 0}, {0, 0}}), ValidationError);
  EXPECT_THROW(Recurrence({{1, 0}, {1}}), ValidationError);
  const Recurrence r({{mpq_class(-1, 2)}, {mpq_class(3, 4)}});
  EXPECT_EQ(r.coefficients(), (std::vector<std::vector<mpz_class>>{{-2}, {3}}));
}

TEST(Guess, IntegerKernel) {
  // x + y + z = 0 and x - y = 0.
  const auto k = integer_kernel({{1, 1, 1}, {1, -1, 0}}, 3);
  ASSERT_EQ(k.size(), 1u);
  const auto& v = k.front();
  EXPECT_EQ(v[0] + v[1] + v[2], 0);
  EXPECT_EQ(v[0], v[1]);
  EXPECT_NE(v[0], 0);
  EXPECT_TRUE(integer_kernel({{1, 0}, {0, 1}}, 2).empty());
  EXPECT_EQ(integer_kernel({}, 2).size(), 2u);
}

TEST(Guess, ReadSeries) {
  std::istringstream in("n,count\n# comment\n0,1\n\n1,-3/6\n2,7\n");
  const auto s = read_series(in);
  EXPECT_EQ(s, (std::vector<mpq_class>{1, mpq_class(-1, 2), 7}));
  std::istringstream bad("1\nfoo\n");
  EXPECT_THROW(read_series(bad), ValidationError);
}

TEST(GuessProperty, ReturnedRecurrencesVerifyOnHeldOutTerms) {
  const auto terms = tandem_terms(40);
  for (std::size_t held : {10u, 15u, 20u}) {
    const auto res = guess_recurrence(terms, 2, 3, {held});
    ASSERT_TRUE(res.recurrence);
    EXPECT_TRUE(verify_recurrence(*res.recurrence, terms));
  }
}

TEST(GuessProperty, WrongTailIsRejected) {
  // Solving window satisfies the recurrence, held-out suffix does not.
  auto terms = tandem_terms(40);
  terms.back() += 1;
  const auto res = guess_recurrence(terms, 1, 2);
  EXPECT_FALSE(res.recurrence);
}

TEST(GuessProperty, NoFalsePositivesOnRandomInput) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<mpq_class> t;
    for (int i = 0; i < 100; ++i) {
      mpq_class q(num(rng), den(rng));
      q.canonicalize();
      t.push_back(q);
    }
    EXPECT_FALSE(guess_recurrence(t, 3, 3).recurrence) << trial;
  }
}

TEST(GuessProperty, ShiftRobustness) {
  const auto terms = tandem_terms(41);
  const std::vector<mpq_class> shifted(terms.begin() + 1, terms.end());
  const auto res = guess_recurrence(shifted, 2, 3);
  ASSERT_TRUE(res.recurrence);
  EXPECT_TRUE(verify_recurrence(*res.recurrence, shifted));
  EXPECT_EQ(res.recurrence->order(), 1);
}
