#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "tandem/bijection.hpp"
#include "tandem/enumerate.hpp"

using namespace tandem;

namespace {

// Walk sets above this size are left to the acceptance run.
constexpr std::size_t kSmallCap = 200'000;

// Uniformly picks a random valid ballot walk by rejection-free extension:
// at each step choose among letters that keep a completion possible.
std::string random_ballot_walk(const BallotModel& m, std::int64_t rounds, std::mt19937_64& rng) {
  const auto t = ballot_to_tandem(m);
  const std::int64_t tx = m.a() * rounds, ty = m.b() * rounds, tz = m.c() * rounds;
  std::string w;
  Point3 p;
  while (p.x + p.y + p.z < tx + ty + tz) {
    std::vector<char> ok;
    for (char c : {'X', 'Y', 'Z'}) {
      Point3 q = p + (c == 'X' ? Point3{1, 0, 0} : c == 'Y' ? Point3{0, 1, 0} : Point3{0, 0, 1});
      if (q.x <= tx && q.y <= ty && q.z <= tz && in_ballot_cone(q, t)) ok.push_back(c);
    }
    char c = ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng)];
    w.push_back(c);
    p = p + (c == 'X' ? Point3{1, 0, 0} : c == 'Y' ? Point3{0, 1, 0} : Point3{0, 0, 1});
  }
  return w;
}

}  // namespace

TEST(Bijection, PhiExamples) {
  EXPECT_EQ(phi({0, 0, 0}, BallotModel(2, 3, 6)), (Point{0, 0}));
  EXPECT_EQ(phi({1, 0, 0}, BallotModel(2, 3, 6)), (Point{3, 0}));
  EXPECT_EQ(phi({0, 1, 0}, BallotModel(2, 3, 6)), (Point{-2, 2}));
  EXPECT_EQ(phi({0, 0, 1}, BallotModel(2, 3, 6)), (Point{0, -1}));
  for (std::int64_t n = 0; n < 5; ++n) EXPECT_EQ(phi({n, n, n}, BallotModel(1, 1, 1)), (Point{0, 0}));
}

TEST(Bijection, MapExamples) {
  EXPECT_EQ(map_walk_3to2(Walk3(BallotModel(1, 1, 1), "")).steps(), "");
  const auto w = map_walk_3to2(Walk3(BallotModel(1, 1, 1), "XYZ"));
  EXPECT_EQ(w.steps(), "RDU");
  EXPECT_TRUE(w.is_excursion());
  EXPECT_EQ(map_walk_2to3(Walk2(TandemModel(1, 1, 1), "RDU")).steps(), "XYZ");
  EXPECT_EQ(map_walk_2to3(Walk2(TandemModel(1, 1, 1), "")).steps(), "");
}

TEST(Bijection, RejectsInvalidWalks) {
  EXPECT_THROW(Walk3(BallotModel(1, 1, 1), "Y"), ValidationError);
  EXPECT_THROW(Walk3(BallotModel(1, 1, 1), "XQ"), ValidationError);
  EXPECT_THROW(Walk2(TandemModel(1, 1, 1), "D"), ValidationError);
  EXPECT_THROW(Walk2(TandemModel(1, 1, 1), "RUU"), ValidationError);
  EXPECT_THROW(reverse_reflect(Walk2(TandemModel(1, 1, 1), "R")), ValidationError);
}

TEST(Bijection, Model236WalksMapToExcursions) {
  const BallotModel m(2, 3, 6);
  const auto walks = brute_force_ballot_walks(m, 1);
  ASSERT_FALSE(walks.capped);
  ASSERT_FALSE(walks.walks.empty());
  for (const auto& s : walks.walks) {
    const auto w = map_walk_3to2(Walk3(m, s));
    EXPECT_EQ(w.length(), 11u);
    EXPECT_TRUE(w.is_excursion());
    EXPECT_EQ(w.model(), TandemModel(3, 2, 1));
  }
}

TEST(Bijection, ReverseReflectExamples) {
  const auto w = reverse_reflect(Walk2(TandemModel(1, 1, 1), "RDU"));
  EXPECT_EQ(w.length(), 3u);
  EXPECT_TRUE(w.is_excursion());
  const auto ex = brute_force_excursions(TandemModel(3, 2, 1), 11);
  ASSERT_FALSE(ex.walks.empty());
  for (const auto& s : ex.walks) {
    const Walk2 a(TandemModel(3, 2, 1), s);
    const auto b = reverse_reflect(a);
    EXPECT_EQ(b.model(), TandemModel(1, 2, 3));
    EXPECT_EQ(b.length(), 11u);
    EXPECT_TRUE(b.is_excursion());
    EXPECT_EQ(reverse_reflect(b), a);
  }
}

TEST(Bijection, BruteForceCap) {
  const auto r = brute_force_ballot_walks(BallotModel(1, 1, 1), 4, 10);
  EXPECT_TRUE(r.capped);
}

TEST(BijectionProperty, ImageEqualsExcursionsExhaustive) {
  for (const auto& m : reference_ballot_models()) {
    const auto t = ballot_to_tandem(m);
    const auto counts = count_excursions(tandem_step_set(t), 2 * period(t), CountMode::exact);
    for (std::int64_t n : {1, 2}) {
      if (counts.exact()[period(t) * n] > kSmallCap) continue;
      const auto walks = brute_force_ballot_walks(m, n);
      const auto exc = brute_force_excursions(t, period(t) * n);
      if (walks.capped || exc.capped) continue;
      std::vector<std::string> image;
      for (const auto& s : walks.walks) image.push_back(map_walk_3to2(Walk3(m, s)).steps());
      std::sort(image.begin(), image.end());
      EXPECT_EQ(std::adjacent_find(image.begin(), image.end()), image.end()) << to_string(m);
      EXPECT_EQ(image.size(), exc.walks.size()) << to_string(m);
      EXPECT_EQ(image, exc.walks) << to_string(m);
    }
  }
}

TEST(BijectionProperty, PhiIsLinear) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> d(-1000, 1000);
  for (const auto& m : reference_ballot_models()) {
    for (int i = 0; i < 100; ++i) {
      Point3 u{d(rng), d(rng), d(rng)}, v{d(rng), d(rng), d(rng)};
      EXPECT_EQ(phi(u + v, m), phi(u, m) + phi(v, m));
    }
  }
}

TEST(BijectionProperty, ConeMatchesQuarterPlane) {
  const BallotModel m = tandem_to_ballot(TandemModel(3, 2, 1));
  const auto t = ballot_to_tandem(m);
  for (std::int64_t x = -6; x <= 6; ++x)
    for (std::int64_t y = -6; y <= 6; ++y)
      for (std::int64_t z = -6; z <= 6; ++z) {
        const auto q = phi({x, y, z}, m);
        // Prefix points always have z >= 0; phi alone cannot see that half of the cone.
        EXPECT_EQ(in_ballot_cone({x, y, z}, t), q.x >= 0 && q.y >= 0 && z >= 0) << x << "," << y << "," << z;
      }
}

TEST(BijectionProperty, RoundTripRandomWalks) {
  std::mt19937_64 rng(11);
  int done = 0;
  for (int i = 0; done < 1000; ++i) {
    const auto& m = reference_ballot_models()[i % 15];
    const Walk3 w(m, random_ballot_walk(m, 1 + i % 3, rng));
    const auto w2 = map_walk_3to2(w);
    EXPECT_TRUE(w2.is_excursion());
    EXPECT_EQ(map_walk_2to3(w2), w);
    ++done;
  }
}

TEST(BijectionProperty, ReverseReflectIsBijection) {
  for (const auto& t : coprime_triples(4)) {
    const auto p = period(t);
    const auto counts = count_excursions(tandem_step_set(t), 2 * p, CountMode::exact);
    for (std::int64_t len : {p, 2 * p}) {
      if (counts.exact()[len] > kSmallCap) continue;
      const auto a = brute_force_excursions(t, len);
      const auto b = brute_force_excursions(t.swapped(), len);
      if (a.capped || b.capped) continue;
      std::vector<std::string> image;
      for (const auto& s : a.walks) {
        const auto r = reverse_reflect(Walk2(t, s));
        EXPECT_EQ(r.length(), static_cast<std::size_t>(len));
        EXPECT_EQ(reverse_reflect(r).steps(), s);
        image.push_back(r.steps());
      }
      std::sort(image.begin(), image.end());
      EXPECT_EQ(image, b.walks) << to_string(t) << " len=" << len;
    }
  }
}
