#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "vpower/eu27.hpp"
#include "vpower/power_engine.hpp"

using namespace vpower;

namespace {

Council council_of(const std::vector<std::int64_t>& populations, const std::vector<std::int64_t>& weights = {}) {
  std::vector<MemberState> ms;
  for (std::size_t i = 0; i < populations.size(); ++i) {
    MemberState m{"m" + std::to_string(i), "", populations[i], std::nullopt};
    if (!weights.empty()) m.nice_weight = weights[i];
    ms.push_back(m);
  }
  return Council(ms);
}

VotingRule weight_rule(std::int64_t quota) {
  return {{Criterion::absolute(CriterionKind::negotiated_weight, quota)}, std::nullopt};
}

std::vector<std::uint64_t> swings(const PowerReport& r) {
  std::vector<std::uint64_t> out;
  for (const auto& m : r.members) out.push_back(m.swings);
  return out;
}

struct Game {
  Council council;
  VotingRule rule;
};

// Random council (weights and populations up to 50) with 1-3 random criteria.
Game random_game(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<std::int64_t> value(1, 50), weight(0, 50);
  std::vector<std::int64_t> pops(static_cast<std::size_t>(n)), ws(static_cast<std::size_t>(n));
  for (auto& p : pops) p = value(rng);
  for (auto& w : ws) w = weight(rng);
  Council council = council_of(pops, ws);
  std::vector<CriterionKind> kinds{CriterionKind::member_count, CriterionKind::negotiated_weight,
                                   CriterionKind::population, CriterionKind::sqrt_weight};
  std::shuffle(kinds.begin(), kinds.end(), rng);
  const int k = std::uniform_int_distribution<int>(1, 3)(rng);
  VotingRule rule;
  for (int c = 0; c < k; ++c) {
    if (rng() % 2) {
      const std::int64_t total = criterion_total(council, kinds[static_cast<std::size_t>(c)]);
      rule.criteria.push_back(Criterion::absolute(kinds[static_cast<std::size_t>(c)],
                                                  std::uniform_int_distribution<std::int64_t>(0, total + 1)(rng)));
    } else {
      rule.criteria.push_back(Criterion::relative(kinds[static_cast<std::size_t>(c)],
                                                  Rational(std::uniform_int_distribution<int>(1, 100)(rng), 100)));
    }
  }
  return {council, rule};
}

}  // namespace

TEST(Exact, SymmetricMajority) {
  const Council c = council_of({1, 1, 1}, {1, 1, 1});
  const PowerReport r = banzhaf_exact(c, weight_rule(2));
  EXPECT_EQ(swings(r), (std::vector<std::uint64_t>{2, 2, 2}));
  for (const auto& m : r.members) EXPECT_EQ(m.banzhaf_index, Rational(1, 3));
  EXPECT_EQ(r.efficiency, Rational(1, 2));
}

TEST(Exact, WeightedThreeOneOne) {
  const Council c = council_of({1, 1, 1}, {3, 1, 1});
  for (const PowerReport& r : {banzhaf_dp(c, weight_rule(4)), banzhaf_enumerate(c, weight_rule(4)),
                               brute_force_oracle(c, weight_rule(4))})
    EXPECT_EQ(swings(r), (std::vector<std::uint64_t>{3, 1, 1})) << to_string(r.backend);
}

TEST(Exact, Dictator) {
  const Council one = council_of({1}, {7});
  const PowerReport r = banzhaf_dp(one, weight_rule(7));
  EXPECT_EQ(swings(r), (std::vector<std::uint64_t>{1}));
  EXPECT_EQ(r.efficiency, Rational(1, 2));

  const Council c = council_of({1, 1, 1, 1, 1}, {10, 1, 1, 1, 1});
  for (const PowerReport& p : {brute_force_oracle(c, weight_rule(10)), banzhaf_exact(c, weight_rule(10))}) {
    EXPECT_EQ(p.members[0].swings, 16u);
    for (int i = 1; i < 5; ++i) EXPECT_EQ(p.members[static_cast<std::size_t>(i)].swings, 0u);
    EXPECT_EQ(p.members[0].banzhaf_index, Rational(1));
  }
}

TEST(Exact, Unanimity) {
  const Council c = council_of({3, 1, 4, 1, 5, 9});
  const VotingRule rule{{Criterion::absolute(CriterionKind::member_count, 6)}, std::nullopt};
  for (const PowerReport& p : {brute_force_oracle(c, rule), banzhaf_enumerate(c, rule), banzhaf_dp(c, rule)}) {
    for (const auto& m : p.members) EXPECT_EQ(m.swings, 1u);
    EXPECT_EQ(p.efficiency, Rational(1, 64));
  }
}

TEST(Exact, NobodyDecisive) {
  // Quota above the total: nothing wins, every beta is zero.
  const Council c = council_of({1, 1}, {1, 1});
  const PowerReport p = banzhaf_exact(c, weight_rule(3));
  EXPECT_EQ(p.efficiency, Rational(0));
  for (const auto& m : p.members) EXPECT_EQ(m.banzhaf_index, Rational(0));
}

TEST(Properties, OracleEquivalence) {
  std::mt19937_64 rng(2024);
  int dp_games = 0;
  for (int g = 0; g < 600; ++g) {
    const int n = std::uniform_int_distribution<int>(1, 12)(rng);
    const auto [council, rule] = random_game(rng, n);
    const PowerReport oracle = brute_force_oracle(council, rule);
    const PowerReport exact = banzhaf_exact(council, rule);
    const PowerReport enumerated = banzhaf_enumerate(council, rule, 3);
    ASSERT_TRUE(exact.same_numbers(oracle)) << "game " << g << ": " << describe(rule);
    ASSERT_TRUE(enumerated.same_numbers(oracle)) << "game " << g << ": " << describe(rule);
    if (dp_plan(council, rule)) {
      ++dp_games;
      ASSERT_TRUE(banzhaf_dp(council, rule).same_numbers(oracle)) << "game " << g;
      // Tiny budget forces the meet-in-the-middle route.
      ASSERT_TRUE(banzhaf_dp(council, rule, 1).same_numbers(oracle)) << "game " << g;
    } else {
      ASSERT_THROW(banzhaf_dp(council, rule), DispatchError);
    }
  }
  EXPECT_GT(dp_games, 100);
}

TEST(Properties, BlockingClauseMatchesOracle) {
  std::mt19937_64 rng(7);
  for (int g = 0; g < 50; ++g) {
    const int n = std::uniform_int_distribution<int>(4, 11)(rng);
    auto [council, rule] = random_game(rng, n);
    rule.blocking_minority_min = std::uniform_int_distribution<int>(1, 4)(rng);
    ASSERT_TRUE(banzhaf_exact(council, rule).same_numbers(brute_force_oracle(council, rule)));
  }
}

TEST(Properties, NormalizationIsExact) {
  std::mt19937_64 rng(99);
  for (int g = 0; g < 200; ++g) {
    const auto [council, rule] = random_game(rng, std::uniform_int_distribution<int>(1, 12)(rng));
    const PowerReport p = banzhaf_exact(council, rule);
    Rational sum(0);
    std::uint64_t tb = 0;
    for (const auto& m : p.members) {
      sum = sum + m.banzhaf_index;
      tb += m.swings;
      EXPECT_GE(m.normalized_banzhaf, Rational(0));
      EXPECT_LE(m.normalized_banzhaf, Rational(1));
    }
    EXPECT_EQ(sum, tb > 0 ? Rational(1) : Rational(0));
    EXPECT_GE(p.efficiency, Rational(0));
    EXPECT_LE(p.efficiency, Rational(1));
  }
}

TEST(Properties, SymmetryOfIdenticalMembers) {
  std::mt19937_64 rng(5);
  for (int g = 0; g < 100; ++g) {
    auto [base, rule] = random_game(rng, std::uniform_int_distribution<int>(2, 11)(rng));
    std::vector<MemberState> ms = base.members();
    ms.push_back({"twin", "", ms[0].population, ms[0].nice_weight});
    const Council council(ms);
    const PowerReport p = banzhaf_exact(council, rule);
    ASSERT_EQ(p.members.front().swings, p.members.back().swings);
  }
}

TEST(Properties, DummyAndWeightMonotonicity) {
  std::mt19937_64 rng(6);
  for (int g = 0; g < 200; ++g) {
    const int n = std::uniform_int_distribution<int>(2, 12)(rng);
    std::vector<std::int64_t> ws(static_cast<std::size_t>(n));
    for (auto& w : ws) w = std::uniform_int_distribution<std::int64_t>(0, 50)(rng);
    ws[0] = 0;
    const Council c = council_of(std::vector<std::int64_t>(static_cast<std::size_t>(n), 1), ws);
    std::int64_t total = 0;
    for (auto w : ws) total += w;
    const PowerReport p = banzhaf_exact(c, weight_rule(std::uniform_int_distribution<std::int64_t>(1, total + 1)(rng)));
    ASSERT_EQ(p.members[0].swings, 0u);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (ws[static_cast<std::size_t>(i)] >= ws[static_cast<std::size_t>(j)]) {
          ASSERT_GE(p.members[static_cast<std::size_t>(i)].swings, p.members[static_cast<std::size_t>(j)].swings);
        }
  }
}

TEST(Properties, EfficiencyFallsAsQuotasRise) {
  std::mt19937_64 rng(8);
  for (int g = 0; g < 100; ++g) {
    const auto [council, rule] = random_game(rng, std::uniform_int_distribution<int>(1, 10)(rng));
    const Rational base = banzhaf_exact(council, rule).efficiency;
    for (std::size_t k = 0; k < rule.criteria.size(); ++k) {
      VotingRule raised = rule;
      auto& q = raised.criteria[k].quota;
      if (auto* a = std::get_if<AbsoluteQuota>(&q)) {
        a->threshold += 1 + static_cast<std::int64_t>(rng() % 5);
      } else {
        auto& f = std::get<RelativeQuota>(q).fraction;
        f = std::min(Rational(1), f + Rational(static_cast<std::int64_t>(1 + rng() % 20), 100));
      }
      ASSERT_LE(banzhaf_exact(council, raised).efficiency, base);
    }
  }
}

TEST(Properties, WorkerCountDoesNotMatter) {
  const Council eu = eu27_2008();
  const VotingRule nice = make_nice_rule(eu, 255, 14, Rational(62, 100));
  const PowerReport one = banzhaf_enumerate(eu, nice, 1);
  for (int w : {2, 5, 16}) EXPECT_TRUE(banzhaf_enumerate(eu, nice, w).same_numbers(one)) << w;
}

TEST(Eu27, DpMatchesEnumerationOnLisbonAndJc) {
  const Council eu = eu27_2008();
  for (const VotingRule& rule : {make_lisbon_rule(15, Rational(65, 100), false),
                                 make_jc_rule(eu, Rational(615, 1000), false),
                                 make_jc_rule(eu, Rational(647, 1000), true)}) {
    const PowerReport dp = banzhaf_dp(eu, rule);
    EXPECT_EQ(dp.backend, Backend::dp);
    EXPECT_TRUE(dp.same_numbers(banzhaf_enumerate(eu, rule))) << describe(rule);
    EXPECT_TRUE(dp.same_numbers(banzhaf_dp(eu, rule, 1))) << describe(rule);
  }
}

TEST(Eu27, NiceHeadlineValues) {
  const Council eu = eu27_2008();
  const PowerReport p = banzhaf_exact(eu, make_nice_rule(eu, 255, 14, Rational(62, 100)));
  EXPECT_EQ(p.backend, Backend::enumeration);
  EXPECT_EQ((p.members[0].banzhaf_index * Rational(100)).to_decimal(4), "7.7828");
  EXPECT_EQ((p.members[26].banzhaf_index * Rational(100)).to_decimal(4), "0.9422");
  EXPECT_EQ((p.efficiency * Rational(100)).to_decimal(2), "2.03");
}

TEST(MonteCarlo, SeedDeterminism) {
  const Council eu = eu27_2008();
  const VotingRule lisbon = make_lisbon_rule(15, Rational(65, 100), false);
  const PowerReport a = banzhaf_monte_carlo(eu, lisbon, 20'000, 42, 1);
  const PowerReport b = banzhaf_monte_carlo(eu, lisbon, 20'000, 42, 4);
  EXPECT_EQ(a.members, b.members);
  EXPECT_EQ(a.efficiency, b.efficiency);
  EXPECT_EQ(a.efficiency_stderr, b.efficiency_stderr);
  const PowerReport c = banzhaf_monte_carlo(eu, lisbon, 20'000, 43, 1);
  EXPECT_NE(a.winning, c.winning);
}

namespace {

void expect_within_three_sigma(const PowerReport& exact, const PowerReport& mc) {
  ASSERT_TRUE(mc.efficiency_stderr);
  EXPECT_LE(std::fabs(mc.efficiency.to_double() - exact.efficiency.to_double()), 3 * *mc.efficiency_stderr);
  for (std::size_t i = 0; i < exact.members.size(); ++i) {
    const auto& e = exact.members[i];
    const auto& m = mc.members[i];
    ASSERT_TRUE(m.normalized_stderr && m.index_stderr);
    EXPECT_LE(std::fabs(m.normalized_banzhaf.to_double() - e.normalized_banzhaf.to_double()), 3 * *m.normalized_stderr)
        << e.id;
    EXPECT_LE(std::fabs(m.banzhaf_index.to_double() - e.banzhaf_index.to_double()), 3 * *m.index_stderr) << e.id;
  }
}

}  // namespace

TEST(MonteCarlo, SymmetricMajority) {
  const Council c = council_of({1, 1, 1}, {1, 1, 1});
  const PowerReport mc = banzhaf_monte_carlo(c, weight_rule(2), 1'000'000, 1);
  EXPECT_EQ(mc.backend, Backend::monte_carlo);
  expect_within_three_sigma(banzhaf_exact(c, weight_rule(2)), mc);
}

TEST(MonteCarlo, ThirtyEqualVoters) {
  const Council c = council_of(std::vector<std::int64_t>(30, 1));
  const VotingRule rule{{Criterion::absolute(CriterionKind::member_count, 16)}, std::nullopt};
  expect_within_three_sigma(banzhaf_dp(c, rule), banzhaf_monte_carlo(c, rule, 400'000, 3));
}

TEST(MonteCarlo, LisbonEfficiency) {
  const Council eu = eu27_2008();
  const VotingRule lisbon = make_lisbon_rule(15, Rational(65, 100), false);
  expect_within_three_sigma(banzhaf_exact(eu, lisbon), banzhaf_monte_carlo(eu, lisbon, 1'000'000, 20080101));
}

TEST(Dispatch, CapacityAndEligibility) {
  const Council big = council_of(std::vector<std::int64_t>(31, 1), std::vector<std::int64_t>(31, 1));
  const VotingRule two{{Criterion::absolute(CriterionKind::negotiated_weight, 16),
                        Criterion::absolute(CriterionKind::population, 16)},
                       std::nullopt};
  EXPECT_THROW(banzhaf_exact(big, two), CapacityError);
  EXPECT_THROW(banzhaf_enumerate(big, two), CapacityError);
  EXPECT_THROW(brute_force_oracle(council_of(std::vector<std::int64_t>(16, 1)), weight_rule(1)), CapacityError);
  EXPECT_THROW(banzhaf_dp(big, two), DispatchError);
  // Single-criterion rules stay exact past 30 members through dp.
  EXPECT_EQ(banzhaf_exact(big, weight_rule(16)).backend, Backend::dp);
  // Automatic dispatch falls back to Monte Carlo.
  PowerOptions options;
  options.samples = 1000;
  EXPECT_EQ(compute_power(big, two, options).backend, Backend::monte_carlo);
  EXPECT_THROW(banzhaf_monte_carlo(big, two, 0, 1), ConfigError);
}
