#pragma once

// Distance between a power distribution and the square-root ideal.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "vpower/errors.hpp"
#include "vpower/game_model.hpp"
#include "vpower/power_engine.hpp"
#include "vpower/rational.hpp"

namespace vpower {

/// beta0_i = r_i / sum_j r_j with r_i = sqrt(N_i) rounded to four digits.
struct IdealDistribution {
  std::vector<std::string> ids;
  std::vector<Rational> shares;
};

inline IdealDistribution ideal_distribution(const Council& council) {
  IdealDistribution ideal;
  const std::int64_t total = council.total_sqrt_weight();
  for (int i = 0; i < council.size(); ++i) {
    ideal.ids.push_back(council[i].id);
    ideal.shares.emplace_back(council.sqrt_weights()[static_cast<std::size_t>(i)], total);
  }
  return ideal;
}

namespace detail {

inline void require_same_members(const PowerReport& report, const IdealDistribution& ideal) {
  bool same = report.members.size() == ideal.ids.size();
  for (std::size_t i = 0; same && i < ideal.ids.size(); ++i) same = report.members[i].id == ideal.ids[i];
  if (!same) throw ConfigError("power report and ideal distribution cover different members");
}

/// (a - b) as a long double, with the cross products taken in 128 bits.
inline long double difference(const Rational& a, const Rational& b) {
  const int128 num = static_cast<int128>(a.num()) * b.den() - static_cast<int128>(b.num()) * a.den();
  const int128 den = static_cast<int128>(a.den()) * b.den();
  return static_cast<long double>(num) / static_cast<long double>(den);
}

/// (ideal - actual) / ideal.
inline long double relative_deviation(const Rational& ideal, const Rational& actual) {
  const int128 num = static_cast<int128>(ideal.num()) * actual.den() - static_cast<int128>(actual.num()) * ideal.den();
  const int128 den = static_cast<int128>(ideal.num()) * actual.den();
  return static_cast<long double>(num) / static_cast<long double>(den);
}

}  // namespace detail

/// sigma^2 = sum_i (beta0_i - beta_i)^2, as a plain fraction (multiply by 1000
/// for per mille).
inline double error_rate(const PowerReport& report, const IdealDistribution& ideal) {
  detail::require_same_members(report, ideal);
  long double sum = 0;
  for (std::size_t i = 0; i < ideal.shares.size(); ++i) {
    const long double d = detail::difference(ideal.shares[i], report.members[i].banzhaf_index);
    sum += d * d;
  }
  return static_cast<double>(sum);
}

struct MaxDeviation {
  double value = 0;
  std::string member;
};

/// max_i |beta0_i - beta_i| / beta0_i and the member attaining it (first on ties).
inline MaxDeviation max_relative_deviation(const PowerReport& report, const IdealDistribution& ideal) {
  detail::require_same_members(report, ideal);
  MaxDeviation best{-1.0, {}};
  for (std::size_t i = 0; i < ideal.shares.size(); ++i) {
    if (ideal.shares[i].num() <= 0) throw ConfigError("ideal share of '" + ideal.ids[i] + "' is not positive");
    const double d = static_cast<double>(std::fabs(detail::relative_deviation(ideal.shares[i], report.members[i].banzhaf_index)));
    if (d > best.value) best = {d, ideal.ids[i]};
  }
  return best;
}

struct FairnessAssessment {
  IdealDistribution ideal;
  /// Signed (beta0_i - beta_i) / beta0_i per member.
  std::vector<double> relative_deviations;
  double error_rate = 0;
  MaxDeviation max_deviation;

  double error_rate_permille() const { return error_rate * 1000; }
};

inline FairnessAssessment assess(const Council& council, const PowerReport& report) {
  FairnessAssessment a;
  a.ideal = ideal_distribution(council);
  a.error_rate = error_rate(report, a.ideal);
  a.max_deviation = max_relative_deviation(report, a.ideal);
  for (std::size_t i = 0; i < a.ideal.shares.size(); ++i)
    a.relative_deviations.push_back(
        static_cast<double>(detail::relative_deviation(a.ideal.shares[i], report.members[i].banzhaf_index)));
  return a;
}

/// Closed-form approximation of the quota that makes square-root weights
/// yield square-root power: (1 + sqrt(sum N) / sum sqrt(N)) / 2, using exact
/// square roots.
inline double sz_quota(const Council& council) {
  long double root_sum = 0;
  for (const auto& m : council.members()) root_sum += std::sqrt(static_cast<long double>(m.population));
  const long double total = std::sqrt(static_cast<long double>(council.total_population()));
  return static_cast<double>((1 + total / root_sum) / 2);
}

}  // namespace vpower
