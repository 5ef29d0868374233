#pragma once

// Councils, criteria and composite voting rules.
//
// A coalition is a bitmask over the council's fixed member order. Every
// criterion compares an integer sum against an integer threshold, so winning
// is decided without floating point. The square-root criterion uses
// sqrt(population) rounded to four fractional digits and scaled by 10^4.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "vpower/errors.hpp"
#include "vpower/rational.hpp"

namespace vpower {

/// Bitmask over council member indices; bit i set means member i votes yes.
using Coalition = std::uint64_t;

/// Largest council the bitmask representation can hold.
inline constexpr int kMaxMembers = 64;

/// Fixed-point scale of square-root weights (four fractional digits).
inline constexpr std::int64_t kSqrtScale = 10'000;

inline constexpr Coalition full_coalition(int n) {
  return n >= 64 ? ~Coalition{0} : (Coalition{1} << n) - 1;
}

inline constexpr Coalition member_bit(int i) { return Coalition{1} << i; }

/// round(sqrt(value) * 10^4), half-up, computed exactly in integers.
inline std::int64_t scaled_sqrt(std::int64_t value) {
  if (value < 0) throw ConfigError("square root of a negative population");
  const int128 target = static_cast<int128>(value) * kSqrtScale * kSqrtScale;
  auto r = static_cast<int128>(std::sqrt(static_cast<long double>(target)));
  while (r * r > target) --r;
  while ((r + 1) * (r + 1) <= target) ++r;
  // r = floor(sqrt(target)); round up when sqrt(target) >= r + 1/2.
  if ((2 * r + 1) * (2 * r + 1) <= 4 * target) ++r;
  return static_cast<std::int64_t>(r);
}

struct MemberState {
  std::string id;
  std::string name;
  std::int64_t population = 0;
  std::optional<std::int64_t> nice_weight;

  friend bool operator==(const MemberState&, const MemberState&) = default;
};

/// Ordered, validated set of members. Immutable after construction.
class Council {
 public:
  explicit Council(std::vector<MemberState> members) : members_(std::move(members)) {
    if (members_.empty()) throw ConfigError("council must have at least one member");
    if (std::ssize(members_) > kMaxMembers)
      throw CapacityError("council has " + std::to_string(members_.size()) + " members; at most " +
                          std::to_string(kMaxMembers) + " are supported");
    std::unordered_set<std::string> seen;
    std::int64_t weight_total = 0;
    bool all_weighted = true;
    for (const auto& m : members_) {
      if (m.id.empty()) throw ConfigError("member with empty id");
      if (!seen.insert(m.id).second) throw ConfigError("duplicate member id '" + m.id + "'");
      if (m.population < 1) throw ConfigError("member '" + m.id + "' has non-positive population");
      if (m.nice_weight) {
        if (*m.nice_weight < 0) throw ConfigError("member '" + m.id + "' has negative weight");
        weight_total += *m.nice_weight;
      } else {
        all_weighted = false;
      }
      total_population_ += m.population;
      sqrt_weights_.push_back(scaled_sqrt(m.population));
      total_sqrt_weight_ += sqrt_weights_.back();
    }
    if (all_weighted) total_nice_weight_ = weight_total;
  }

  int size() const noexcept { return static_cast<int>(members_.size()); }
  const std::vector<MemberState>& members() const noexcept { return members_; }
  const MemberState& operator[](int i) const { return members_.at(static_cast<std::size_t>(i)); }

  std::int64_t total_population() const noexcept { return total_population_; }
  /// Present only when every member carries a negotiated weight.
  std::optional<std::int64_t> total_nice_weight() const noexcept { return total_nice_weight_; }

  /// sqrt(N_i) rounded to four fractional digits, scaled by 10^4.
  const std::vector<std::int64_t>& sqrt_weights() const noexcept { return sqrt_weights_; }
  std::int64_t total_sqrt_weight() const noexcept { return total_sqrt_weight_; }

  std::optional<int> index_of(std::string_view id) const {
    for (int i = 0; i < size(); ++i)
      if (members_[static_cast<std::size_t>(i)].id == id) return i;
    return std::nullopt;
  }

  friend bool operator==(const Council& a, const Council& b) { return a.members_ == b.members_; }

 private:
  std::vector<MemberState> members_;
  std::int64_t total_population_ = 0;
  std::optional<std::int64_t> total_nice_weight_;
  std::vector<std::int64_t> sqrt_weights_;
  std::int64_t total_sqrt_weight_ = 0;
};

enum class CriterionKind { member_count, negotiated_weight, population, sqrt_weight };

inline const char* to_string(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::member_count: return "count";
    case CriterionKind::negotiated_weight: return "weight";
    case CriterionKind::population: return "population";
    case CriterionKind::sqrt_weight: return "sqrt";
  }
  return "?";
}

inline CriterionKind criterion_kind_from_string(std::string_view s) {
  if (s == "count") return CriterionKind::member_count;
  if (s == "weight") return CriterionKind::negotiated_weight;
  if (s == "population") return CriterionKind::population;
  if (s == "sqrt") return CriterionKind::sqrt_weight;
  throw ConfigError("unknown criterion kind '" + std::string(s) + "'");
}

/// Absolute threshold on the criterion sum.
struct AbsoluteQuota {
  std::int64_t threshold = 0;
  friend bool operator==(const AbsoluteQuota&, const AbsoluteQuota&) = default;
};

/// Fraction in (0, 1] of the criterion's council-wide total.
struct RelativeQuota {
  Rational fraction;
  friend bool operator==(const RelativeQuota&, const RelativeQuota&) = default;
};

struct Criterion {
  CriterionKind kind = CriterionKind::member_count;
  std::variant<AbsoluteQuota, RelativeQuota> quota;

  static Criterion absolute(CriterionKind kind, std::int64_t threshold) {
    if (threshold < 0) throw ConfigError("absolute quota must be non-negative");
    return {kind, AbsoluteQuota{threshold}};
  }
  static Criterion relative(CriterionKind kind, Rational fraction) {
    if (fraction <= Rational(0) || fraction > Rational(1))
      throw ConfigError("relative quota " + fraction.to_decimal(6) + " outside (0, 1]");
    return {kind, RelativeQuota{fraction}};
  }

  friend bool operator==(const Criterion&, const Criterion&) = default;
};

/// Conjunction of criteria, optionally with a blocking-minority override:
/// with `blocking_minority_min = k`, any coalition whose complement has fewer
/// than k members also wins.
struct VotingRule {
  std::vector<Criterion> criteria;
  std::optional<int> blocking_minority_min;

  friend bool operator==(const VotingRule&, const VotingRule&) = default;
};

/// Weight of member i under a criterion kind.
inline std::int64_t member_weight(const Council& council, CriterionKind kind, int i) {
  const auto& m = council[i];
  switch (kind) {
    case CriterionKind::member_count: return 1;
    case CriterionKind::population: return m.population;
    case CriterionKind::sqrt_weight: return council.sqrt_weights()[static_cast<std::size_t>(i)];
    case CriterionKind::negotiated_weight:
      if (!m.nice_weight) throw ConfigError("member '" + m.id + "' has no negotiated weight");
      return *m.nice_weight;
  }
  return 0;
}

/// Per-member weights of a criterion kind over a council.
inline std::vector<std::int64_t> criterion_weights(const Council& council, CriterionKind kind) {
  std::vector<std::int64_t> w(static_cast<std::size_t>(council.size()));
  for (int i = 0; i < council.size(); ++i) w[static_cast<std::size_t>(i)] = member_weight(council, kind, i);
  return w;
}

inline std::int64_t criterion_total(const Council& council, CriterionKind kind) {
  switch (kind) {
    case CriterionKind::member_count: return council.size();
    case CriterionKind::population: return council.total_population();
    case CriterionKind::sqrt_weight: return council.total_sqrt_weight();
    case CriterionKind::negotiated_weight:
      if (const auto total = council.total_nice_weight()) return *total;
      criterion_weights(council, kind);  // throws naming the member without a weight
      break;
  }
  return 0;
}

/// Smallest integer sum satisfying the criterion: the absolute threshold, or
/// ceil(fraction * total) for relative quotas.
inline std::int64_t absolute_threshold(const Council& council, const Criterion& c) {
  if (const auto* a = std::get_if<AbsoluteQuota>(&c.quota)) return a->threshold;
  const Rational& f = std::get<RelativeQuota>(c.quota).fraction;
  const int128 total = criterion_total(council, c.kind);
  return static_cast<std::int64_t>(detail::ceil_div(total * f.num(), f.den()));
}

/// Reference evaluation of one criterion: sums the coalition and compares by
/// exact cross-multiplication.
inline bool satisfies(const Council& council, const Criterion& c, Coalition coalition) {
  int128 sum = 0;
  for (int i = 0; i < council.size(); ++i)
    if (coalition & member_bit(i)) sum += member_weight(council, c.kind, i);
  if (const auto* a = std::get_if<AbsoluteQuota>(&c.quota)) return sum >= a->threshold;
  const Rational& f = std::get<RelativeQuota>(c.quota).fraction;
  return sum * f.den() >= static_cast<int128>(f.num()) * criterion_total(council, c.kind);
}

/// True iff the coalition passes the rule. Unoptimized; the power backends
/// use CompiledRule instead.
inline bool wins(const Council& council, const VotingRule& rule, Coalition coalition) {
  const int n = council.size();
  if (coalition & ~full_coalition(n)) throw ConfigError("coalition references a non-member");
  bool all = true;
  for (const auto& c : rule.criteria) {
    if (!satisfies(council, c, coalition)) {
      all = false;
      break;
    }
  }
  if (all) return true;
  if (rule.blocking_minority_min) {
    const int against = n - std::popcount(coalition);
    return against < *rule.blocking_minority_min;
  }
  return false;
}

/// Rule lowered onto a council: one weight column and one integer threshold
/// per criterion.
class CompiledRule {
 public:
  struct Column {
    CriterionKind kind;
    std::vector<std::int64_t> weights;
    std::int64_t threshold;
  };

  CompiledRule(const Council& council, const VotingRule& rule) : n_(council.size()) {
    if (rule.criteria.empty()) throw ConfigError("voting rule has no criteria");
    for (const auto& c : rule.criteria)
      columns_.push_back({c.kind, criterion_weights(council, c.kind), absolute_threshold(council, c)});
    if (rule.blocking_minority_min) {
      if (*rule.blocking_minority_min < 1) throw ConfigError("blocking minority must be at least 1");
      min_size_override_ = n_ - *rule.blocking_minority_min + 1;
    }
  }

  int size() const noexcept { return n_; }
  const std::vector<Column>& columns() const noexcept { return columns_; }
  /// Coalitions of at least this many members win regardless of criteria.
  std::optional<int> min_size_override() const noexcept { return min_size_override_; }

  bool wins(Coalition coalition) const {
    bool all = true;
    for (const auto& col : columns_) {
      std::int64_t sum = 0;
      for (Coalition m = coalition; m; m &= m - 1) sum += col.weights[static_cast<std::size_t>(std::countr_zero(m))];
      if (sum < col.threshold) {
        all = false;
        break;
      }
    }
    return all || (min_size_override_ && std::popcount(coalition) >= *min_size_override_);
  }

 private:
  int n_;
  std::vector<Column> columns_;
  std::optional<int> min_size_override_;
};

// ---- rule families ---------------------------------------------------------

/// Triple majority: negotiated weight >= weight_quota, member count >=
/// count_quota and population share >= pop_quota.
inline VotingRule make_nice_rule(const Council& council, std::int64_t weight_quota, std::int64_t count_quota,
                                 Rational pop_quota) {
  for (const auto& m : council.members())
    if (!m.nice_weight) throw ConfigError("member '" + m.id + "' has no negotiated weight");
  if (count_quota < 1) throw ConfigError("count quota must be at least 1");
  return VotingRule{{Criterion::absolute(CriterionKind::negotiated_weight, weight_quota),
                     Criterion::absolute(CriterionKind::member_count, count_quota),
                     Criterion::relative(CriterionKind::population, pop_quota)},
                    std::nullopt};
}

/// Double majority of member count and population share.
inline VotingRule make_lisbon_rule(std::int64_t count_quota, Rational pop_quota, bool with_blocking_clause) {
  if (count_quota < 1) throw ConfigError("count quota must be at least 1");
  return VotingRule{{Criterion::absolute(CriterionKind::member_count, count_quota),
                     Criterion::relative(CriterionKind::population, pop_quota)},
                    with_blocking_clause ? std::optional<int>(4) : std::nullopt};
}

/// Square-root weights with a relative quota; with_count_majority adds a
/// simple majority of members (floor(n/2) + 1).
inline VotingRule make_jc_rule(const Council& council, Rational pop_quota, bool with_count_majority) {
  VotingRule rule{{Criterion::relative(CriterionKind::sqrt_weight, pop_quota)}, std::nullopt};
  if (with_count_majority)
    rule.criteria.push_back(Criterion::absolute(CriterionKind::member_count, council.size() / 2 + 1));
  return rule;
}

/// Short human-readable rendering, e.g. "weight>=255 & count>=14 & population>=62%".
inline std::string describe(const VotingRule& rule) {
  std::string out;
  for (const auto& c : rule.criteria) {
    if (!out.empty()) out += " & ";
    out += to_string(c.kind);
    out += ">=";
    if (const auto* a = std::get_if<AbsoluteQuota>(&c.quota)) {
      out += std::to_string(a->threshold);
    } else {
      const Rational pct = std::get<RelativeQuota>(c.quota).fraction * Rational(100);
      std::string s = pct.to_decimal(4);
      while (s.back() == '0') s.pop_back();
      if (s.back() == '.') s.pop_back();
      out += s + "%";
    }
  }
  if (rule.blocking_minority_min) out += " | blocking>=" + std::to_string(*rule.blocking_minority_min);
  return out;
}

}  // namespace vpower
