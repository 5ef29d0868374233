#pragma once

// Banzhaf power and decision efficiency for a rule over a council.
//
// Four routes share one report type:
//   banzhaf_enumerate    all 2^n coalitions, Gray-code order, parallel chunks
//   banzhaf_dp           counting by (cardinality, weight); dense table or
//                        meet-in-the-middle over sorted half sums
//   banzhaf_monte_carlo  uniform random coalitions, seeded substreams
//   brute_force_oracle   naive double loop used only for validation
//
// The exact backends rely on monotonicity: for a monotone rule the number of
// swings of member i equals (winning coalitions containing i) minus (winning
// coalitions without i), i.e. TB_i = 2 * W_i - W.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "vpower/detail/enumerate.hpp"
#include "vpower/errors.hpp"
#include "vpower/game_model.hpp"
#include "vpower/parallel.hpp"
#include "vpower/rational.hpp"

namespace vpower {

enum class Backend { automatic, enumeration, dp, monte_carlo, oracle };

inline const char* to_string(Backend b) {
  switch (b) {
    case Backend::automatic: return "auto";
    case Backend::enumeration: return "enumeration";
    case Backend::dp: return "dp";
    case Backend::monte_carlo: return "monte_carlo";
    case Backend::oracle: return "oracle";
  }
  return "?";
}

/// Exact enumeration handles at most this many members.
inline constexpr int kMaxExactMembers = 30;
inline constexpr int kMaxOracleMembers = 15;

struct MemberPower {
  std::string id;
  /// Exact backends: TB_i. Monte Carlo: sampled coalitions where i was decisive.
  std::uint64_t swings = 0;
  /// NB_i, the probability of being decisive (an estimate for Monte Carlo).
  Rational normalized_banzhaf;
  /// beta_i = TB_i / sum_j TB_j; all zero when nobody is ever decisive.
  Rational banzhaf_index;
  std::optional<double> normalized_stderr;
  std::optional<double> index_stderr;

  friend bool operator==(const MemberPower&, const MemberPower&) = default;
};

struct PowerReport {
  VotingRule rule;
  std::vector<MemberPower> members;
  /// Winning coalitions (or winning samples) over the total considered.
  Rational efficiency;
  std::uint64_t winning = 0;
  Backend backend = Backend::enumeration;
  /// Monte Carlo only.
  std::uint64_t samples = 0;
  std::optional<double> efficiency_stderr;

  int size() const noexcept { return static_cast<int>(members.size()); }
  double beta(int i) const { return members.at(static_cast<std::size_t>(i)).banzhaf_index.to_double(); }

  /// Field-for-field equality of the numbers, ignoring which backend produced them.
  bool same_numbers(const PowerReport& other) const {
    if (members.size() != other.members.size() || efficiency != other.efficiency || winning != other.winning)
      return false;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const auto& a = members[i];
      const auto& b = other.members[i];
      if (a.id != b.id || a.swings != b.swings || a.normalized_banzhaf != b.normalized_banzhaf ||
          a.banzhaf_index != b.banzhaf_index)
        return false;
    }
    return true;
  }
};

struct PowerOptions {
  Backend backend = Backend::automatic;
  /// 0 selects default_workers().
  int workers = 0;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 20080101;
  /// Upper bound for the dense (cardinality x weight) tables of the dp backend.
  std::size_t dp_memory_budget = std::size_t{256} << 20;
};

/// Builds an exact report from swing counts and the number of winning coalitions.
inline PowerReport make_exact_report(const Council& council, const VotingRule& rule,
                                     const std::vector<std::uint64_t>& swings, std::uint64_t winning,
                                     Backend backend) {
  const int n = council.size();
  if (n > 62) throw CapacityError("exact report needs n <= 62");
  PowerReport report;
  report.rule = rule;
  report.backend = backend;
  report.winning = winning;
  report.efficiency = Rational(static_cast<std::int64_t>(winning), std::int64_t{1} << n);
  std::uint64_t total = 0;
  for (auto s : swings) total += s;
  const auto half = std::int64_t{1} << (n - 1);
  for (int i = 0; i < n; ++i) {
    const auto s = static_cast<std::int64_t>(swings[static_cast<std::size_t>(i)]);
    report.members.push_back({council[i].id, static_cast<std::uint64_t>(s), Rational(s, half),
                              total > 0 ? Rational(s, static_cast<std::int64_t>(total)) : Rational(0),
                              std::nullopt, std::nullopt});
  }
  return report;
}

namespace detail {

/// TB_i = 2 * (winning coalitions containing i) - (all winning coalitions).
inline std::vector<std::uint64_t> swings_from_inclusion(const std::vector<std::uint64_t>& winning_with,
                                                        std::uint64_t winning) {
  std::vector<std::uint64_t> tb(winning_with.size());
  for (std::size_t i = 0; i < tb.size(); ++i) tb[i] = 2 * winning_with[i] - winning;
  return tb;
}

}  // namespace detail

/// Exhaustive enumeration over all 2^n coalitions. Results do not depend on
/// the worker count.
inline PowerReport banzhaf_enumerate(const Council& council, const VotingRule& rule, int workers = 0) {
  const int n = council.size();
  if (n > kMaxExactMembers)
    throw CapacityError("exact enumeration supports at most " + std::to_string(kMaxExactMembers) +
                        " members (council has " + std::to_string(n) + "); use the monte_carlo backend");
  const CompiledRule compiled(council, rule);
  detail::WeightTable table;
  std::vector<std::int64_t> thresholds;
  for (const auto& col : compiled.columns()) {
    table.add_column(col.weights);
    thresholds.push_back(col.threshold);
  }
  const int cols = table.columns;
  const int min_size = compiled.min_size_override().value_or(n + 1);

  const int high = detail::chunk_bits(n);
  const int chunks = 1 << high;
  if (workers <= 0) workers = default_workers();
  workers = std::max(1, std::min(workers, chunks));
  std::vector<std::vector<std::uint64_t>> with(static_cast<std::size_t>(workers),
                                               std::vector<std::uint64_t>(static_cast<std::size_t>(n)));
  std::vector<std::uint64_t> wins(static_cast<std::size_t>(workers));

  parallel_for(chunks, workers, [&](int worker, int chunk) {
    auto& counts = with[static_cast<std::size_t>(worker)];
    std::uint64_t local_wins = 0;
    detail::enumerate_chunk(table, high, static_cast<std::uint64_t>(chunk),
                            [&](Coalition mask, const detail::ColumnSums& sums) {
                              bool ok = true;
                              for (int c = 0; c < cols; ++c) {
                                if (sums[static_cast<std::size_t>(c)] < thresholds[static_cast<std::size_t>(c)]) {
                                  ok = false;
                                  break;
                                }
                              }
                              if (!ok && std::popcount(mask) < min_size) return;
                              ++local_wins;
                              for (Coalition m = mask; m; m &= m - 1)
                                ++counts[static_cast<std::size_t>(std::countr_zero(m))];
                            });
    wins[static_cast<std::size_t>(worker)] += local_wins;
  });

  std::vector<std::uint64_t> winning_with(static_cast<std::size_t>(n));
  std::uint64_t winning = 0;
  for (int w = 0; w < workers; ++w) {
    winning += wins[static_cast<std::size_t>(w)];
    for (int i = 0; i < n; ++i)
      winning_with[static_cast<std::size_t>(i)] += with[static_cast<std::size_t>(w)][static_cast<std::size_t>(i)];
  }
  return make_exact_report(council, rule, detail::swings_from_inclusion(winning_with, winning), winning,
                           Backend::enumeration);
}

// ---- dp backend --------------------------------------------------------------

/// A rule the dp backend can evaluate: member count >= count_threshold and
/// weight sum >= weight_threshold.
struct DpPlan {
  std::int64_t count_threshold = 0;
  std::vector<std::int64_t> weights;
  std::int64_t weight_threshold = 0;
};

/// Largest council the meet-in-the-middle route accepts (two halves of 2^22).
inline constexpr int kMaxSplitMembers = 44;

/// Returns the dp reduction of a rule, or nullopt when the rule has a
/// blocking clause or more than one non-count criterion.
inline std::optional<DpPlan> dp_plan(const Council& council, const VotingRule& rule) {
  if (rule.blocking_minority_min || rule.criteria.empty()) return std::nullopt;
  DpPlan plan;
  plan.weights.assign(static_cast<std::size_t>(council.size()), 0);
  bool have_weight = false;
  for (const auto& c : rule.criteria) {
    const std::int64_t t = absolute_threshold(council, c);
    if (c.kind == CriterionKind::member_count) {
      plan.count_threshold = std::max(plan.count_threshold, t);
      continue;
    }
    if (have_weight) return std::nullopt;
    have_weight = true;
    plan.weights = criterion_weights(council, c.kind);
    plan.weight_threshold = t;
  }
  return plan;
}

namespace detail {

/// Subset sums of a member list grouped by cardinality, each group sorted.
inline std::vector<std::vector<std::int64_t>> half_sums(std::span<const std::int64_t> weights) {
  const int k = static_cast<int>(weights.size());
  std::vector<std::vector<std::int64_t>> by_card(static_cast<std::size_t>(k + 1));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::int64_t s = 0;
    for (std::uint64_t m = mask; m; m &= m - 1) s += weights[static_cast<std::size_t>(std::countr_zero(m))];
    by_card[static_cast<std::size_t>(std::popcount(mask))].push_back(s);
  }
  for (auto& v : by_card) std::sort(v.begin(), v.end());
  return by_card;
}

/// Number of subsets with cardinality >= min_card and weight >= min_weight,
/// counted as pairs (subset of the first half, subset of the second half).
class SplitCounter {
 public:
  explicit SplitCounter(std::span<const std::int64_t> weights) {
    const std::size_t mid = weights.size() / 2;
    left_ = half_sums(weights.first(mid));
    const auto right = half_sums(weights.subspan(mid));
    // right_at_least_[k]: sorted sums of right-half subsets with cardinality >= k.
    right_at_least_.resize(right.size() + 1);
    for (std::size_t k = right.size(); k-- > 0;) {
      auto& dst = right_at_least_[k];
      const auto& above = right_at_least_[k + 1];
      dst.resize(above.size() + right[k].size());
      std::merge(above.begin(), above.end(), right[k].begin(), right[k].end(), dst.begin());
    }
  }

  std::uint64_t count(std::int64_t min_card, std::int64_t min_weight) const {
    std::uint64_t total = 0;
    const auto right_cards = static_cast<std::int64_t>(right_at_least_.size()) - 1;
    for (std::size_t ca = 0; ca < left_.size(); ++ca) {
      const std::int64_t need = std::max<std::int64_t>(0, min_card - static_cast<std::int64_t>(ca));
      if (need > right_cards) continue;
      const auto& right = right_at_least_[static_cast<std::size_t>(need)];
      // Left sums ascend, so the first qualifying right index only moves left.
      std::size_t pos = right.size();
      for (auto it = left_[ca].begin(); it != left_[ca].end(); ++it) {
        const std::int64_t want = min_weight - *it;
        while (pos > 0 && right[pos - 1] >= want) --pos;
        total += right.size() - pos;
      }
    }
    return total;
  }

 private:
  std::vector<std::vector<std::int64_t>> left_;
  std::vector<std::vector<std::int64_t>> right_at_least_;
};

/// Dense counts f[c][w] of subsets by cardinality and weight sum.
class DenseCounts {
 public:
  DenseCounts(int max_card, std::int64_t max_weight)
      : cards_(max_card + 1), width_(static_cast<std::size_t>(max_weight) + 1),
        data_(static_cast<std::size_t>(cards_) * width_) {}

  std::uint64_t& at(int c, std::int64_t w) { return data_[static_cast<std::size_t>(c) * width_ + static_cast<std::size_t>(w)]; }
  std::uint64_t at(int c, std::int64_t w) const {
    return data_[static_cast<std::size_t>(c) * width_ + static_cast<std::size_t>(w)];
  }
  int cards() const noexcept { return cards_; }
  std::int64_t width() const noexcept { return static_cast<std::int64_t>(width_); }

 private:
  int cards_;
  std::size_t width_;
  std::vector<std::uint64_t> data_;
};

}  // namespace detail

/// Exact swing counts through counting by (cardinality, weight). Uses a dense
/// generating-function table when it fits `memory_budget`, and otherwise
/// meets in the middle over sorted half-council subset sums.
inline PowerReport banzhaf_dp(const Council& council, const VotingRule& rule,
                              std::size_t memory_budget = PowerOptions{}.dp_memory_budget) {
  const auto plan = dp_plan(council, rule);
  if (!plan) throw DispatchError("rule is not eligible for the dp backend (" + describe(rule) + ")");
  const int n = council.size();
  const std::int64_t C = plan->count_threshold;
  const std::int64_t Q = plan->weight_threshold;
  const auto& w = plan->weights;
  std::int64_t total_weight = 0;
  for (auto x : w) total_weight += x;

  std::vector<std::uint64_t> tb(static_cast<std::size_t>(n));
  std::uint64_t winning = 0;

  const double cells = static_cast<double>(n + 1) * static_cast<double>(total_weight + 1);
  if (cells * 2 * sizeof(std::uint64_t) <= static_cast<double>(memory_budget)) {
    detail::DenseCounts all(n, total_weight);
    all.at(0, 0) = 1;
    std::int64_t reach = 0;
    for (int j = 0; j < n; ++j) {
      const std::int64_t wj = w[static_cast<std::size_t>(j)];
      for (int c = j; c >= 0; --c)
        for (std::int64_t s = reach; s >= 0; --s)
          if (const auto v = all.at(c, s)) all.at(c + 1, s + wj) += v;
      reach += wj;
    }
    auto wins = [&](std::int64_t c, std::int64_t s) { return c >= C && s >= Q; };
    for (int c = 0; c <= n; ++c)
      for (std::int64_t s = 0; s <= total_weight; ++s)
        if (wins(c, s)) winning += all.at(c, s);

    detail::DenseCounts others(n, total_weight);
    for (int i = 0; i < n; ++i) {
      const std::int64_t wi = w[static_cast<std::size_t>(i)];
      // Divide member i out of the generating function.
      for (int c = 0; c <= n; ++c)
        for (std::int64_t s = 0; s <= total_weight; ++s) {
          std::uint64_t v = all.at(c, s);
          if (c > 0 && s >= wi) v -= others.at(c - 1, s - wi);
          others.at(c, s) = v;
        }
      std::uint64_t swings = 0;
      for (int c = 0; c < n; ++c)
        for (std::int64_t s = 0; s + wi <= total_weight; ++s)
          if (wins(c + 1, s + wi) && !wins(c, s)) swings += others.at(c, s);
      tb[static_cast<std::size_t>(i)] = swings;
    }
  } else {
    if (n > kMaxSplitMembers)
      throw DispatchError("dp backend supports at most " + std::to_string(kMaxSplitMembers) +
                          " members for large weight totals");
    winning = detail::SplitCounter(w).count(C, Q);
    std::vector<std::int64_t> rest;
    for (int i = 0; i < n; ++i) {
      rest.clear();
      for (int j = 0; j < n; ++j)
        if (j != i) rest.push_back(w[static_cast<std::size_t>(j)]);
      const detail::SplitCounter counter(rest);
      tb[static_cast<std::size_t>(i)] =
          counter.count(C - 1, Q - w[static_cast<std::size_t>(i)]) - counter.count(C, Q);
    }
  }
  if (n > 62) throw CapacityError("dp report needs n <= 62");
  return make_exact_report(council, rule, tb, winning, Backend::dp);
}

// ---- Monte Carlo ---------------------------------------------------------------

/// Number of independent random substreams; fixed so results do not depend on
/// the worker count.
inline constexpr int kMonteCarloStreams = 64;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of substream `stream` derived from the master seed.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

}  // namespace detail

/// Estimates NB_i and efficiency from uniformly random coalitions. For each
/// sampled coalition T and each member i, i counts as decisive when
/// T with i wins and T without i loses.
inline PowerReport banzhaf_monte_carlo(const Council& council, const VotingRule& rule, std::uint64_t samples,
                                       std::uint64_t seed, int workers = 0) {
  if (samples < 1) throw ConfigError("monte carlo needs at least one sample");
  const int n = council.size();
  const CompiledRule compiled(council, rule);
  const auto& columns = compiled.columns();
  const int cols = static_cast<int>(columns.size());
  if (cols > detail::kMaxColumns) throw CapacityError("too many criteria for monte carlo");
  const int min_size = compiled.min_size_override().value_or(n + 1);
  const Coalition full = full_coalition(n);

  struct StreamCounts {
    std::vector<std::uint64_t> decisive;
    // Sum over samples of (decisive members in the sample) for samples where i was decisive.
    std::vector<std::uint64_t> decisive_cross;
    std::uint64_t decisive_sq = 0;
    std::uint64_t wins = 0;
    std::uint64_t samples = 0;
  };
  std::vector<StreamCounts> streams(kMonteCarloStreams);

  parallel_for(kMonteCarloStreams, workers, [&](int, int stream) {
    auto& out = streams[static_cast<std::size_t>(stream)];
    out.decisive.assign(static_cast<std::size_t>(n), 0);
    out.decisive_cross.assign(static_cast<std::size_t>(n), 0);
    Coalition hit = 0;
    out.samples = samples / kMonteCarloStreams + (static_cast<std::uint64_t>(stream) < samples % kMonteCarloStreams);
    std::mt19937_64 rng(detail::substream_seed(seed, static_cast<std::uint64_t>(stream)));
    detail::ColumnSums sums{};
    auto passes = [&](const detail::ColumnSums& s, int size) {
      for (int c = 0; c < cols; ++c)
        if (s[static_cast<std::size_t>(c)] < columns[static_cast<std::size_t>(c)].threshold) return size >= min_size;
      return true;
    };
    for (std::uint64_t k = 0; k < out.samples; ++k) {
      const Coalition t = rng() & full;
      sums.fill(0);
      for (int c = 0; c < cols; ++c) {
        const auto& weights = columns[static_cast<std::size_t>(c)].weights;
        std::int64_t s = 0;
        for (Coalition m = t; m; m &= m - 1) s += weights[static_cast<std::size_t>(std::countr_zero(m))];
        sums[static_cast<std::size_t>(c)] = s;
      }
      const int size = std::popcount(t);
      const bool t_wins = passes(sums, size);
      out.wins += t_wins;
      hit = 0;
      for (int i = 0; i < n; ++i) {
        const bool inside = (t >> i) & 1U;
        // Sums of T with member i added (or removed) on the other side.
        detail::ColumnSums other = sums;
        for (int c = 0; c < cols; ++c) {
          const auto wi = columns[static_cast<std::size_t>(c)].weights[static_cast<std::size_t>(i)];
          other[static_cast<std::size_t>(c)] += inside ? -wi : wi;
        }
        const bool other_wins = passes(other, inside ? size - 1 : size + 1);
        const bool decisive = inside ? (t_wins && !other_wins) : (other_wins && !t_wins);
        hit |= static_cast<Coalition>(decisive) << i;
      }
      const auto k_hit = static_cast<std::uint64_t>(std::popcount(hit));
      out.decisive_sq += k_hit * k_hit;
      for (Coalition m = hit; m; m &= m - 1) {
        const auto i = static_cast<std::size_t>(std::countr_zero(m));
        ++out.decisive[i];
        out.decisive_cross[i] += k_hit;
      }
    }
  });

  std::vector<std::uint64_t> decisive(static_cast<std::size_t>(n)), cross(static_cast<std::size_t>(n));
  std::uint64_t wins = 0;
  std::uint64_t decisive_sq = 0;
  for (const auto& s : streams) {
    wins += s.wins;
    decisive_sq += s.decisive_sq;
    for (std::size_t i = 0; i < decisive.size(); ++i) {
      decisive[i] += s.decisive[i];
      cross[i] += s.decisive_cross[i];
    }
  }
  std::uint64_t total = 0;
  for (auto d : decisive) total += d;

  PowerReport report;
  report.rule = rule;
  report.backend = Backend::monte_carlo;
  report.samples = samples;
  report.winning = wins;
  const auto N = static_cast<std::int64_t>(samples);
  const double Nd = static_cast<double>(samples);
  report.efficiency = Rational(static_cast<std::int64_t>(wins), N);
  const double p_win = static_cast<double>(wins) / Nd;
  report.efficiency_stderr = std::sqrt(p_win * (1 - p_win) / Nd);

  // beta_i is the ratio of means E[X_i] / E[S], with X_i the decisiveness
  // indicator and S the number of decisive members per sample. Its
  // first-order variance is E[(X_i - beta_i S)^2] / (N E[S]^2).
  const double mean_s = static_cast<double>(total) / Nd;
  const double mean_s2 = static_cast<double>(decisive_sq) / Nd;
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const auto d = static_cast<std::int64_t>(decisive[ui]);
    MemberPower m;
    m.id = council[i].id;
    m.swings = decisive[ui];
    m.normalized_banzhaf = Rational(d, N);
    m.banzhaf_index = total > 0 ? Rational(d, static_cast<std::int64_t>(total)) : Rational(0);
    const double p = static_cast<double>(d) / Nd;
    m.normalized_stderr = std::sqrt(p * (1 - p) / Nd);
    if (total > 0) {
      const double beta = static_cast<double>(d) / static_cast<double>(total);
      const double cross_mean = static_cast<double>(cross[ui]) / Nd;
      const double var = std::max(0.0, p - 2 * beta * cross_mean + beta * beta * mean_s2);
      m.index_stderr = std::sqrt(var / Nd) / mean_s;
    }
    report.members.push_back(std::move(m));
  }
  return report;
}

// ---- oracle ----------------------------------------------------------------------

/// Deliberately naive reference: for every member and every subset of the
/// other members, evaluates the rule twice with the unoptimized wins().
inline PowerReport brute_force_oracle(const Council& council, const VotingRule& rule) {
  const int n = council.size();
  if (n > kMaxOracleMembers)
    throw CapacityError("brute-force oracle supports at most " + std::to_string(kMaxOracleMembers) + " members");
  const Coalition all = full_coalition(n);
  std::vector<std::uint64_t> tb(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Coalition self = member_bit(i);
    for (Coalition s = 0; s <= all; ++s) {
      if (s & self) continue;
      if (wins(council, rule, s | self) && !wins(council, rule, s)) ++tb[static_cast<std::size_t>(i)];
    }
  }
  std::uint64_t winning = 0;
  for (Coalition s = 0; s <= all; ++s) winning += wins(council, rule, s);
  return make_exact_report(council, rule, tb, winning, Backend::oracle);
}

// ---- dispatch --------------------------------------------------------------------

/// Exact power: dp when the rule is eligible, enumeration otherwise.
inline PowerReport banzhaf_exact(const Council& council, const VotingRule& rule, int workers = 0) {
  if (council.size() <= kMaxSplitMembers && dp_plan(council, rule)) return banzhaf_dp(council, rule);
  return banzhaf_enumerate(council, rule, workers);
}

/// Runs the backend named in `options`; automatic prefers dp, then
/// enumeration for n <= 30, then Monte Carlo.
inline PowerReport compute_power(const Council& council, const VotingRule& rule, const PowerOptions& options = {}) {
  switch (options.backend) {
    case Backend::enumeration: return banzhaf_enumerate(council, rule, options.workers);
    case Backend::dp: return banzhaf_dp(council, rule, options.dp_memory_budget);
    case Backend::monte_carlo: return banzhaf_monte_carlo(council, rule, options.samples, options.seed, options.workers);
    case Backend::oracle: return brute_force_oracle(council, rule);
    case Backend::automatic: break;
  }
  if (council.size() <= kMaxSplitMembers && dp_plan(council, rule))
    return banzhaf_dp(council, rule, options.dp_memory_budget);
  if (council.size() <= kMaxExactMembers) return banzhaf_enumerate(council, rule, options.workers);
  return banzhaf_monte_carlo(council, rule, options.samples, options.seed, options.workers);
}

}  // namespace vpower
