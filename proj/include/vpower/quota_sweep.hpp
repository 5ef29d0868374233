#pragma once

// Quota grids for the three rule families, their metric rows, and the
// selections made over them.
//
// Two evaluation modes give identical rows:
//   per_tuple  one exact power computation per grid tuple
//   shared     one pass over all 2^n coalitions. Each coalition falls into
//              the grid cell of the highest thresholds it still meets; cell
//              counts of winners (total and per member) are then suffix-summed
//              so that every tuple sees all coalitions meeting its thresholds.

#include <algorithm>
#include <array>
#include <chrono>
#include <compare>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "vpower/detail/enumerate.hpp"
#include "vpower/errors.hpp"
#include "vpower/fairness_metrics.hpp"
#include "vpower/game_model.hpp"
#include "vpower/parallel.hpp"
#include "vpower/power_engine.hpp"
#include "vpower/rational.hpp"

namespace vpower {

enum class Family { nice, lisbon, jc };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::nice: return "nice";
    case Family::lisbon: return "lisbon";
    case Family::jc: return "jc";
  }
  return "?";
}

inline Family family_from_string(std::string_view s) {
  if (s == "nice") return Family::nice;
  if (s == "lisbon") return Family::lisbon;
  if (s == "jc") return Family::jc;
  throw ConfigError("unknown rule family '" + std::string(s) + "'");
}

/// One point of a grid: member-count quota (nice, lisbon, jc+), weight quota
/// (nice only) and population-style quota as an exact fraction.
struct QuotaTuple {
  std::optional<std::int64_t> count;
  std::optional<std::int64_t> weight;
  Rational pop;

  friend bool operator==(const QuotaTuple&, const QuotaTuple&) = default;
  friend std::strong_ordering operator<=>(const QuotaTuple& a, const QuotaTuple& b) {
    if (auto c = a.count <=> b.count; c != 0) return c;
    if (auto c = a.weight <=> b.weight; c != 0) return c;
    return a.pop <=> b.pop;
  }

  /// "14/263/0.80", "17/0.775", "0.615".
  std::string to_string() const {
    std::string s;
    if (count) s += std::to_string(*count) + "/";
    if (weight) s += std::to_string(*weight) + "/";
    return s + format_quota(pop);
  }

  /// Decimal with trailing zeros trimmed down to two places.
  static std::string format_quota(const Rational& q) {
    std::string s = q.to_decimal(6);
    while (s.size() > 4 && s.back() == '0' && s[s.size() - 3] != '.') s.pop_back();
    return s;
  }
};

/// The rule a family assigns to a tuple.
inline VotingRule rule_for(const Council& council, Family family, const QuotaTuple& t) {
  switch (family) {
    case Family::nice:
      if (!t.count || !t.weight) throw ConfigError("nice tuples need count and weight quotas");
      return make_nice_rule(council, *t.weight, *t.count, t.pop);
    case Family::lisbon:
      if (!t.count || t.weight) throw ConfigError("lisbon tuples need a count quota and no weight quota");
      return make_lisbon_rule(*t.count, t.pop, false);
    case Family::jc: {
      if (t.weight) throw ConfigError("jc tuples take no weight quota");
      VotingRule rule = make_jc_rule(council, t.pop, false);
      if (t.count) rule.criteria.push_back(Criterion::absolute(CriterionKind::member_count, *t.count));
      return rule;
    }
  }
  throw ConfigError("unknown family");
}

struct SweepGrid {
  Family family = Family::nice;
  std::vector<std::int64_t> count_quotas;
  /// Nice only.
  std::vector<std::int64_t> weight_quotas;
  std::vector<Rational> pop_quotas;

  /// Inclusive integer range lo, lo+step, ..., <= hi.
  static std::vector<std::int64_t> integer_range(std::int64_t lo, std::int64_t hi, std::int64_t step = 1) {
    if (step <= 0) throw ConfigError("range step must be positive");
    if (hi < lo) throw ConfigError("empty integer range");
    std::vector<std::int64_t> v;
    for (std::int64_t x = lo; x <= hi; x += step) v.push_back(x);
    return v;
  }

  /// Inclusive exact range lo, lo+step, ..., <= hi.
  static std::vector<Rational> rational_range(Rational lo, Rational hi, Rational step) {
    if (step <= Rational(0)) throw ConfigError("range step must be positive");
    if (hi < lo) throw ConfigError("empty quota range");
    std::vector<Rational> v;
    for (std::int64_t k = 0;; ++k) {
      const Rational x = lo + step * Rational(k);
      if (x > hi) break;
      v.push_back(x);
    }
    return v;
  }

  void validate() const {
    if (pop_quotas.empty()) throw ConfigError("grid has no population quotas");
    for (const auto& q : pop_quotas)
      if (q <= Rational(0) || q > Rational(1)) throw ConfigError("population quota " + q.to_decimal(4) + " outside (0, 1]");
    for (auto c : count_quotas)
      if (c < 1) throw ConfigError("count quota must be at least 1");
    for (auto w : weight_quotas)
      if (w < 0) throw ConfigError("weight quota must be non-negative");
    switch (family) {
      case Family::nice:
        if (count_quotas.empty() || weight_quotas.empty())
          throw ConfigError("nice grids need count and weight quotas");
        break;
      case Family::lisbon:
        if (count_quotas.empty()) throw ConfigError("lisbon grids need count quotas");
        if (!weight_quotas.empty()) throw ConfigError("lisbon grids take no weight quotas");
        break;
      case Family::jc:
        if (!weight_quotas.empty()) throw ConfigError("jc grids take no weight quotas");
        break;
    }
  }

  /// Sorted, de-duplicated cross product.
  std::vector<QuotaTuple> tuples() const {
    validate();
    std::vector<std::optional<std::int64_t>> counts, weights;
    for (auto c : count_quotas) counts.emplace_back(c);
    for (auto w : weight_quotas) weights.emplace_back(w);
    if (counts.empty()) counts.emplace_back();
    if (weights.empty()) weights.emplace_back();
    std::vector<QuotaTuple> out;
    for (const auto& c : counts)
      for (const auto& w : weights)
        for (const auto& p : pop_quotas) out.push_back({c, w, p});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

struct SweepRow {
  QuotaTuple tuple;
  std::vector<std::uint64_t> swings;
  std::vector<Rational> beta;
  std::uint64_t winning = 0;
  Rational efficiency;
  double error_rate = 0;
  double max_deviation = 0;
  std::string max_deviation_member;

  double error_rate_permille() const { return error_rate * 1000; }
  double max_deviation_percent() const { return max_deviation * 100; }
  double efficiency_percent() const { return efficiency.to_double() * 100; }

  bool same_numbers(const SweepRow& o) const {
    return tuple == o.tuple && swings == o.swings && winning == o.winning && beta == o.beta &&
           efficiency == o.efficiency && error_rate == o.error_rate && max_deviation == o.max_deviation &&
           max_deviation_member == o.max_deviation_member;
  }
};

/// Ordering for selections: lower error rate, then higher efficiency, then
/// the smaller tuple.
inline bool better_row(const SweepRow& a, const SweepRow& b) {
  if (a.error_rate != b.error_rate) return a.error_rate < b.error_rate;
  if (a.efficiency != b.efficiency) return a.efficiency > b.efficiency;
  return a.tuple < b.tuple;
}

struct SweepResult {
  Family family = Family::nice;
  /// Ordered by tuple.
  std::vector<SweepRow> rows;
  QuotaTuple argmin_error;

  const SweepRow* find(const QuotaTuple& t) const {
    auto it = std::lower_bound(rows.begin(), rows.end(), t,
                               [](const SweepRow& r, const QuotaTuple& key) { return r.tuple < key; });
    return it != rows.end() && it->tuple == t ? &*it : nullptr;
  }
};

enum class SweepMode { automatic, shared, per_tuple };

struct SweepOptions {
  SweepMode mode = SweepMode::automatic;
  int workers = 0;
  /// Called with the completed fraction; calls are serialized.
  std::function<void(double)> progress;
};

/// Metric row for one tuple from exact swing counts.
inline SweepRow make_row(const Council& council, Family family, const QuotaTuple& tuple,
                         const std::vector<std::uint64_t>& swings, std::uint64_t winning) {
  const PowerReport report = make_exact_report(council, rule_for(council, family, tuple), swings, winning,
                                               Backend::enumeration);
  const IdealDistribution ideal = ideal_distribution(council);
  SweepRow row;
  row.tuple = tuple;
  row.swings = swings;
  for (const auto& m : report.members) row.beta.push_back(m.banzhaf_index);
  row.winning = winning;
  row.efficiency = report.efficiency;
  row.error_rate = error_rate(report, ideal);
  const auto dev = max_relative_deviation(report, ideal);
  row.max_deviation = dev.value;
  row.max_deviation_member = dev.member;
  return row;
}

namespace detail {

/// Progress reporting shared by worker threads.
class ProgressSink {
 public:
  ProgressSink(const std::function<void(double)>& callback, int total) : callback_(callback), total_(total) {}
  void step() {
    if (!callback_) return;
    std::lock_guard lock(mutex_);
    callback_(static_cast<double>(++done_) / total_);
  }

 private:
  const std::function<void(double)>& callback_;
  int total_;
  int done_ = 0;
  std::mutex mutex_;
};

/// One swept criterion: its weight column, its sorted distinct thresholds, and
/// a direct sum -> index table when the weight total is small.
struct SweepAxis {
  std::vector<std::int64_t> weights;
  std::vector<std::int64_t> thresholds;
  std::vector<std::int32_t> lookup;

  void finalize(std::int64_t total) {
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    if (total <= (std::int64_t{1} << 22)) {
      lookup.resize(static_cast<std::size_t>(total) + 1);
      for (std::int64_t s = 0; s <= total; ++s) lookup[static_cast<std::size_t>(s)] = slow_index(s);
    }
  }
  /// Index of the largest threshold <= sum, or -1.
  std::int32_t slow_index(std::int64_t sum) const {
    return static_cast<std::int32_t>(std::upper_bound(thresholds.begin(), thresholds.end(), sum) - thresholds.begin()) - 1;
  }
  std::int32_t index(std::int64_t sum) const {
    return lookup.empty() ? slow_index(sum) : lookup[static_cast<std::size_t>(sum)];
  }
  std::int32_t position(std::int64_t threshold) const {
    return static_cast<std::int32_t>(std::lower_bound(thresholds.begin(), thresholds.end(), threshold) - thresholds.begin());
  }
  std::int32_t extent() const { return static_cast<std::int32_t>(thresholds.size()); }
};

/// Swing counts and winner totals for every tuple from one enumeration pass.
inline std::vector<std::pair<std::vector<std::uint64_t>, std::uint64_t>> shared_counts(
    const Council& council, Family family, const std::vector<QuotaTuple>& tuples, int workers,
    const std::function<void(double)>& progress) {
  const int n = council.size();
  if (n > kMaxExactMembers)
    throw CapacityError("shared sweep needs at most " + std::to_string(kMaxExactMembers) + " members");

  // Axes follow the criterion order of the family's rules; every tuple of a
  // family yields the same kinds in the same order.
  const VotingRule first = rule_for(council, family, tuples.front());
  std::vector<SweepAxis> axes(first.criteria.size());
  for (std::size_t a = 0; a < axes.size(); ++a) axes[a].weights = criterion_weights(council, first.criteria[a].kind);
  std::vector<std::vector<std::int64_t>> tuple_thresholds;
  for (const auto& t : tuples) {
    const VotingRule rule = rule_for(council, family, t);
    if (rule.criteria.size() != axes.size()) throw ConfigError("grid mixes rule shapes; use per-tuple mode");
    std::vector<std::int64_t> th;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      if (rule.criteria[a].kind != first.criteria[a].kind) throw ConfigError("grid mixes rule shapes");
      th.push_back(absolute_threshold(council, rule.criteria[a]));
      axes[a].thresholds.push_back(th.back());
    }
    tuple_thresholds.push_back(std::move(th));
  }
  for (std::size_t a = 0; a < axes.size(); ++a) axes[a].finalize(criterion_total(council, first.criteria[a].kind));

  std::vector<std::size_t> stride(axes.size());
  std::size_t cells = 1;
  for (std::size_t a = axes.size(); a-- > 0;) {
    stride[a] = cells;
    cells *= static_cast<std::size_t>(axes[a].extent());
  }
  if (cells * static_cast<std::size_t>(n) > (std::size_t{1} << 27))
    throw CapacityError("shared sweep grid too large; use per-tuple mode");

  detail::WeightTable table;
  for (const auto& axis : axes) table.add_column(axis.weights);
  const int cols = table.columns;
  const int high = chunk_bits(n);
  const int chunks = 1 << high;
  if (workers <= 0) workers = default_workers();
  workers = std::max(1, std::min(workers, chunks));

  // Per-worker buffers; a worker never sees more than 2^30 coalitions.
  std::vector<std::vector<std::uint32_t>> with(static_cast<std::size_t>(workers));
  std::vector<std::vector<std::uint32_t>> total(static_cast<std::size_t>(workers));
  ProgressSink sink(progress, chunks);
  parallel_for(chunks, workers, [&](int worker, int chunk) {
    auto& w = with[static_cast<std::size_t>(worker)];
    auto& t = total[static_cast<std::size_t>(worker)];
    if (w.empty()) {
      w.assign(cells * static_cast<std::size_t>(n), 0);
      t.assign(cells, 0);
    }
    enumerate_chunk(table, high, static_cast<std::uint64_t>(chunk), [&](Coalition mask, const ColumnSums& sums) {
      std::size_t cell = 0;
      for (int a = 0; a < cols; ++a) {
        const std::int32_t k = axes[static_cast<std::size_t>(a)].index(sums[static_cast<std::size_t>(a)]);
        if (k < 0) return;
        cell += static_cast<std::size_t>(k) * stride[static_cast<std::size_t>(a)];
      }
      ++t[cell];
      std::uint32_t* row = &w[cell * static_cast<std::size_t>(n)];
      for (Coalition m = mask; m; m &= m - 1) ++row[std::countr_zero(m)];
    });
    sink.step();
  });

  // Merge, then suffix-sum along every axis: a coalition in cell k wins for
  // every tuple whose threshold index is <= k on each axis.
  std::vector<std::uint64_t> with_all(cells * static_cast<std::size_t>(n));
  std::vector<std::uint64_t> total_all(cells);
  for (int wk = 0; wk < workers; ++wk) {
    const auto& w = with[static_cast<std::size_t>(wk)];
    const auto& t = total[static_cast<std::size_t>(wk)];
    if (w.empty()) continue;
    for (std::size_t i = 0; i < w.size(); ++i) with_all[i] += w[i];
    for (std::size_t i = 0; i < t.size(); ++i) total_all[i] += t[i];
  }
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const std::size_t s = stride[a];
    const auto ext = static_cast<std::size_t>(axes[a].extent());
    for (std::size_t cell = cells; cell-- > 0;) {
      const std::size_t k = (cell / s) % ext;
      if (k + 1 == ext) continue;
      const std::size_t above = cell + s;
      total_all[cell] += total_all[above];
      for (int i = 0; i < n; ++i)
        with_all[cell * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] +=
            with_all[above * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
    }
  }

  std::vector<std::pair<std::vector<std::uint64_t>, std::uint64_t>> out;
  out.reserve(tuples.size());
  for (const auto& th : tuple_thresholds) {
    std::size_t cell = 0;
    for (std::size_t a = 0; a < axes.size(); ++a)
      cell += static_cast<std::size_t>(axes[a].position(th[a])) * stride[a];
    const std::uint64_t winning = total_all[cell];
    std::vector<std::uint64_t> winning_with(with_all.begin() + static_cast<std::ptrdiff_t>(cell * static_cast<std::size_t>(n)),
                                            with_all.begin() + static_cast<std::ptrdiff_t>((cell + 1) * static_cast<std::size_t>(n)));
    out.emplace_back(swings_from_inclusion(winning_with, winning), winning);
  }
  return out;
}

}  // namespace detail

/// Index of the best row under better_row among rows accepted by `keep`.
template <class Keep>
std::optional<std::size_t> best_row_index(const SweepResult& result, Keep&& keep) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    if (!keep(result.rows[i])) continue;
    if (!best || better_row(result.rows[i], result.rows[*best])) best = i;
  }
  return best;
}

/// Evaluates every tuple of the grid.
inline SweepResult run_sweep(const Council& council, const SweepGrid& grid, const SweepOptions& options = {}) {
  const auto tuples = grid.tuples();
  SweepMode mode = options.mode;
  if (mode == SweepMode::automatic) mode = council.size() <= kMaxExactMembers ? SweepMode::shared : SweepMode::per_tuple;

  SweepResult result;
  result.family = grid.family;
  result.rows.resize(tuples.size());
  if (mode == SweepMode::shared) {
    const auto counts = detail::shared_counts(council, grid.family, tuples, options.workers, options.progress);
    for (std::size_t i = 0; i < tuples.size(); ++i)
      result.rows[i] = make_row(council, grid.family, tuples[i], counts[i].first, counts[i].second);
  } else {
    detail::ProgressSink sink(options.progress, static_cast<int>(tuples.size()));
    parallel_for(static_cast<int>(tuples.size()), options.workers, [&](int, int i) {
      const auto& t = tuples[static_cast<std::size_t>(i)];
      const PowerReport r = banzhaf_exact(council, rule_for(council, grid.family, t), 1);
      std::vector<std::uint64_t> swings;
      for (const auto& m : r.members) swings.push_back(m.swings);
      result.rows[static_cast<std::size_t>(i)] = make_row(council, grid.family, t, swings, r.winning);
      sink.step();
    });
  }
  result.argmin_error = result.rows[*best_row_index(result, [](const SweepRow&) { return true; })].tuple;
  return result;
}

/// The tuple with the least error rate (ties: higher efficiency, then smaller tuple).
inline QuotaTuple optimize_error(const SweepResult& result) {
  const auto best = best_row_index(result, [](const SweepRow&) { return true; });
  if (!best) throw NoSolutionError("sweep result is empty");
  return result.rows[*best].tuple;
}

/// The least-error tuple among rows whose efficiency is at least `min_efficiency`.
inline QuotaTuple optimize_with_efficiency_floor(const SweepResult& result, Rational min_efficiency) {
  if (min_efficiency < Rational(0) || min_efficiency > Rational(1))
    throw ConfigError("efficiency floor must lie in [0, 1]");
  if (result.rows.empty()) throw NoSolutionError("sweep result is empty");
  const auto best = best_row_index(result, [&](const SweepRow& r) { return r.efficiency >= min_efficiency; });
  if (!best)
    throw NoSolutionError("no grid tuple reaches efficiency " + (min_efficiency * Rational(100)).to_decimal(4) + "%");
  return result.rows[*best].tuple;
}

/// Rows to keep and how to group them: set fields pin that dimension to a
/// value. Rows are grouped by (count, weight); each group contributes its
/// best row.
struct SliceFilter {
  std::optional<std::int64_t> count;
  std::optional<std::int64_t> weight;
  std::optional<Rational> pop;
};

inline std::vector<SweepRow> slice_optima(const SweepResult& result, const SliceFilter& filter = {}) {
  std::vector<SweepRow> out;
  const SweepRow* best = nullptr;
  auto flush = [&] {
    if (best) out.push_back(*best);
    best = nullptr;
  };
  for (const auto& row : result.rows) {
    const auto& t = row.tuple;
    if ((filter.count && t.count != filter.count) || (filter.weight && t.weight != filter.weight) ||
        (filter.pop && t.pop != *filter.pop))
      continue;
    // Rows are sorted by tuple, so groups are contiguous.
    if (best && (best->tuple.count != t.count || best->tuple.weight != t.weight)) flush();
    if (!best || better_row(row, *best)) best = &row;
  }
  flush();
  return out;
}

}  // namespace vpower
