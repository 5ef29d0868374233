#pragma once

// Gray-code enumeration of all coalitions with incremental column sums.

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "vpower/game_model.hpp"

namespace vpower::detail {

inline constexpr int kMaxColumns = 6;

using ColumnSums = std::array<std::int64_t, kMaxColumns>;

/// Member-major weight table: row i holds member i's weight in each column.
struct WeightTable {
  int members = 0;
  int columns = 0;
  std::vector<ColumnSums> rows;

  void add_column(const std::vector<std::int64_t>& weights) {
    if (columns == kMaxColumns) throw CapacityError("too many criteria for enumeration");
    if (rows.empty()) {
      members = static_cast<int>(weights.size());
      rows.assign(weights.size(), ColumnSums{});
    }
    for (std::size_t i = 0; i < weights.size(); ++i) rows[i][static_cast<std::size_t>(columns)] = weights[i];
    ++columns;
  }
};

/// Number of high-order bits fixed per chunk; 2^bits chunks in total.
inline int chunk_bits(int members) { return members > 14 ? std::min(8, members - 14) : 0; }

/// Visits every coalition whose top `high_bits` bits equal `chunk`, calling
/// visit(coalition, sums). Low bits are walked in Gray-code order so each step
/// updates the sums with one member.
template <class Visit>
void enumerate_chunk(const WeightTable& table, int high_bits, std::uint64_t chunk, Visit&& visit) {
  const int low = table.members - high_bits;
  const int cols = table.columns;
  Coalition mask = static_cast<Coalition>(chunk) << low;
  ColumnSums sums{};
  for (Coalition m = mask; m; m &= m - 1) {
    const auto& row = table.rows[static_cast<std::size_t>(std::countr_zero(m))];
    for (int c = 0; c < cols; ++c) sums[static_cast<std::size_t>(c)] += row[static_cast<std::size_t>(c)];
  }
  visit(mask, sums);
  const std::uint64_t steps = std::uint64_t{1} << low;
  for (std::uint64_t g = 1; g < steps; ++g) {
    const int j = std::countr_zero(g);
    const Coalition bit = Coalition{1} << j;
    mask ^= bit;
    const auto& row = table.rows[static_cast<std::size_t>(j)];
    if (mask & bit) {
      for (int c = 0; c < cols; ++c) sums[static_cast<std::size_t>(c)] += row[static_cast<std::size_t>(c)];
    } else {
      for (int c = 0; c < cols; ++c) sums[static_cast<std::size_t>(c)] -= row[static_cast<std::size_t>(c)];
    }
    visit(mask, sums);
  }
}

}  // namespace vpower::detail
