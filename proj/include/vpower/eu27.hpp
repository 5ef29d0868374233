#pragma once

// EU-27 member populations (EUROSTAT first results for 2008) and the weights
// negotiated in the Treaty of Nice.

#include <array>
#include <cstdint>
#include <string_view>

#include "vpower/game_model.hpp"

namespace vpower {

inline constexpr std::string_view kEu27DatasetName = "eu27-2008";
inline constexpr std::int64_t kEu27TotalPopulation = 497'481'657;
inline constexpr std::int64_t kEu27TotalNiceWeight = 345;

namespace detail {

struct Eu27Row {
  std::string_view id;
  std::string_view name;
  std::int64_t population;
  std::int64_t nice_weight;
};

inline constexpr std::array<Eu27Row, 27> kEu27Rows{{
    {"DE", "Germany", 82'221'808, 29},
    {"FR", "France", 63'753'140, 29},
    {"UK", "United Kingdom", 61'185'981, 29},
    {"IT", "Italy", 59'618'114, 29},
    {"ES", "Spain", 45'283'259, 27},
    {"PL", "Poland", 38'115'641, 27},
    {"RO", "Romania", 21'528'627, 14},
    {"NL", "Netherlands", 16'404'282, 13},
    {"EL", "Greece", 11'214'992, 12},
    {"BE", "Belgium", 10'666'866, 12},
    {"PT", "Portugal", 10'617'575, 12},
    {"CZ", "Czech Republic", 10'381'130, 12},
    {"HU", "Hungary", 10'045'000, 12},
    {"SE", "Sweden", 9'182'927, 10},
    {"AT", "Austria", 8'331'930, 10},
    {"BG", "Bulgaria", 7'640'238, 10},
    {"DK", "Denmark", 5'475'791, 7},
    {"SK", "Slovak Republic", 5'400'998, 7},
    {"FI", "Finland", 5'300'484, 7},
    {"IE", "Ireland", 4'419'859, 7},
    {"LT", "Lithuania", 3'366'357, 7},
    {"LV", "Latvia", 2'270'894, 4},
    {"SI", "Slovenia", 2'025'866, 4},
    {"EE", "Estonia", 1'340'935, 4},
    {"CY", "Cyprus", 794'580, 4},
    {"LU", "Luxembourg", 483'799, 4},
    {"MT", "Malta", 410'584, 3},
}};

}  // namespace detail

inline Council eu27_2008() {
  std::vector<MemberState> members;
  members.reserve(detail::kEu27Rows.size());
  for (const auto& r : detail::kEu27Rows)
    members.push_back({std::string(r.id), std::string(r.name), r.population, r.nice_weight});
  return Council(std::move(members));
}

}  // namespace vpower
