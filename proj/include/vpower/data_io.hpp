#pragma once

// Dataset ingestion and report serialization.
//
// Dataset CSV: header `id,name,population[,nice_weight]`. Populations may be
// plain integers or use dots as thousands separators ("82.221.808"). Output
// files use dot decimals with fixed column order and fixed precision, so equal
// inputs give byte-identical files.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vpower/errors.hpp"
#include "vpower/eu27.hpp"
#include "vpower/fairness_metrics.hpp"
#include "vpower/game_model.hpp"
#include "vpower/power_engine.hpp"
#include "vpower/quota_sweep.hpp"

namespace vpower {

using Json = nlohmann::ordered_json;

// ---- number rendering --------------------------------------------------------

/// Fixed-notation rendering with `digits` significant digits ("0.60518",
/// "0.000048800"). Never uses an exponent.
inline std::string format_significant(double x, int digits) {
  if (x == 0 || !std::isfinite(x)) return x == 0 ? "0" : std::to_string(x);
  const int exponent = static_cast<int>(std::floor(std::log10(std::fabs(x))));
  const int decimals = std::max(0, digits - 1 - exponent);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

inline std::string format_fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

/// sigma^2 in per mille, five significant digits.
inline std::string format_permille(double error_rate) { return format_significant(error_rate * 1000, 5); }

// ---- dataset ingestion -------------------------------------------------------

/// Accepts "82221808" and "82.221.808".
inline std::int64_t parse_population(std::string_view text) {
  const std::string original(text);
  auto fail = [&] { return ConfigError("invalid population '" + original + "'"); };
  if (text.empty()) throw fail();
  const bool grouped = text.find('.') != std::string_view::npos;
  std::int64_t value = 0;
  int group = 0;
  bool first_group = true;
  for (char c : text) {
    if (c == '.') {
      if (group == 0 || (first_group ? group > 3 : group != 3)) throw fail();
      first_group = false;
      group = 0;
      continue;
    }
    if (c < '0' || c > '9') throw fail();
    if (value > (INT64_MAX - 9) / 10) throw fail();
    value = value * 10 + (c - '0');
    ++group;
  }
  if (grouped && group != 3) throw fail();
  return value;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  for (auto& f : fields) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return fields;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline Council read_dataset_csv(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) header = detail::split_csv_line(line);
  }
  if (header.empty()) throw ParseError("empty dataset", line_no > 0 ? line_no : 1);
  const bool with_weight = header.size() == 4 && header[3] == "nice_weight";
  if (header.size() < 3 || header[0] != "id" || header[1] != "name" || header[2] != "population" ||
      (header.size() == 4 && !with_weight) || header.size() > 4)
    throw ParseError("expected header id,name,population[,nice_weight]", line_no);

  std::vector<MemberState> members;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()),
                       line_no);
    MemberState m{fields[0], fields[1], 0, std::nullopt};
    try {
      m.population = parse_population(fields[2]);
      if (with_weight && !fields[3].empty()) m.nice_weight = parse_population(fields[3]);
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), line_no);
    }
    members.push_back(std::move(m));
  }
  if (members.empty()) throw ParseError("dataset has no member rows", line_no);
  return Council(std::move(members));
}

/// Resolves "eu27-2008" to the embedded dataset; anything else is a CSV path,
/// looked up relative to VPOWER_DATA_DIR when not found as given.
inline Council load_dataset(const std::string& path_or_builtin) {
  if (path_or_builtin == kEu27DatasetName) return eu27_2008();
  std::filesystem::path path(path_or_builtin);
  if (!std::filesystem::exists(path) && path.is_relative()) {
    if (const char* dir = std::getenv("VPOWER_DATA_DIR")) {
      const auto alt = std::filesystem::path(dir) / path;
      if (std::filesystem::exists(alt)) path = alt;
    }
  }
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset '" + path.string() + "'");
  return read_dataset_csv(in);
}

inline std::string dataset_csv(const Council& council) {
  std::string out = "id,name,population,nice_weight\n";
  for (const auto& m : council.members()) {
    out += detail::csv_field(m.id) + "," + detail::csv_field(m.name) + "," + std::to_string(m.population) + "," +
           (m.nice_weight ? std::to_string(*m.nice_weight) : "") + "\n";
  }
  return out;
}

// ---- rule files ----------------------------------------------------------------

inline Json rule_to_json(const VotingRule& rule) {
  Json criteria = Json::array();
  for (const auto& c : rule.criteria) {
    Json q;
    if (const auto* a = std::get_if<AbsoluteQuota>(&c.quota)) {
      q["absolute"] = a->threshold;
    } else {
      const auto& f = std::get<RelativeQuota>(c.quota).fraction;
      q["num"] = f.num();
      q["den"] = f.den();
    }
    criteria.push_back({{"kind", to_string(c.kind)}, {"quota", q}});
  }
  Json j{{"criteria", criteria}};
  j["blocking_minority_min"] = rule.blocking_minority_min ? Json(*rule.blocking_minority_min) : Json(nullptr);
  return j;
}

inline VotingRule rule_from_json(const Json& j) {
  try {
    VotingRule rule;
    const auto& criteria = j.at("criteria");
    if (!criteria.is_array() || criteria.empty()) throw ConfigError("rule needs a non-empty criteria array");
    for (const auto& c : criteria) {
      const auto kind = criterion_kind_from_string(c.at("kind").get<std::string>());
      const auto& q = c.at("quota");
      const bool absolute = q.contains("absolute");
      const bool relative = q.contains("num") || q.contains("den");
      if (absolute == relative) throw ConfigError("quota must be either {absolute} or {num, den}");
      if (absolute) {
        rule.criteria.push_back(Criterion::absolute(kind, q.at("absolute").get<std::int64_t>()));
      } else {
        rule.criteria.push_back(
            Criterion::relative(kind, Rational(q.at("num").get<std::int64_t>(), q.at("den").get<std::int64_t>())));
      }
    }
    if (j.contains("blocking_minority_min") && !j.at("blocking_minority_min").is_null())
      rule.blocking_minority_min = j.at("blocking_minority_min").get<int>();
    return rule;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed rule: ") + e.what());
  }
}

inline VotingRule load_rule_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open rule file '" + path + "'");
  try {
    return rule_from_json(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("rule file '") + path + "': " + e.what());
  }
}

// ---- power reports -------------------------------------------------------------

namespace detail {

/// Voting weight shown next to each member: the rule's weight criterion, if any.
inline std::vector<std::string> weight_column(const Council& council, const VotingRule& rule) {
  std::vector<std::string> out(static_cast<std::size_t>(council.size()));
  for (const auto& c : rule.criteria) {
    if (c.kind == CriterionKind::negotiated_weight) {
      const auto w = criterion_weights(council, c.kind);
      for (std::size_t i = 0; i < w.size(); ++i) out[i] = std::to_string(w[i]);
      return out;
    }
    if (c.kind == CriterionKind::sqrt_weight) {
      for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = Rational(council.sqrt_weights()[i], kSqrtScale).to_decimal(4);
      return out;
    }
  }
  return out;
}

}  // namespace detail

/// Columns: member_id,population,weight,TB,NB,beta_percent.
inline std::string power_report_csv(const Council& council, const PowerReport& report) {
  const auto weights = detail::weight_column(council, report.rule);
  std::string out = "member_id,population,weight,TB,NB,beta_percent\n";
  for (int i = 0; i < report.size(); ++i) {
    const auto& m = report.members[static_cast<std::size_t>(i)];
    out += detail::csv_field(m.id) + "," + std::to_string(council[i].population) + "," +
           weights[static_cast<std::size_t>(i)] + "," + std::to_string(m.swings) + "," +
           m.normalized_banzhaf.to_decimal(8) + "," + (m.banzhaf_index * Rational(100)).to_decimal(6) + "\n";
  }
  return out;
}

inline Json power_report_json(const Council& council, const PowerReport& report) {
  Json members = Json::array();
  for (int i = 0; i < report.size(); ++i) {
    const auto& m = report.members[static_cast<std::size_t>(i)];
    Json row{{"id", m.id},
             {"population", council[i].population},
             {"total_banzhaf", m.swings},
             {"normalized_banzhaf", m.normalized_banzhaf.to_decimal(10)},
             {"banzhaf_index", m.banzhaf_index.to_decimal(10)}};
    if (m.normalized_stderr) row["normalized_stderr"] = *m.normalized_stderr;
    if (m.index_stderr) row["index_stderr"] = *m.index_stderr;
    members.push_back(row);
  }
  Json j{{"rule", rule_to_json(report.rule)},
         {"rule_text", describe(report.rule)},
         {"backend", to_string(report.backend)},
         {"members", members},
         {"winning", report.winning},
         {"efficiency", report.efficiency.to_decimal(10)}};
  if (report.backend == Backend::monte_carlo) {
    j["samples"] = report.samples;
    if (report.efficiency_stderr) j["efficiency_stderr"] = *report.efficiency_stderr;
  }
  return j;
}

/// Columns: member_id,ideal_percent,beta_percent,relative_deviation_percent.
/// Doubles as the per-member deviation series for plotting.
inline std::string fairness_csv(const PowerReport& report, const FairnessAssessment& a) {
  std::string out = "member_id,ideal_percent,beta_percent,relative_deviation_percent\n";
  for (std::size_t i = 0; i < a.ideal.ids.size(); ++i) {
    out += detail::csv_field(a.ideal.ids[i]) + "," + (a.ideal.shares[i] * Rational(100)).to_decimal(6) + "," +
           (report.members[i].banzhaf_index * Rational(100)).to_decimal(6) + "," +
           format_fixed(a.relative_deviations[i] * 100, 4) + "\n";
  }
  return out;
}

inline Json fairness_json(const FairnessAssessment& a) {
  Json members = Json::array();
  for (std::size_t i = 0; i < a.ideal.ids.size(); ++i)
    members.push_back({{"id", a.ideal.ids[i]},
                       {"ideal", a.ideal.shares[i].to_decimal(10)},
                       {"relative_deviation", a.relative_deviations[i]}});
  return Json{{"error_rate", a.error_rate},
              {"error_rate_permille", format_permille(a.error_rate)},
              {"max_relative_deviation", a.max_deviation.value},
              {"max_relative_deviation_percent", format_fixed(a.max_deviation.value * 100, 2)},
              {"max_deviation_member", a.max_deviation.member},
              {"members", members}};
}

// ---- sweeps --------------------------------------------------------------------

namespace detail {

inline std::string sweep_row_csv(const SweepRow& r) {
  return (r.tuple.count ? std::to_string(*r.tuple.count) : std::string()) + "," +
         (r.tuple.weight ? std::to_string(*r.tuple.weight) : std::string()) + "," + r.tuple.pop.to_decimal(4) + "," +
         format_permille(r.error_rate) + "," + format_fixed(r.max_deviation_percent(), 2) + "," +
         r.max_deviation_member + "," + (r.efficiency * Rational(100)).to_decimal(4) + "\n";
}

inline constexpr std::string_view kSweepHeader =
    "count_quota,weight_quota,pop_quota,sigma2_permille,max_dev_percent,max_dev_member,efficiency_percent\n";

}  // namespace detail

/// One row per tuple.
inline std::string sweep_csv(const SweepResult& result) {
  std::string out(detail::kSweepHeader);
  for (const auto& r : result.rows) out += detail::sweep_row_csv(r);
  return out;
}

/// Appendix layout: the best row of each (count, weight) slice.
inline std::string slice_csv(const std::vector<SweepRow>& rows) {
  std::string out(detail::kSweepHeader);
  for (const auto& r : rows) out += detail::sweep_row_csv(r);
  return out;
}

enum class PlotMetric { error_rate, efficiency };

/// Long-format series `series,pop_quota,value`, one series per (count,
/// weight) slice; value is sigma^2 in per mille or efficiency in percent.
inline std::string plot_series_csv(const SweepResult& result, PlotMetric metric) {
  std::string out = metric == PlotMetric::error_rate ? "series,pop_quota,sigma2_permille\n"
                                                     : "series,pop_quota,efficiency_percent\n";
  for (const auto& r : result.rows) {
    std::string series;
    if (r.tuple.count) series += std::to_string(*r.tuple.count);
    if (r.tuple.weight) series += (series.empty() ? "" : "/") + std::to_string(*r.tuple.weight);
    if (series.empty()) series = to_string(result.family);
    out += series + "," + r.tuple.pop.to_decimal(4) + "," +
           (metric == PlotMetric::error_rate ? format_permille(r.error_rate)
                                             : (r.efficiency * Rational(100)).to_decimal(4)) +
           "\n";
  }
  return out;
}

inline Json sweep_json(const SweepResult& result) {
  auto tuple_json = [](const QuotaTuple& t) {
    Json j;
    j["count"] = t.count ? Json(*t.count) : Json(nullptr);
    j["weight"] = t.weight ? Json(*t.weight) : Json(nullptr);
    j["pop"] = {{"num", t.pop.num()}, {"den", t.pop.den()}};
    return j;
  };
  Json rows = Json::array();
  for (const auto& r : result.rows)
    rows.push_back({{"tuple", tuple_json(r.tuple)},
                    {"error_rate", r.error_rate},
                    {"max_relative_deviation", r.max_deviation},
                    {"max_deviation_member", r.max_deviation_member},
                    {"efficiency", r.efficiency.to_decimal(10)}});
  return Json{
      {"family", to_string(result.family)}, {"argmin_error", tuple_json(result.argmin_error)}, {"rows", rows}};
}

// ---- files ---------------------------------------------------------------------

inline void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace vpower
