// vpower: Banzhaf power, efficiency and square-root fairness of council voting
// rules, plus quota sweeps over the Nice, Lisbon and square-root rule families.
//
// Exit codes: 0 ok, 1 configuration error, 2 capacity error, 3 I/O error,
// 4 no tuple satisfies the efficiency floor.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vpower/vpower.hpp"

namespace {

using namespace vpower;

enum ExitCode { kOk = 0, kConfig = 1, kCapacity = 2, kIo = 3, kNoSolution = 4 };

struct Flags {
  std::string rule = "nice";
  std::string rule_file;
  std::string data = std::string(kEu27DatasetName);
  std::optional<std::int64_t> quota_weight;
  std::optional<std::int64_t> quota_count;
  std::optional<std::string> quota_pop;
  std::optional<std::string> quota;
  bool count_majority = false;
  bool blocking = false;
  std::string backend = "auto";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 20080101;
  int workers = 0;
  std::string out;
  std::string format = "csv";
  // sweep / optimize
  std::optional<std::string> count_range;
  std::optional<std::string> weight_range;
  std::optional<std::string> pop_range;
  std::string mode = "auto";
  std::optional<std::string> min_efficiency;
  bool quiet = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ConfigError("not an integer: '" + s + "'");
  return v;
}

/// "lo:hi[:step]" or a single value.
std::vector<std::int64_t> parse_int_range(const std::string& text) {
  const auto p = split(text, ':');
  if (p.size() == 1) return {parse_int(p[0])};
  if (p.size() > 3) throw ConfigError("bad range '" + text + "'");
  return SweepGrid::integer_range(parse_int(p[0]), parse_int(p[1]), p.size() == 3 ? parse_int(p[2]) : 1);
}

/// "lo:hi:step" or a single value; decimals are parsed exactly.
std::vector<Rational> parse_quota_range(const std::string& text) {
  const auto p = split(text, ':');
  if (p.size() == 1) return {Rational::parse(p[0])};
  if (p.size() != 3) throw ConfigError("quota range '" + text + "' must be lo:hi:step");
  return SweepGrid::rational_range(Rational::parse(p[0]), Rational::parse(p[1]), Rational::parse(p[2]));
}

Backend parse_backend(const std::string& s) {
  if (s == "auto") return Backend::automatic;
  if (s == "enum") return Backend::enumeration;
  if (s == "dp") return Backend::dp;
  if (s == "mc") return Backend::monte_carlo;
  throw ConfigError("unknown backend '" + s + "' (auto|enum|dp|mc)");
}

std::string percent(const Rational& fraction, int places) { return (fraction * Rational(100)).to_decimal(places); }

VotingRule build_rule(const Flags& f, const Council& council) {
  if (f.rule == "file") {
    if (f.rule_file.empty()) throw ConfigError("--rule file needs --rule-file");
    return load_rule_file(f.rule_file);
  }
  switch (family_from_string(f.rule)) {
    case Family::nice:
      if (f.quota) throw ConfigError("--quota applies to jc; use --quota-pop");
      return make_nice_rule(council, f.quota_weight.value_or(255), f.quota_count.value_or(14),
                            Rational::parse(f.quota_pop.value_or("0.62")));
    case Family::lisbon:
      if (f.quota || f.quota_weight) throw ConfigError("lisbon takes --quota-count and --quota-pop only");
      return make_lisbon_rule(f.quota_count.value_or(15), Rational::parse(f.quota_pop.value_or("0.65")), f.blocking);
    case Family::jc: {
      if (f.quota_weight || f.quota_pop) throw ConfigError("jc takes --quota and optionally --count-majority or --quota-count");
      VotingRule rule = make_jc_rule(council, Rational::parse(f.quota.value_or("0.615")), f.count_majority);
      if (f.quota_count) {
        if (f.count_majority) throw ConfigError("--count-majority and --quota-count are exclusive");
        rule.criteria.push_back(Criterion::absolute(CriterionKind::member_count, *f.quota_count));
      }
      return rule;
    }
  }
  throw ConfigError("unknown rule");
}

SweepGrid build_grid(const Flags& f) {
  if (f.rule == "file") throw ConfigError("sweeps need --rule nice, lisbon or jc");
  SweepGrid grid;
  grid.family = family_from_string(f.rule);
  switch (grid.family) {
    case Family::nice:
      grid.count_quotas = parse_int_range(f.count_range.value_or("14"));
      grid.weight_quotas = parse_int_range(f.weight_range.value_or("190:275"));
      grid.pop_quotas = parse_quota_range(f.pop_range.value_or("0.51:0.85:0.01"));
      break;
    case Family::lisbon:
      if (f.weight_range) throw ConfigError("lisbon sweeps take no --weights");
      grid.count_quotas = parse_int_range(f.count_range.value_or("14:18"));
      grid.pop_quotas = parse_quota_range(f.pop_range.value_or("0.51:0.85:0.001"));
      break;
    case Family::jc:
      if (f.weight_range) throw ConfigError("jc sweeps take no --weights");
      if (f.count_range) grid.count_quotas = parse_int_range(*f.count_range);
      grid.pop_quotas = parse_quota_range(f.pop_range.value_or("0.51:0.85:0.001"));
      break;
  }
  grid.validate();
  return grid;
}

SweepMode parse_mode(const std::string& s) {
  if (s == "auto") return SweepMode::automatic;
  if (s == "shared") return SweepMode::shared;
  if (s == "per-tuple") return SweepMode::per_tuple;
  throw ConfigError("unknown sweep mode '" + s + "' (auto|shared|per-tuple)");
}

void check_format(const std::string& format) {
  if (format != "csv" && format != "json") throw ConfigError("unknown format '" + format + "' (csv|json)");
}

std::string row_summary(const SweepRow& r) {
  return r.tuple.to_string() + " sigma2=" + format_fixed(r.error_rate_permille(), 4) +
         "‰ eff=" + percent(r.efficiency, 2) + "% max_dev=" + format_fixed(r.max_deviation_percent(), 2) + "% (" +
         r.max_deviation_member + ")";
}

int run_analyze(const Flags& f) {
  check_format(f.format);
  const Backend backend = parse_backend(f.backend);
  const Council council = load_dataset(f.data);
  const VotingRule rule = build_rule(f, council);
  PowerOptions options;
  options.backend = backend;
  options.samples = f.samples;
  options.seed = f.seed;
  options.workers = f.workers;
  const PowerReport report = compute_power(council, rule, options);
  const FairnessAssessment fairness = assess(council, report);

  std::cout << describe(rule) << " | backend=" << to_string(report.backend)
            << " sigma2=" << format_fixed(fairness.error_rate_permille(), 4) << "‰ eff=" << percent(report.efficiency, 2)
            << "% max_dev=" << format_fixed(fairness.max_deviation.value * 100, 2) << "% ("
            << fairness.max_deviation.member << ")";
  if (report.efficiency_stderr)
    std::cout << " eff_stderr=" << format_fixed(*report.efficiency_stderr * 100, 4) << "%";
  std::cout << "\n";
  if (!f.quiet) {
    for (int i = 0; i < report.size(); ++i) {
      const auto& m = report.members[static_cast<std::size_t>(i)];
      std::cout << "  " << m.id << " beta=" << percent(m.banzhaf_index, 4)
                << "% ideal=" << percent(fairness.ideal.shares[static_cast<std::size_t>(i)], 4) << "%\n";
    }
  }
  if (!f.out.empty()) {
    if (f.format == "csv") {
      write_text_file(f.out + "_power.csv", power_report_csv(council, report));
      write_text_file(f.out + "_fairness.csv", fairness_csv(report, fairness));
    } else {
      Json j{{"power", power_report_json(council, report)}, {"fairness", fairness_json(fairness)}};
      write_text_file(f.out + ".json", j.dump(2) + "\n");
    }
  }
  return kOk;
}

/// Progress on standard error, at most once per second.
std::function<void(double)> progress_printer(bool quiet) {
  if (quiet) return {};
  auto last = std::make_shared<std::chrono::steady_clock::time_point>(std::chrono::steady_clock::now());
  return [last](double fraction) {
    const auto now = std::chrono::steady_clock::now();
    if (now - *last < std::chrono::seconds(1) && fraction < 1.0) return;
    *last = now;
    std::fprintf(stderr, "\rsweep %5.1f%%", fraction * 100);
    if (fraction >= 1.0) std::fputc('\n', stderr);
    std::fflush(stderr);
  };
}

SweepResult sweep_from_flags(const Flags& f, const Council& council) {
  const SweepGrid grid = build_grid(f);
  SweepOptions options;
  options.mode = parse_mode(f.mode);
  options.workers = f.workers;
  options.progress = progress_printer(f.quiet);
  return run_sweep(council, grid, options);
}

void write_sweep(const Flags& f, const SweepResult& result) {
  if (f.out.empty()) return;
  if (f.format == "csv") {
    write_text_file(f.out + ".csv", sweep_csv(result));
    write_text_file(f.out + "_slices.csv", slice_csv(slice_optima(result)));
    write_text_file(f.out + "_sigma2.csv", plot_series_csv(result, PlotMetric::error_rate));
    write_text_file(f.out + "_efficiency.csv", plot_series_csv(result, PlotMetric::efficiency));
  } else {
    write_text_file(f.out + ".json", sweep_json(result).dump(2) + "\n");
  }
}

int run_sweep_cmd(const Flags& f) {
  check_format(f.format);
  const Council council = load_dataset(f.data);
  build_grid(f);  // validate before the long computation
  parse_mode(f.mode);
  const SweepResult result = sweep_from_flags(f, council);
  write_sweep(f, result);
  std::cout << "rows=" << result.rows.size() << "\n";
  std::cout << "argmin " << row_summary(*result.find(result.argmin_error)) << "\n";
  return kOk;
}

int run_optimize(const Flags& f) {
  check_format(f.format);
  if (!f.min_efficiency) throw ConfigError("optimize needs --min-efficiency");
  const Rational floor = Rational::parse(*f.min_efficiency);
  if (floor < Rational(0) || floor > Rational(1)) throw ConfigError("--min-efficiency must lie in [0, 1]");
  const Council council = load_dataset(f.data);
  build_grid(f);
  parse_mode(f.mode);
  const SweepResult result = sweep_from_flags(f, council);
  write_sweep(f, result);
  std::cout << "argmin " << row_summary(*result.find(result.argmin_error)) << "\n";
  const QuotaTuple best = optimize_with_efficiency_floor(result, floor);
  std::cout << "optimum " << row_summary(*result.find(best)) << "\n";
  return kOk;
}

int run_sz_quota(const Flags& f) {
  const Council council = load_dataset(f.data);
  const double q = sz_quota(council);
  std::cout << "sz_quota=" << format_fixed(q, 4) << " (" << format_fixed(q * 100, 2) << "%)\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Banzhaf power, efficiency and square-root fairness of council voting rules"};
  app.require_subcommand(1);
  Flags f;
  if (const char* w = std::getenv("VPOWER_WORKERS")) f.workers = std::atoi(w);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--data", f.data, "dataset CSV path or builtin name")->capture_default_str();
    cmd->add_option("--workers", f.workers, "worker threads (0 = all cores; env VPOWER_WORKERS)");
    cmd->add_flag("--quiet", f.quiet, "suppress per-member lines and progress");
  };
  auto add_rule = [&](CLI::App* cmd) {
    cmd->add_option("--rule", f.rule, "nice | lisbon | jc | file")->capture_default_str();
    cmd->add_option("--out", f.out, "output path prefix");
    cmd->add_option("--format", f.format, "csv | json")->capture_default_str();
  };
  auto add_grid = [&](CLI::App* cmd) {
    cmd->add_option("--count", f.count_range, "member-count quotas lo:hi[:step]");
    cmd->add_option("--weights", f.weight_range, "weight quotas lo:hi[:step] (nice)");
    cmd->add_option("--pop", f.pop_range, "population quotas lo:hi:step as fractions");
    cmd->add_option("--mode", f.mode, "auto | shared | per-tuple")->capture_default_str();
  };

  auto* analyze = app.add_subcommand("analyze", "power, efficiency and fairness of one rule");
  add_common(analyze);
  add_rule(analyze);
  analyze->add_option("--rule-file", f.rule_file, "JSON rule definition (with --rule file)");
  analyze->add_option("--quota-weight", f.quota_weight, "nice weight quota");
  analyze->add_option("--quota-count", f.quota_count, "member-count quota");
  analyze->add_option("--quota-pop", f.quota_pop, "population quota as a fraction");
  analyze->add_option("--quota", f.quota, "jc square-root weight quota as a fraction");
  analyze->add_flag("--count-majority", f.count_majority, "jc: also require a simple majority of members");
  analyze->add_flag("--blocking", f.blocking, "lisbon: blocking minority needs at least four members");
  analyze->add_option("--backend", f.backend, "auto | enum | dp | mc")->capture_default_str();
  analyze->add_option("--samples", f.samples, "monte carlo samples")->capture_default_str();
  analyze->add_option("--seed", f.seed, "monte carlo seed")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "evaluate a quota grid");
  add_common(sweep);
  add_rule(sweep);
  add_grid(sweep);

  auto* optimize = app.add_subcommand("optimize", "least-error tuple above an efficiency floor");
  add_common(optimize);
  add_rule(optimize);
  add_grid(optimize);
  optimize->add_option("--min-efficiency", f.min_efficiency, "efficiency floor as a fraction");

  auto* sz = app.add_subcommand("sz-quota", "closed-form optimal quota for square-root weights");
  add_common(sz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (f.workers < 0) throw ConfigError("--workers must be non-negative");
    if (*analyze) return run_analyze(f);
    if (*sweep) return run_sweep_cmd(f);
    if (*optimize) return run_optimize(f);
    if (*sz) return run_sz_quota(f);
  } catch (const NoSolutionError& e) {
    std::cerr << "vpower: " << e.what() << "\n";
    return kNoSolution;
  } catch (const CapacityError& e) {
    std::cerr << "vpower: " << e.what() << "\n";
    return kCapacity;
  } catch (const DispatchError& e) {
    std::cerr << "vpower: " << e.what() << "\n";
    return kCapacity;
  } catch (const IoError& e) {
    std::cerr << "vpower: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    std::cerr << "vpower: " << e.what() << "\n";
    return kConfig;
  }
  return kOk;
}
