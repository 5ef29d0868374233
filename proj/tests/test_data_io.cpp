#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "vpower/data_io.hpp"

using namespace vpower;

namespace {

Council parse(const std::string& text) {
  std::istringstream in(text);
  return read_dataset_csv(in);
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("vpower_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Dataset, BuiltinTotals) {
  const Council eu = load_dataset("eu27-2008");
  EXPECT_EQ(eu.size(), 27);
  EXPECT_EQ(eu.total_population(), 497'481'657);
  EXPECT_EQ(eu.total_nice_weight(), 345);
  EXPECT_EQ(eu[0].id, "DE");
  EXPECT_EQ(eu[26].id, "MT");
  // Bulgaria's root is recomputed at four digits (2764.0980).
  EXPECT_EQ(eu.sqrt_weights()[15], 27'640'980);
  EXPECT_EQ(eu.total_sqrt_weight(), 963'538'647);
}

TEST(Dataset, EuropeanThousandsSeparators) {
  const Council c = parse("id,name,population,nice_weight\nDE,Germany,82.221.808,29\n");
  EXPECT_EQ(c[0].population, 82'221'808);
  EXPECT_EQ(c[0].nice_weight, 29);
  EXPECT_EQ(parse_population("410584"), 410'584);
  for (const char* bad : {"", "1.2.3", "82.22.808", "12a", "-5", ".123"}) EXPECT_THROW(parse_population(bad), ConfigError) << bad;
}

TEST(Dataset, OptionalWeightColumn) {
  const Council c = parse("id,name,population\na,A,10\nb,\"B, the second\",20\n");
  EXPECT_EQ(c[1].name, "B, the second");
  EXPECT_FALSE(c.total_nice_weight());
}

TEST(Dataset, Errors) {
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("id,name,population\n"), ParseError);
  EXPECT_THROW(parse("id,name\n"), ParseError);
  try {
    parse("id,name,population\na,A,10\nb,B,x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse("id,name,population\na,A,10\na,B,20\n"), ConfigError);
  EXPECT_THROW(parse("id,name,population\na,A,0\n"), ConfigError);
  EXPECT_THROW(load_dataset("/nonexistent/dataset.csv"), IoError);
}

TEST(Dataset, RoundTrip) {
  const Council eu = eu27_2008();
  EXPECT_EQ(parse(dataset_csv(eu)), eu);
  const Council odd = parse("id,name,population\nx,\"quote \"\"q\"\"\",5\n");
  EXPECT_EQ(parse(dataset_csv(odd)), odd);
}

TEST(Dataset, DataDirFallback) {
  const auto dir = temp_dir();
  write_text_file(dir / "tiny.csv", "id,name,population\na,A,4\nb,B,1\n");
  ::setenv("VPOWER_DATA_DIR", dir.c_str(), 1);
  EXPECT_EQ(load_dataset("tiny.csv").size(), 2);
  ::unsetenv("VPOWER_DATA_DIR");
  std::filesystem::remove_all(dir);
}

TEST(RuleJson, RoundTripAndShape) {
  const Council eu = eu27_2008();
  for (const VotingRule& rule : {make_nice_rule(eu, 255, 14, Rational(62, 100)),
                                 make_lisbon_rule(15, Rational(65, 100), true), make_jc_rule(eu, Rational(615, 1000), true)})
    EXPECT_EQ(rule_from_json(rule_to_json(rule)), rule);
  const Json j = rule_to_json(make_lisbon_rule(15, Rational(65, 100), false));
  EXPECT_EQ(j.dump(),
            R"({"criteria":[{"kind":"count","quota":{"absolute":15}},{"kind":"population","quota":{"num":13,"den":20}}],"blocking_minority_min":null})");
}

TEST(RuleJson, Rejects) {
  EXPECT_THROW(rule_from_json(Json::parse(R"({"criteria":[]})")), ConfigError);
  EXPECT_THROW(rule_from_json(Json::parse(R"({"criteria":[{"kind":"mass","quota":{"absolute":1}}]})")), ConfigError);
  EXPECT_THROW(rule_from_json(Json::parse(R"({"criteria":[{"kind":"count","quota":{"absolute":1,"num":1}}]})")),
               ConfigError);
  EXPECT_THROW(rule_from_json(Json::parse(R"({"criteria":[{"kind":"count","quota":{"num":3,"den":2}}]})")),
               ConfigError);
  const auto dir = temp_dir();
  write_text_file(dir / "bad.json", "{not json");
  EXPECT_THROW(load_rule_file((dir / "bad.json").string()), ParseError);
  EXPECT_THROW(load_rule_file((dir / "missing.json").string()), IoError);
  std::filesystem::remove_all(dir);
}

TEST(Reports, PowerCsvMatchesJcTable) {
  const Council eu = eu27_2008();
  const PowerReport r = banzhaf_exact(eu, make_jc_rule(eu, Rational(615, 1000), false));
  const std::string csv = power_report_csv(eu, r);
  std::istringstream in(csv);
  std::string header, first, line, last;
  std::getline(in, header);
  std::getline(in, first);
  while (std::getline(in, line)) last = line;
  EXPECT_EQ(header, "member_id,population,weight,TB,NB,beta_percent");
  EXPECT_EQ(first.substr(0, 22), "DE,82221808,9067.6242,");
  EXPECT_EQ(first.substr(first.rfind(',') + 1).substr(0, 6), "9.3978");
  EXPECT_EQ(last.substr(last.rfind(',') + 1).substr(0, 6), "0.6642");
}

TEST(Reports, ByteIdenticalExports) {
  const Council eu = eu27_2008();
  const VotingRule rule = make_lisbon_rule(15, Rational(65, 100), false);
  const auto dir = temp_dir();
  for (int round = 0; round < 2; ++round) {
    const PowerReport r = banzhaf_exact(eu, rule);
    const FairnessAssessment a = assess(eu, r);
    write_text_file(dir / ("p" + std::to_string(round) + ".csv"), power_report_csv(eu, r));
    write_text_file(dir / ("f" + std::to_string(round) + ".json"),
                    Json{{"power", power_report_json(eu, r)}, {"fairness", fairness_json(a)}}.dump(2));
  }
  EXPECT_EQ(slurp(dir / "p0.csv"), slurp(dir / "p1.csv"));
  EXPECT_EQ(slurp(dir / "f0.json"), slurp(dir / "f1.json"));
  std::filesystem::remove_all(dir);
  EXPECT_THROW(write_text_file("/nonexistent/dir/out.csv", "x"), IoError);
}

TEST(Reports, SweepExports) {
  const Council eu = eu27_2008();
  SweepGrid grid{Family::lisbon, {15, 17}, {}, {Rational(65, 100), Rational(775, 1000)}};
  const SweepResult r = run_sweep(eu, grid);
  const std::string csv = sweep_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "count_quota,weight_quota,pop_quota,sigma2_permille,max_dev_percent,max_dev_member,efficiency_percent");
  EXPECT_NE(csv.find("15,,0.6500,1.2438,137.53,"), std::string::npos);
  EXPECT_NE(csv.find("17,,0.7750,0.52118,135.51,"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  const std::string plot = plot_series_csv(r, PlotMetric::efficiency);
  EXPECT_EQ(plot.substr(0, plot.find('\n')), "series,pop_quota,efficiency_percent");
  EXPECT_EQ(sweep_json(r)["argmin_error"]["count"], 17);
}

TEST(Format, Rendering) {
  EXPECT_EQ(format_permille(0.00060518), "0.60518");
  EXPECT_EQ(format_permille(0.0000000488), "0.000048800");
  EXPECT_EQ(format_fixed(73.1830, 2), "73.18");
  EXPECT_EQ(format_significant(1.24384, 5), "1.2438");
}
