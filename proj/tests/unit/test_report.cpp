#include <gtest/gtest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "app_counts.hpp"
#include "hvd/report.hpp"

using namespace hvd::report;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("hvd_report_" + name);
  fs::remove_all(d);
  return d;
}

Inputs table_inputs(bool with_metrics) {
  const auto records = hvd::testing::synthetic_records();
  Inputs in;
  in.stats = hvd::analytics::aggregate_by_category(records, 22119);
  in.likes = hvd::analytics::aggregate_likes(records);
  hvd::detector::ViolationRecord r;
  r.review_id = "x";
  r.app_id = "anydo";
  r.items.push_back({"Responsible", "Benevolence", 0.1});
  r.features = {"set reminders"};
  in.features = hvd::analytics::associate_features({r});
  in.app_names = {{"anydo", "Any.do"}};
  if (with_metrics) {
    in.metrics = hvd::analytics::Evaluation{hvd::analytics::metrics_from_counts(5727, 2573, 1173, 0),
                                            hvd::analytics::metrics_from_counts(0, 0, 0, 0)};
  }
  return in;
}

std::string slurp(const fs::path& p) { return hvd::text::read_file(p); }

}  // namespace

TEST(Format, Numbers) {
  EXPECT_EQ(one_decimal(10.0), "10");
  EXPECT_EQ(one_decimal(487.58333), "487.6");
  EXPECT_EQ(one_decimal(0.04), "0");
  EXPECT_EQ(fixed(35.3418, 2), "35.34");
  EXPECT_EQ(parse_format("md"), Format::kMd);
  EXPECT_THROW(parse_format("xml"), hvd::UsageError);
}

TEST(Emit, CsvFilesAndColumns) {
  const auto dir = fresh_dir("csv");
  const auto files = emit_report(table_inputs(true), Format::kCsv, dir);
  std::vector<std::string> names;
  for (const auto& f : files) names.push_back(f.filename().string());
  EXPECT_EQ(names, (std::vector<std::string>{"category_summary.csv", "item_frequencies.csv", "likes_summary.csv",
                                             "feature_value_table.csv", "metrics.csv", "category_percentages.csv"}));
  const std::string summary = slurp(dir / "category_summary.csv");
  EXPECT_EQ(summary.substr(0, summary.find('\n')),
            "App,Achievement,Benevolence,Conformity,Hedonism,Power,Security,Self-direction,Stimulation,Tradition,"
            "Universalism,Total");
  EXPECT_NE(summary.find("Average,28.1,172.3,2.8,95.2,10,22.1,125,6.3,4.5,21.3,487.6\n"), std::string::npos);
  EXPECT_NE(summary.find("Pinterest,21,137,1,184,11,14,200,8,6,32,614\n"), std::string::npos);
  EXPECT_NE(slurp(dir / "category_percentages.csv").find("Benevolence,2068,35.34,"), std::string::npos);
  EXPECT_EQ(slurp(dir / "feature_value_table.csv"), "feature,app,items,support\nSet reminders,Any.do,Responsible,1\n");
  EXPECT_NE(slurp(dir / "metrics.csv").find("review,5727,2573,1173,0,0.6900,0.8300,0.7536,\n"), std::string::npos);
  EXPECT_NE(slurp(dir / "metrics.csv").find("item,0,0,0,0,0.0000,0.0000,0.0000,precision; recall; f_measure\n"),
            std::string::npos);
}

TEST(Emit, MarkdownRendersAverageRow) {
  const auto dir = fresh_dir("md");
  emit_report(table_inputs(false), Format::kMd, dir);
  const std::string md = slurp(dir / "category_summary.md");
  EXPECT_NE(md.find("| Average | 28.1 | 172.3 |"), std::string::npos);
  EXPECT_NE(md.find("| 487.6 |"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "metrics.md"));
  EXPECT_TRUE(fs::exists(dir / "category_percentages.csv"));
}

TEST(Emit, JsonIsParseableAndDeterministic) {
  const auto a = fresh_dir("json_a");
  const auto b = fresh_dir("json_b");
  const auto fa = emit_report(table_inputs(true), Format::kJson, a);
  emit_report(table_inputs(true), Format::kJson, b);
  for (const auto& f : fa) {
    EXPECT_EQ(slurp(f), slurp(b / f.filename())) << f;
    if (f.extension() == ".json") {
      EXPECT_TRUE(nlohmann::json::accept(slurp(f))) << f;
    }
  }
  const auto j = nlohmann::json::parse(slurp(a / "category_summary.json"));
  EXPECT_EQ(j["total"], 5851);
  EXPECT_EQ(j["per_app"].size(), 12u);
}

TEST(Emit, EmptyStats) {
  const auto dir = fresh_dir("empty");
  Inputs in;
  in.stats = hvd::analytics::aggregate_by_category({}, 0);
  emit_report(in, Format::kCsv, dir);
  EXPECT_NE(slurp(dir / "category_percentages.csv").find("Achievement,0,0.00,0,0.00"), std::string::npos);
  EXPECT_EQ(slurp(dir / "feature_value_table.csv"), "feature,app,items,support\n");
}

TEST(Emit, UnwritableDirectoryIsIoError) {
  const auto file = fresh_dir("blocker");
  hvd::text::write_file(file, "x");
  EXPECT_THROW(emit_report(table_inputs(false), Format::kCsv, file / "sub"), hvd::IoError);
}
