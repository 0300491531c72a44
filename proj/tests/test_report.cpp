#include <gtest/gtest.h>

#include "json.hpp"
#include "regseq/generators.hpp"
#include "regseq/report.hpp"

namespace regseq {
namespace {

using nlohmann::json;

MinimalityProfile sample_profile() {
  SearchConstraints c;
  c.n_inputs = 1;
  c.max_len = 4;
  c.pruning = PruneRules{PruneRule::frontier_memo, PruneRule::drop_jump0};
  return minimal_length(parity(1), c, SearchOptions{2}, "parity");
}

TEST(RunReport, RoundTripWithTrace) {
  const auto x = pis1(2);
  Environment env = Environment::fresh({true, false}, 1);
  report::RunReport r{render(x), "10", Inaction{}, trace(x, env)};
  r.outcome = r.trace->outcome;
  const std::string text = report::to_json(r);
  const auto back = report::run_report_from_json(text);
  EXPECT_EQ(back.program, r.program);
  EXPECT_EQ(back.inputs, "10");
  EXPECT_EQ(back.outcome, r.outcome);
  ASSERT_TRUE(back.trace.has_value());
  EXPECT_EQ(back.trace->entries, r.trace->entries);
  EXPECT_EQ(report::to_json(back), text);

  const auto j = json::parse(text);
  EXPECT_EQ(j["schema_version"], report::kSchemaVersion);
  EXPECT_EQ(j["kind"], "run");
  EXPECT_EQ(j["outcome"]["status"], "terminated");
  EXPECT_EQ(j["outcome"]["output"], true);
}

TEST(RunReport, FailureOutcomes) {
  for (const Outcome& o : {Outcome{Inaction{}}, Outcome{InvalidAccess{3, RegisterName::aux(2)}},
                           Outcome{InvalidAccess{1, RegisterName::input(4)}}}) {
    report::RunReport r{"!", "", o, std::nullopt};
    const auto back = report::run_report_from_json(report::to_json(r));
    EXPECT_EQ(back.outcome, o);
    EXPECT_FALSE(back.trace.has_value());
  }
}

TEST(SearchReport, RoundTrip) {
  report::SearchReportFile f{sample_profile(), "2026-01-01T00:00:00Z", "2026-01-01T00:00:01Z"};
  const std::string text = report::to_json(f);
  const auto back = report::search_report_from_json(text);
  EXPECT_EQ(back.profile.target, f.profile.target);
  EXPECT_EQ(back.profile.target_id, "parity");
  EXPECT_EQ(back.profile.constraints, f.profile.constraints);
  EXPECT_EQ(back.profile.lengths, f.profile.lengths);
  EXPECT_EQ(back.profile.minimal_length, f.profile.minimal_length);
  EXPECT_EQ(back.profile.witness, f.profile.witness);
  EXPECT_EQ(back.profile.workers, 2U);
  EXPECT_EQ(back.started_at, f.started_at);
  EXPECT_EQ(report::to_json(back), text);
}

TEST(SearchReport, Fields) {
  const auto j = json::parse(report::to_json(report::SearchReportFile{sample_profile(), "s", "e"}));
  EXPECT_EQ(j["kind"], "minimality_profile");
  EXPECT_EQ(j["target"]["bits"], "01");
  EXPECT_EQ(j["minimal_length"], 3);
  EXPECT_EQ(j["witness"], "+in:1.get ; out.set:t ; !");
  EXPECT_EQ(j["prune_rules"], json::parse(R"(["drop_jump0","frontier_memo"])"));
  EXPECT_EQ(j["lengths"].size(), 3U);
  EXPECT_EQ(j["lengths"][2]["verdict"], "exists");
  EXPECT_TRUE(j.contains(report::kRunInfoKey));
  EXPECT_EQ(j[report::kRunInfoKey]["workers"], 2);
}

TEST(SearchReport, StripRunInfoIgnoresTiming) {
  auto a = sample_profile();
  auto b = a;
  b.wall_time_seconds = 123.0;
  b.workers = 16;
  b.vm_steps += 5;
  const auto ja = report::to_json(report::SearchReportFile{a, "x", "y"});
  const auto jb = report::to_json(report::SearchReportFile{b, "p", "q"});
  EXPECT_NE(ja, jb);
  EXPECT_EQ(report::strip_run_info(ja), report::strip_run_info(jb));
  EXPECT_FALSE(json::parse(report::strip_run_info(ja)).contains(report::kRunInfoKey));
}

TEST(SearchReport, RejectsWrongDocuments) {
  const auto text = report::to_json(report::SearchReportFile{sample_profile(), "s", "e"});
  auto j = json::parse(text);
  j["schema_version"] = 99;
  EXPECT_THROW(report::search_report_from_json(j.dump()), std::invalid_argument);
  EXPECT_THROW(report::run_report_from_json(text), std::invalid_argument);
}

TEST(Summary, Lines) {
  EXPECT_EQ(report::summary_line(sample_profile()), "minimal_length=3 witness=+in:1.get ; out.set:t ; !");
}

// The combiner only reads the profiles; these are hand-built to reach each branch.
TEST(Separation, CombinesTwoProfiles) {
  SearchConstraints none_c;
  none_c.n_inputs = 1;
  none_c.max_len = 3;
  MinimalityProfile without_aux{parity(1), "parity", none_c, {}, std::nullopt, std::nullopt};
  for (std::size_t len = 1; len <= 3; ++len) without_aux.lengths.push_back({len, 12, 0, 0, 0, false});

  SearchConstraints aux_c = none_c;
  aux_c.k_aux = 1;
  MinimalityProfile with_aux{parity(1), "parity", aux_c, {}, 3, parse("+in:1.get ; out.set:t ; !")};

  auto ok = report::separation(without_aux, with_aux, 3);
  EXPECT_TRUE(ok.certified);
  EXPECT_EQ(ok.statement.rfind("separation certified: target=parity n=1 budget=3", 0), 0U) << ok.statement;

  EXPECT_FALSE(report::separation(without_aux, with_aux, 2).certified);  // witness longer than budget
  EXPECT_FALSE(report::separation(without_aux, with_aux, 4).certified);  // length 4 missing
  EXPECT_FALSE(report::separation(with_aux, without_aux, 3).certified);  // roles swapped

  auto wrong = with_aux;
  wrong.witness = parse("+in:1.get ; ! ; out.set:t ; !");
  wrong.minimal_length = 4;
  EXPECT_FALSE(report::separation(without_aux, wrong, 4).certified);
  wrong.witness = parse("-in:1.get ; out.set:t ; !");
  wrong.minimal_length = 3;
  EXPECT_NE(report::separation(without_aux, wrong, 3).statement.find("does not compute"), std::string::npos);

  auto found = without_aux;
  found.lengths[1].exists = true;
  EXPECT_FALSE(report::separation(found, with_aux, 3).certified);

  auto other = with_aux;
  other.target = complement(parity(1));
  EXPECT_FALSE(report::separation(without_aux, other, 3).certified);
}

}  // namespace
}  // namespace regseq
