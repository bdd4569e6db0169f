#include "gausslab/runner.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "gausslab/errors.hpp"
#include "gausslab/rng.hpp"

namespace gausslab {
namespace {

using nlohmann::json;

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.q_lo = 2;
  cfg.q_hi = 32;
  cfg.trials = 2;
  cfg.seed = 99;
  return cfg;
}

std::string run_jsonl(SweepConfig cfg, const std::vector<std::string>& families) {
  finalize_config(cfg);
  std::string out;
  run_sweep(cfg, families, [&](const BoundReport& r) { out += to_jsonl(r) + "\n"; });
  return out;
}

TEST(Seeds, HashVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(mix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_NE(derive_seed(1, "thm4|p=3;m=3;trial=0"), derive_seed(1, "thm4|p=3;m=3;trial=1"));
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = a.between(3, 9);
    EXPECT_GE(x, 3u);
    EXPECT_LE(x, 9u);
    EXPECT_EQ(x, b.between(3, 9));
    const double u = a.unit();
    b.unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Config, ParsesKeys) {
  const json doc = json::parse(R"({"p_list": [2, 3], "m_range": [1, 3], "q_range": [4, 27],
    "n_filter": {"mode": "list", "values": [1, 2]}, "bounds": ["lemma6"], "trials": 3,
    "seed": 17, "format": "csv", "jobs": 2, "timing": true})");
  SweepConfig cfg = config_from_json(doc);
  finalize_config(cfg);
  EXPECT_EQ(cfg.p_list, (std::vector<std::uint32_t>{2, 3}));
  EXPECT_EQ(cfg.m_hi, 3u);
  EXPECT_EQ(cfg.q_lo, 4u);
  EXPECT_TRUE(cfg.n_filter.accepts(2));
  EXPECT_FALSE(cfg.n_filter.accepts(3));
  EXPECT_EQ(cfg.format, "csv");
  EXPECT_TRUE(cfg.timing);
  const auto fields = sweep_fields(cfg);
  const std::vector<std::pair<std::uint32_t, unsigned>> expected = {{2, 2}, {2, 3}, {3, 2}, {3, 3}};
  EXPECT_EQ(fields, expected);
}

TEST(Config, Rejects) {
  EXPECT_THROW(config_from_json(json::parse(R"({"nope": 1})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"trials": "many"})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"n_filter": {"mode": "sometimes"}})")), ConfigError);

  SweepConfig big;
  big.q_hi = 2048;
  big.q_max = 1024;
  EXPECT_THROW(finalize_config(big), ConfigError);

  SweepConfig fmt;
  fmt.format = "xml";
  EXPECT_THROW(finalize_config(fmt), ConfigError);

  SweepConfig composite;
  composite.p_list = {4};
  EXPECT_THROW(finalize_config(composite), ConfigError);

  SweepConfig unknown = small_config();
  finalize_config(unknown);
  EXPECT_THROW(run_sweep(unknown, {"no_such_family"}, [](const BoundReport&) {}), ConfigError);
}

TEST(Config, EnvironmentCeiling) {
  ::setenv("GAUSSLAB_Q_MAX", "100", 1);
  SweepConfig cfg;
  cfg.q_hi = 128;
  EXPECT_THROW(finalize_config(cfg), ConfigError);
  SweepConfig ok;
  ok.q_hi = 64;
  EXPECT_NO_THROW(finalize_config(ok));
  EXPECT_EQ(ok.q_max, 100u);
  ::unsetenv("GAUSSLAB_Q_MAX");
}

TEST(Sweep, DeterministicAcrossJobs) {
  SweepConfig one = small_config(), four = small_config();
  one.jobs = 1;
  four.jobs = 4;
  const std::vector<std::string> families = {"lemma4", "lemma5", "thm3", "thm4", "weil_eq4"};
  const std::string a = run_jsonl(one, families);
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, run_jsonl(four, families));

  SweepConfig reseeded = small_config();
  reseeded.seed = 100;
  EXPECT_NE(a, run_jsonl(reseeded, families));
}

TEST(Sweep, VerifyHasNoFailures) {
  SweepConfig cfg = small_config();
  finalize_config(cfg);
  std::size_t count = 0;
  run_sweep(cfg, verify_families(), [&](const BoundReport& r) {
    ++count;
    EXPECT_EQ(r.mode, Mode::asserted);
    EXPECT_FALSE(r.failed()) << to_jsonl(r);
  });
  EXPECT_GT(count, 100u);
}

TEST(Sweep, FaultIsCaught) {
  SweepConfig cfg = small_config();
  cfg.q_lo = cfg.q_hi = 8;
  finalize_config(cfg);
  std::size_t failures = 0;
  run_sweep(cfg, verify_families(), [&](const BoundReport& r) { failures += r.failed(); },
            [](FieldCtx& ctx) { ctx.corrupt_trace_for_testing(1); });
  EXPECT_GT(failures, 0u);
}

TEST(Sweep, EmptyFamilyListIsEmpty) {
  EXPECT_EQ(run_jsonl(small_config(), {}), "");
}

TEST(Output, JsonKeyOrder) {
  const BoundReport r = eval_weil(build_field(7, 1), 2);
  const auto j = to_json(r);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  const std::vector<std::string> expected = {"bound_id", "p", "m", "q", "n", "params", "lhs",
                                             "rhs_shape", "ratio", "mode", "verdict", "seed", "runtime_ms"};
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(j["mode"], "assert");
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(to_jsonl(r).find('\n'), std::string::npos);
  EXPECT_TRUE(to_json(eval_subfield_energy(build_field(2, 2), 1))["n"].is_null());
}

TEST(Output, CsvColumns) {
  const BoundReport a = eval_weil(build_field(7, 1), 3);
  const BoundReport b = eval_lemma6(build_field(7, 1), nth_power_subgroup(build_field(7, 1), 3));
  std::ostringstream out;
  write_csv(out, {a, b});
  std::istringstream lines(out.str());
  std::string header, row1, row2, extra;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  EXPECT_FALSE(std::getline(lines, extra));
  EXPECT_EQ(header.rfind("bound_id,p,m,q,n,params.", 0), 0u);
  EXPECT_NE(header.find("params.a_star,params.binding_form"), std::string::npos);
  EXPECT_NE(header.find(",lhs,rhs_shape,ratio,mode,verdict,seed,runtime_ms"), std::string::npos);
  EXPECT_EQ(row1.rfind("weil_eq4,7,1,7,3,", 0), 0u);
}

TEST(Extremal, MergeKeepsMaximum) {
  ExtremalStore store;
  BoundReport r;
  r.bound_id = "thm1";
  r.ratio = 0.5;
  EXPECT_TRUE(store.merge(r));
  EXPECT_FALSE(store.merge(r));
  r.ratio = 0.25;
  EXPECT_FALSE(store.merge(r));
  r.ratio = 0.75;
  EXPECT_TRUE(store.merge(r));
  EXPECT_EQ(store.entries().at("thm1").first, 0.75);

  const auto path = std::filesystem::temp_directory_path() / "gausslab_extremal_test.json";
  std::filesystem::remove(path);
  EXPECT_TRUE(ExtremalStore::load(path.string()).entries().empty());
  store.save(path.string());
  ExtremalStore again = ExtremalStore::load(path.string());
  EXPECT_FALSE(again.merge(r));
  again.save(path.string());
  EXPECT_EQ(again.entries().at("thm1").first, 0.75);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace gausslab
