// Copyright 2026 The witbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <set>

#include "witbench/bench/runner.hpp"

namespace witbench::bench {
namespace {

BenchConfig small(Scheme s, unsigned lo, unsigned hi, std::uint64_t keys, unsigned reps) {
  BenchConfig c;
  c.scheme = s;
  c.min_log_leaves = lo;
  c.max_log_leaves = hi;
  c.keys = keys;
  c.reps = reps;
  c.seed = 7;
  return c;
}

TEST(BenchConfig, ScheduleDenseThenEvenExponents) {
  BenchConfig c;
  c.min_log_leaves = 5;
  c.max_log_leaves = 21;
  std::vector<std::uint64_t> want;
  for (unsigned e : {5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 16, 18, 20}) want.push_back(std::uint64_t(1) << e);
  EXPECT_EQ(c.schedule(), want);
  c.min_log_leaves = 15;
  c.max_log_leaves = 15;
  EXPECT_TRUE(c.schedule().empty());
}

TEST(BenchConfig, RejectsBadValues) {
  auto bad = [](auto edit) {
    BenchConfig c;
    edit(c);
    EXPECT_THROW(c.validate(), std::invalid_argument);
  };
  bad([](BenchConfig& c) { c.keys = 0; });
  bad([](BenchConfig& c) { c.reps = 0; });
  bad([](BenchConfig& c) { c.parallel = 0; });
  bad([](BenchConfig& c) { c.min_log_leaves = 0; });
  bad([](BenchConfig& c) { c.max_log_leaves = 33; });
  bad([](BenchConfig& c) { c.min_log_leaves = 9, c.max_log_leaves = 8; });
  bad([](BenchConfig& c) { c.time_budget_s = 0; });
  bad([](BenchConfig& c) { c.mem_budget_bytes = 0; });
  EXPECT_NO_THROW(BenchConfig{}.validate());
}

TEST(BenchRunner, SampleIndicesAreDistinctAndInRange) {
  std::mt19937_64 rng(3);
  for (auto [n, k] : {std::pair<std::uint64_t, std::uint64_t>{10, 20}, {10, 10}, {1000, 999}, {1u << 20, 5000}}) {
    auto v = detail::sample_indices(n, k, rng);
    ASSERT_EQ(v.size(), std::min(n, k));
    EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
    EXPECT_EQ(std::set<std::uint64_t>(v.begin(), v.end()).size(), v.size());
    EXPECT_LT(v.back(), n);
  }
}

TEST(BenchRunner, NaiveKeysProvenAndBytes) {
  auto res = run(small(Scheme::merkle_naive, 5, 8, 100, 2));
  ASSERT_FALSE(res.truncated);
  ASSERT_EQ(res.records.size(), 4u);
  const std::uint64_t want_keys[] = {32, 64, 100, 100};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& r = res.records[i];
    const std::uint64_t d = 5 + i;
    EXPECT_EQ(r.status, RunStatus::ok);
    EXPECT_EQ(r.leaves, std::uint64_t(1) << d);
    EXPECT_EQ(r.keys_proven, want_keys[i]);
    ASSERT_EQ(r.reps_completed(), 2u);
    for (std::size_t j = 0; j < 2; ++j) {
      // u64 index, leaf, d siblings per key.
      EXPECT_EQ(r.witness_bytes[j], want_keys[i] * (8 + 32 + 32 * d));
      EXPECT_EQ(r.modeled_bytes[j], want_keys[i] * 32 * d);
    }
  }
}

TEST(BenchRunner, SnarkProofsVerifyAndAreCounted) {
  auto res = run(small(Scheme::merkle_snark, 2, 2, 3, 2));
  ASSERT_EQ(res.records.size(), 1u);
  const auto& r = res.records[0];
  EXPECT_EQ(r.status, RunStatus::ok);
  EXPECT_EQ(r.keys_proven, 3u);
  auto bc = build_branch_circuit(2);
  IpaBackend ipa(bc.cs);
  // Per proof: tag, two length prefixes, proof, four public field elements.
  const std::uint64_t each = 1 + 4 + ipa.proof_bytes() + 4 + 4 * 32;
  for (auto b : r.witness_bytes) EXPECT_EQ(b, 3 * each);
  for (auto b : r.modeled_bytes) EXPECT_EQ(b, 3 * (192 + 64));
}

TEST(BenchRunner, VerkleWitnessGrowsWithTree) {
  auto res = run(small(Scheme::verkle, 5, 12, 300, 2));
  ASSERT_EQ(res.records.size(), 8u);
  std::uint64_t prev = 0;
  for (const auto& r : res.records) {
    EXPECT_EQ(r.status, RunStatus::ok);
    EXPECT_EQ(r.keys_proven, std::min<std::uint64_t>(300, r.leaves));
    const auto mean = BenchRecord::mean(r.witness_bytes);
    EXPECT_GE(mean, prev) << r.leaves;
    prev = mean;
    // Leaves and metadata alone take 66 bytes per key.
    EXPECT_GT(mean, 66 * r.keys_proven);
  }
}

TEST(BenchRunner, TimeBudgetStopsSweep) {
  auto cfg = small(Scheme::merkle_snark, 3, 6, 4, 3);
  cfg.time_budget_s = 1e-6;
  auto res = run(cfg);
  EXPECT_TRUE(res.truncated);
  ASSERT_EQ(res.records.size(), 1u);
  EXPECT_EQ(res.records[0].status, RunStatus::time_budget);
  EXPECT_EQ(res.records[0].reps_completed(), 0u);
}

TEST(BenchRunner, MemoryBudgetSkipsLeafCount) {
  auto cfg = small(Scheme::merkle_naive, 5, 10, 4, 1);
  cfg.mem_budget_bytes = detail::naive_memory(64, 4);
  auto res = run(cfg);
  EXPECT_TRUE(res.truncated);
  ASSERT_EQ(res.records.size(), 3u);
  EXPECT_EQ(res.records[1].status, RunStatus::ok);
  EXPECT_EQ(res.records[2].status, RunStatus::mem_budget);
  EXPECT_EQ(res.records[2].reps_completed(), 0u);
}

TEST(BenchRunner, MemoryEstimateTracksInternalNodes) {
  VerkleTree t;
  std::mt19937_64 rng(11);
  const std::uint64_t n = 1 << 12;
  for (std::uint64_t i = 0; i < n; ++i) {
    VerkleKey k;
    for (auto& b : k) b = std::uint8_t(rng());
    t.insert(k, k);
  }
  const double want = detail::expected_verkle_internal(n);
  EXPECT_NEAR(double(t.internal_count()), want, 0.1 * want);
  EXPECT_LT(estimate_peak_memory(Scheme::verkle, 1 << 10, 10), estimate_peak_memory(Scheme::verkle, 1 << 16, 10));
  EXPECT_LT(estimate_peak_memory(Scheme::merkle_naive, 1 << 10, 10),
            estimate_peak_memory(Scheme::merkle_snark, 1 << 10, 10));
}

TEST(BenchRunner, SameSeedSameNonTimingColumns) {
  for (auto s : {Scheme::verkle, Scheme::merkle_naive}) {
    auto a = small(s, 5, 9, 40, 2);
    auto b = a;
    b.parallel = 2;
    auto ra = run(a), rb = run(b);
    EXPECT_EQ(to_csv(ra.records, false), to_csv(rb.records, false)) << to_string(s);
    auto c = a;
    c.seed = 8;
    EXPECT_NE(to_csv(ra.records, false), to_csv(run(c).records, false)) << to_string(s);
  }
}

BenchRecord sample_record() {
  BenchRecord r;
  r.scheme = Scheme::merkle_snark;
  r.leaves = 1 << 20;
  r.keys_proven = 5000;
  r.status = RunStatus::time_budget;
  r.witness_bytes = {10, 11, 13};
  r.modeled_bytes = {7, 7, 7};
  r.prove_ns = {std::uint64_t(1) << 40, 5, 6};
  r.verify_ns = {1, 2, 4};
  r.peak_mem_estimate = 123456789;
  r.seed = ~std::uint64_t(0);
  r.timestamp_ms = 1790000000000;
  return r;
}

TEST(BenchRecord, CsvRoundTrip) {
  BenchRecord empty;
  empty.status = RunStatus::mem_budget;
  std::vector<BenchRecord> rs = {sample_record(), empty};
  auto text = to_csv(rs);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "scheme,leaves,keys_proven,reps_completed,status,witness_bytes_mean,modeled_bytes_mean,prove_ns_mean,"
            "verify_ns_mean,peak_mem_estimate,seed,timestamp_ms,witness_bytes_runs,modeled_bytes_runs,prove_ns_runs,"
            "verify_ns_runs");
  EXPECT_NE(text.find("merkle-snark,1048576,5000,3,time_budget,11,7,366503875929,2,"), std::string::npos);
  EXPECT_EQ(parse_csv(text), rs);
  EXPECT_EQ(parse_json(to_json(rs)), rs);
  EXPECT_EQ(parse_json(nlohmann::json::parse(to_json(rs).dump())), rs);
}

TEST(BenchRecord, CsvWithoutTimingDropsFourColumnsAndTimestamp) {
  auto text = to_csv({sample_record()}, false);
  auto header = text.substr(0, text.find('\n'));
  EXPECT_EQ(header.find("prove_ns"), std::string::npos);
  EXPECT_EQ(header.find("timestamp"), std::string::npos);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), 10);
}

TEST(BenchRecord, CsvRejectsMalformed) {
  auto text = to_csv({sample_record()});
  EXPECT_THROW(parse_csv("x" + text), std::invalid_argument);
  auto bad_mean = text;
  bad_mean.replace(bad_mean.find(",11,7,"), 6, ",12,7,");
  EXPECT_THROW(parse_csv(bad_mean), std::invalid_argument);
  auto bad_int = text;
  bad_int.replace(bad_int.find("10;11;13"), 8, "10;1x;13");
  EXPECT_THROW(parse_csv(bad_int), std::invalid_argument);
  EXPECT_THROW(parse_csv(text + "verkle,1\n"), std::invalid_argument);
  EXPECT_THROW(parse_csv(""), std::invalid_argument);
}

}  // namespace
}  // namespace witbench::bench
