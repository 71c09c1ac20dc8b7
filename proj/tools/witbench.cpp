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


// witbench: sweep tree sizes and report witness size and timing per scheme,
// or print an analytic size estimate (`witbench size`).
//
// Exit status: 0 full sweep, 2 sweep stopped by a budget, 1 error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "witbench/bench/runner.hpp"

namespace {

using namespace witbench;
using namespace witbench::bench;

int run_size(const SizeModel& m) {
  auto est = estimate(m);
  for (const auto& c : est.breakdown) std::cout << c.name << "\t" << c.bytes << "\n";
  std::cout << "total\t" << est.total << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stateless witness benchmark"};
  app.require_subcommand(0, 1);

  BenchConfig cfg;
  std::string format = "csv";
  std::string out_path = "-";
  bool quiet = false;
  const std::map<std::string, Scheme> schemes = {
      {"verkle", Scheme::verkle}, {"merkle-naive", Scheme::merkle_naive}, {"merkle-snark", Scheme::merkle_snark}};
  app.add_option("--scheme", cfg.scheme, "verkle | merkle-naive | merkle-snark")
      ->transform(CLI::CheckedTransformer(schemes, CLI::ignore_case));
  app.add_option("--min-log-leaves", cfg.min_log_leaves, "smallest tree is 2^this leaves")->capture_default_str();
  app.add_option("--max-log-leaves", cfg.max_log_leaves, "largest tree is 2^this leaves (max 32)")->capture_default_str();
  app.add_option("--keys", cfg.keys, "keys proven per tree (all leaves if fewer)")->capture_default_str();
  app.add_option("--reps", cfg.reps, "repetitions per tree size")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for trees and key selection")->capture_default_str();
  app.add_option("--time-budget", cfg.time_budget_s, "seconds allowed per repetition")->capture_default_str();
  app.add_option("--mem-budget", cfg.mem_budget_bytes, "bytes allowed for the peak-memory estimate")
      ->capture_default_str();
  app.add_option("--parallel", cfg.parallel, "repetitions run concurrently")->capture_default_str();
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", out_path, "output file, - for stdout")->capture_default_str();
  app.add_flag("-q,--quiet", quiet, "no progress lines on stderr");

  SizeModel model;
  const std::map<std::string, SizeScheme> size_schemes = {{"verkle", SizeScheme::verkle},
                                                          {"naive-merkle", SizeScheme::naive_merkle},
                                                          {"snark-merkle", SizeScheme::snark_merkle}};
  auto* size = app.add_subcommand("size", "analytic witness size, no trees built");
  size->add_option("--scheme", model.scheme, "verkle | naive-merkle | snark-merkle")
      ->transform(CLI::CheckedTransformer(size_schemes, CLI::ignore_case));
  size->add_option("--keys", model.keys)->capture_default_str();
  size->add_option("--commitments", model.commitments, "verkle: commitments in the witness")->capture_default_str();
  size->add_option("--multiproof-bytes", model.multiproof_bytes)->capture_default_str();
  size->add_option("--proof-bytes", model.proof_bytes, "snark-merkle: bytes per proof")->capture_default_str();
  size->add_option("--pre-post", model.pre_post, "snark-merkle: prove each key before and after")
      ->capture_default_str();
  size->add_option("--arity", model.arity, "naive-merkle: tree arity")->capture_default_str();
  size->add_option("--leaves", model.leaf_count, "naive-merkle: leaves in the tree")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (size->parsed()) return run_size(model);

    cfg.validate();
    std::ofstream file;
    if (out_path != "-") {
      file.open(out_path, std::ios::binary | std::ios::trunc);
      if (!file) throw std::runtime_error("cannot open " + out_path + " for writing");
    }
    std::ostream& out = out_path == "-" ? std::cout : file;

    BenchResult res = run(cfg, quiet ? nullptr : &std::cerr);
    if (format == "csv") {
      out << to_csv(res.records);
    } else {
      out << to_json(res.records).dump(2) << "\n";
    }
    out.flush();
    if (!out) throw std::runtime_error("write to " + out_path + " failed");
    return res.truncated ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "witbench: " << e.what() << "\n";
    return 1;
  }
}
