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


#pragma once

#include <charconv>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "witbench/bench/config.hpp"

namespace witbench::bench {

/// ok: every repetition ran. time_budget: a repetition overran the time
/// budget and the sweep stopped here. mem_budget: the memory estimate
/// exceeded the budget and nothing ran.
enum class RunStatus { ok, time_budget, mem_budget };

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::ok: return "ok";
    case RunStatus::time_budget: return "time_budget";
    case RunStatus::mem_budget: return "mem_budget";
  }
  return "?";
}

inline std::optional<RunStatus> parse_status(std::string_view s) {
  for (auto v : {RunStatus::ok, RunStatus::time_budget, RunStatus::mem_budget}) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

/// One row per (scheme, leaf count). Per-run vectors hold completed
/// repetitions in order; means are floors of their averages.
struct BenchRecord {
  Scheme scheme = Scheme::verkle;
  std::uint64_t leaves = 0;
  std::uint64_t keys_proven = 0;
  RunStatus status = RunStatus::ok;
  std::vector<std::uint64_t> witness_bytes;
  std::vector<std::uint64_t> modeled_bytes;
  std::vector<std::uint64_t> prove_ns;
  std::vector<std::uint64_t> verify_ns;
  std::uint64_t peak_mem_estimate = 0;
  std::uint64_t seed = 0;
  std::int64_t timestamp_ms = 0;

  std::size_t reps_completed() const { return witness_bytes.size(); }

  static std::uint64_t mean(const std::vector<std::uint64_t>& v) {
    if (v.empty()) return 0;
    unsigned __int128 s = 0;
    for (auto x : v) s += x;
    return std::uint64_t(s / v.size());
  }

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

/// Column order of the CSV output. Columns marked timing vary between runs
/// with the same seed; all others are deterministic.
struct Column {
  const char* name;
  bool timing;
};

inline constexpr Column kColumns[] = {
    {"scheme", false},           {"leaves", false},           {"keys_proven", false},
    {"reps_completed", false},   {"status", false},           {"witness_bytes_mean", false},
    {"modeled_bytes_mean", false}, {"prove_ns_mean", true},   {"verify_ns_mean", true},
    {"peak_mem_estimate", false}, {"seed", false},            {"timestamp_ms", true},
    {"witness_bytes_runs", false}, {"modeled_bytes_runs", false}, {"prove_ns_runs", true},
    {"verify_ns_runs", true},
};
inline constexpr std::size_t kColumnCount = sizeof(kColumns) / sizeof(kColumns[0]);

namespace detail {

inline std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(v[i]);
  }
  return s;
}

template <class T>
T parse_int(std::string_view s) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw std::invalid_argument("bad integer in bench csv: " + std::string(s));
  return v;
}

inline std::vector<std::uint64_t> split_ints(std::string_view s) {
  std::vector<std::uint64_t> out;
  while (!s.empty()) {
    auto pos = s.find(';');
    out.push_back(parse_int<std::uint64_t>(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

inline std::vector<std::string> cells(const BenchRecord& r) {
  return {to_string(r.scheme),
          std::to_string(r.leaves),
          std::to_string(r.keys_proven),
          std::to_string(r.reps_completed()),
          to_string(r.status),
          std::to_string(BenchRecord::mean(r.witness_bytes)),
          std::to_string(BenchRecord::mean(r.modeled_bytes)),
          std::to_string(BenchRecord::mean(r.prove_ns)),
          std::to_string(BenchRecord::mean(r.verify_ns)),
          std::to_string(r.peak_mem_estimate),
          std::to_string(r.seed),
          std::to_string(r.timestamp_ms),
          join(r.witness_bytes),
          join(r.modeled_bytes),
          join(r.prove_ns),
          join(r.verify_ns)};
}

}  // namespace detail

/// Header line plus one line per record, comma separated, '\n' endings;
/// per-run columns are ';'-separated lists. With include_timing false the
/// timing columns are left out (used for determinism comparisons).
inline std::string to_csv(const std::vector<BenchRecord>& records, bool include_timing = true) {
  std::string out;
  auto emit = [&](auto cell_of) {
    bool first = true;
    for (std::size_t c = 0; c < kColumnCount; ++c) {
      if (!include_timing && kColumns[c].timing) continue;
      if (!first) out += ',';
      out += cell_of(c);
      first = false;
    }
    out += '\n';
  };
  emit([](std::size_t c) { return std::string(kColumns[c].name); });
  for (const auto& r : records) {
    auto cs = detail::cells(r);
    emit([&](std::size_t c) { return cs[c]; });
  }
  return out;
}

/// Inverse of to_csv with timing columns. Throws std::invalid_argument on a
/// header mismatch, a malformed cell or means that disagree with the runs.
inline std::vector<BenchRecord> parse_csv(std::string_view text) {
  std::vector<BenchRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty bench csv");
  std::string header;
  for (std::size_t c = 0; c < kColumnCount; ++c) header += (c ? "," : "") + std::string(kColumns[c].name);
  if (line != header) throw std::invalid_argument("bench csv header mismatch");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest = line;
    while (true) {
      auto pos = rest.find(',');
      f.push_back(rest.substr(0, pos));
      if (pos == std::string_view::npos) break;
      rest.remove_prefix(pos + 1);
    }
    if (f.size() != kColumnCount) throw std::invalid_argument("bench csv row has wrong column count");
    BenchRecord r;
    auto scheme = parse_scheme(f[0]);
    auto status = parse_status(f[4]);
    if (!scheme || !status) throw std::invalid_argument("bench csv: unknown scheme or status");
    r.scheme = *scheme;
    r.leaves = detail::parse_int<std::uint64_t>(f[1]);
    r.keys_proven = detail::parse_int<std::uint64_t>(f[2]);
    r.status = *status;
    r.peak_mem_estimate = detail::parse_int<std::uint64_t>(f[9]);
    r.seed = detail::parse_int<std::uint64_t>(f[10]);
    r.timestamp_ms = detail::parse_int<std::int64_t>(f[11]);
    r.witness_bytes = detail::split_ints(f[12]);
    r.modeled_bytes = detail::split_ints(f[13]);
    r.prove_ns = detail::split_ints(f[14]);
    r.verify_ns = detail::split_ints(f[15]);
    auto cs = detail::cells(r);
    for (std::size_t c : {3, 5, 6, 7, 8}) {
      if (cs[c] != f[c]) throw std::invalid_argument("bench csv: column " + std::string(kColumns[c].name) + " disagrees with runs");
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline nlohmann::json to_json(const std::vector<BenchRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    arr.push_back({{"scheme", to_string(r.scheme)},
                   {"leaves", r.leaves},
                   {"keys_proven", r.keys_proven},
                   {"reps_completed", r.reps_completed()},
                   {"status", to_string(r.status)},
                   {"witness_bytes_mean", BenchRecord::mean(r.witness_bytes)},
                   {"modeled_bytes_mean", BenchRecord::mean(r.modeled_bytes)},
                   {"prove_ns_mean", BenchRecord::mean(r.prove_ns)},
                   {"verify_ns_mean", BenchRecord::mean(r.verify_ns)},
                   {"peak_mem_estimate", r.peak_mem_estimate},
                   {"seed", r.seed},
                   {"timestamp_ms", r.timestamp_ms},
                   {"witness_bytes_runs", r.witness_bytes},
                   {"modeled_bytes_runs", r.modeled_bytes},
                   {"prove_ns_runs", r.prove_ns},
                   {"verify_ns_runs", r.verify_ns}});
  }
  return arr;
}

/// Throws nlohmann::json::exception or std::invalid_argument on bad input.
inline std::vector<BenchRecord> parse_json(const nlohmann::json& arr) {
  std::vector<BenchRecord> out;
  for (const auto& o : arr) {
    BenchRecord r;
    auto scheme = parse_scheme(o.at("scheme").get<std::string>());
    auto status = parse_status(o.at("status").get<std::string>());
    if (!scheme || !status) throw std::invalid_argument("bench json: unknown scheme or status");
    r.scheme = *scheme;
    r.status = *status;
    r.leaves = o.at("leaves").get<std::uint64_t>();
    r.keys_proven = o.at("keys_proven").get<std::uint64_t>();
    r.peak_mem_estimate = o.at("peak_mem_estimate").get<std::uint64_t>();
    r.seed = o.at("seed").get<std::uint64_t>();
    r.timestamp_ms = o.at("timestamp_ms").get<std::int64_t>();
    r.witness_bytes = o.at("witness_bytes_runs").get<std::vector<std::uint64_t>>();
    r.modeled_bytes = o.at("modeled_bytes_runs").get<std::vector<std::uint64_t>>();
    r.prove_ns = o.at("prove_ns_runs").get<std::vector<std::uint64_t>>();
    r.verify_ns = o.at("verify_ns_runs").get<std::vector<std::uint64_t>>();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace witbench::bench
