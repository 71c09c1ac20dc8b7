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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "witbench/algebra/field.hpp"
#include "witbench/algebra/group.hpp"

namespace witbench {

/// Outcome of a verification. `malformed` means the input could not be
/// parsed or is structurally inconsistent; `reject` means it parsed but
/// failed a cryptographic or semantic check.
enum class Verdict { accept, reject, malformed };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::accept: return "accept";
    case Verdict::reject: return "reject";
    case Verdict::malformed: return "malformed";
  }
  return "?";
}

using Bytes = std::vector<std::uint8_t>;

/// Appends little-endian integers, field elements and points to a buffer.
class ByteWriter {
 public:
  explicit ByteWriter(Bytes& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(std::uint8_t(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(std::uint8_t(v >> (8 * i)));
  }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void field(const Fr& v) {
    auto b = v.to_bytes();
    bytes(b);
  }
  void point(const GroupElement& p) {
    auto b = p.to_bytes();
    bytes(b);
  }

 private:
  Bytes& out_;
};

/// Bounds-checked cursor; every read returns nullopt past the end or on a
/// non-canonical encoding.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::size_t remaining() const { return in_.size() - pos_; }
  bool done() const { return pos_ == in_.size(); }

  std::optional<std::span<const std::uint8_t>> take(std::size_t n) {
    if (remaining() < n) return std::nullopt;
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::optional<std::uint8_t> u8() {
    auto s = take(1);
    if (!s) return std::nullopt;
    return (*s)[0];
  }
  std::optional<std::uint32_t> u32() {
    auto s = take(4);
    if (!s) return std::nullopt;
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t((*s)[i]) << (8 * i);
    return v;
  }
  std::optional<std::uint64_t> u64() {
    auto s = take(8);
    if (!s) return std::nullopt;
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t((*s)[i]) << (8 * i);
    return v;
  }
  std::optional<Fr> field() {
    auto s = take(Fr::kBytes);
    if (!s) return std::nullopt;
    return Fr::from_bytes(*s);
  }
  std::optional<GroupElement> point() {
    auto s = take(GroupElement::kBytes);
    if (!s) return std::nullopt;
    return GroupElement::from_bytes(*s);
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace witbench
