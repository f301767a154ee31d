// Copyright 2026 The polyconv Authors.
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

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyconv/error.hpp"

namespace polyconv {

/// Subset of a ground set: bit i is element i.
using Mask = std::uint32_t;

inline constexpr int kMaxGroundSize = 20;

inline int popcount(Mask m) { return std::popcount(m); }
inline bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline bool contains(Mask set, int element) { return (set >> element) & 1U; }
inline Mask bit(int element) { return Mask{1} << element; }
inline Mask full_mask(int n) { return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// Canonical subset order: by cardinality, then by mask value.
inline bool canonical_less(Mask a, Mask b) {
  const int pa = popcount(a);
  const int pb = popcount(b);
  return pa != pb ? pa < pb : a < b;
}

struct CanonicalLess {
  bool operator()(Mask a, Mask b) const { return canonical_less(a, b); }
};

/// All subsets of an n-element ground set in canonical order.
inline std::vector<Mask> canonical_subsets(int n) {
  std::vector<Mask> out(std::size_t{1} << n);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Mask>(i);
  std::stable_sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

inline void sort_canonical(std::vector<Mask>& masks) { std::sort(masks.begin(), masks.end(), CanonicalLess{}); }

/// Calls fn(sub) for every subset of `set`, including the empty set and
/// `set` itself, in increasing mask order.
template <class Fn>
void for_each_subset(Mask set, Fn&& fn) {
  Mask sub = 0;
  while (true) {
    fn(sub);
    if (sub == set) break;
    sub = (sub - set) & set;
  }
}

/// Element indices of a mask, ascending.
inline std::vector<int> elements_of(Mask m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

/// Scatters the low bits of `packed` onto the positions listed in `positions`.
inline Mask scatter_bits(Mask packed, std::span<const int> positions) {
  Mask out = 0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if ((packed >> i) & 1U) out |= bit(positions[i]);
  }
  return out;
}

/// Inverse of scatter_bits restricted to `positions`.
inline Mask gather_bits(Mask spread, std::span<const int> positions) {
  Mask out = 0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (contains(spread, positions[i])) out |= bit(static_cast<int>(i));
  }
  return out;
}

/// Ordered list of distinct element labels. Index i of the list is bit i of
/// every Mask over this ground set.
class GroundSet {
 public:
  GroundSet() = default;

  explicit GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (static_cast<int>(labels_.size()) > kMaxGroundSize) {
      throw Error(ErrorCode::kTooLarge, "ground set has " + std::to_string(labels_.size()) +
                                            " elements; the limit is " + std::to_string(kMaxGroundSize));
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].empty()) throw Error(ErrorCode::kInvalidArgument, "empty element label");
      for (std::size_t j = 0; j < i; ++j) {
        if (labels_[i] == labels_[j]) throw Error(ErrorCode::kDuplicateLabel, "label '" + labels_[i] + "' repeated");
      }
    }
  }

  int size() const { return static_cast<int>(labels_.size()); }
  Mask full() const { return full_mask(size()); }
  std::size_t subset_count() const { return std::size_t{1} << size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }

  std::optional<int> find(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == label) return static_cast<int>(i);
    }
    return std::nullopt;
  }

  int index_of(const std::string& label) const {
    if (auto i = find(label)) return *i;
    throw Error(ErrorCode::kUnknownElement, "element '" + label + "' is not in the ground set");
  }

  Mask mask_of(std::span<const std::string> names) const {
    Mask m = 0;
    for (const auto& name : names) m |= bit(index_of(name));
    return m;
  }

  Mask mask_of(std::initializer_list<std::string> names) const {
    return mask_of(std::span<const std::string>(names.begin(), names.size()));
  }

  std::vector<std::string> labels_of(Mask m) const {
    std::vector<std::string> out;
    for (int i : elements_of(m)) out.push_back(label(i));
    return out;
  }

  /// "{a b}" style rendering used by the text formats.
  std::string format(Mask m) const {
    std::string out = "{";
    bool first = true;
    for (int i : elements_of(m)) {
      if (!first) out += ' ';
      out += label(i);
      first = false;
    }
    out += '}';
    return out;
  }

  /// Compact rendering ("ab", "∅" shown as "{}") for diagnostics.
  std::string compact(Mask m) const {
    if (m == 0) return "{}";
    std::string out;
    for (int i : elements_of(m)) out += label(i);
    return out;
  }

  /// Returns a label not present here, trying `preferred` first and then
  /// `preferred` followed by 1, 2, ...
  std::string fresh_label(const std::string& preferred) const {
    if (!find(preferred)) return preferred;
    for (int k = 1;; ++k) {
      std::string candidate = preferred + std::to_string(k);
      if (!find(candidate)) return candidate;
    }
  }

  GroundSet with_appended(const std::vector<std::string>& extra) const {
    std::vector<std::string> all = labels_;
    all.insert(all.end(), extra.begin(), extra.end());
    return GroundSet(std::move(all));
  }

  /// Positions in `other` of this ground set's labels; nullopt if some label
  /// is missing from `other`.
  std::optional<std::vector<int>> positions_in(const GroundSet& other) const {
    std::vector<int> pos;
    pos.reserve(labels_.size());
    for (const auto& l : labels_) {
      auto i = other.find(l);
      if (!i) return std::nullopt;
      pos.push_back(*i);
    }
    return pos;
  }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  std::vector<std::string> labels_;
};

}  // namespace polyconv
