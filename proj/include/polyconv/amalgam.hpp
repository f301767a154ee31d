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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polyconv/set_function.hpp"

namespace polyconv {

inline constexpr int kMaxAmalgamGround = 8;

/// Union ground set of two extensions: the first one's labels in order, then
/// the labels only the second one has.
inline GroundSet union_ground(const GroundSet& n1, const GroundSet& n2) {
  std::vector<std::string> extra;
  for (const auto& l : n2.labels()) {
    if (!n1.find(l)) extra.push_back(l);
  }
  return n1.with_appended(extra);
}

struct AmalgamSearchStats {
  std::uint64_t nodes = 0;
  std::size_t free_subsets = 0;
};

namespace detail {

struct AmalgamProblem {
  GroundSet ground;
  std::vector<std::int64_t> value;
  std::vector<char> fixed;
  std::vector<Mask> free;  // canonical order
};

inline AmalgamProblem setup_amalgam(const SetFunction& f1, const SetFunction& f2) {
  for (const SetFunction* f : {&f1, &f2}) {
    const ValidationReport report = validate_polymatroid(*f);
    if (!report.valid()) throw Error(ErrorCode::kNotAPolymatroid, "amalgam search needs polymatroid inputs");
    if (!report.integer_valued) throw Error(ErrorCode::kInvalidArgument, "amalgam search needs integer-valued inputs");
  }
  AmalgamProblem p;
  p.ground = union_ground(f1.ground(), f2.ground());
  if (p.ground.size() > kMaxAmalgamGround) {
    throw Error(ErrorCode::kTooLarge, "amalgam search is limited to " + std::to_string(kMaxAmalgamGround) + " elements");
  }
  const std::vector<int> pos1 = *f1.ground().positions_in(p.ground);
  const std::vector<int> pos2 = *f2.ground().positions_in(p.ground);
  const std::size_t count = p.ground.subset_count();
  p.value.assign(count, 0);
  p.fixed.assign(count, 0);
  for (std::size_t m = 0; m < f1.ground().subset_count(); ++m) {
    const Mask u = scatter_bits(static_cast<Mask>(m), pos1);
    p.value[u] = f1(static_cast<Mask>(m)).num();
    p.fixed[u] = 1;
  }
  for (std::size_t m = 0; m < f2.ground().subset_count(); ++m) {
    const Mask u = scatter_bits(static_cast<Mask>(m), pos2);
    const std::int64_t v = f2(static_cast<Mask>(m)).num();
    if (p.fixed[u] && p.value[u] != v) {
      throw Error(ErrorCode::kGroundOverlapMismatch,
                  "extensions disagree on " + p.ground.format(u) + ": " + std::to_string(p.value[u]) + " vs " + std::to_string(v));
    }
    p.value[u] = v;
    p.fixed[u] = 1;
  }
  for (Mask m : canonical_subsets(p.ground.size())) {
    if (!p.fixed[m]) p.free.push_back(m);
  }
  return p;
}

inline SetFunction amalgam_to_function(const AmalgamProblem& p) {
  std::vector<Ratio> table(p.value.begin(), p.value.end());
  return validated(SetFunction(p.ground, std::move(table)));
}

}  // namespace detail

inline std::int64_t default_amalgam_bound(const SetFunction& f1, const SetFunction& f2) {
  return (f1(f1.ground().full()) + f2(f2.ground().full())).num();
}

/// Depth-first search for an integer polymatroid on N1 ∪ N2 that extends
/// both inputs, with every free subset valued in 0..bound.
///
/// Free subsets (those in neither ground set) are assigned in canonical order
/// with ascending values. Each value is restricted to the interval allowed by
/// the monotonicity and local submodularity constraints whose other subsets
/// are already assigned, so every constraint is checked when its last subset
/// receives a value. Returns the first amalgam found.
inline std::optional<SetFunction> amalgam_search_integer(const SetFunction& f1, const SetFunction& f2,
                                                         std::optional<std::int64_t> bound = std::nullopt,
                                                         AmalgamSearchStats* stats = nullptr) {
  detail::AmalgamProblem p = detail::setup_amalgam(f1, f2);
  const std::int64_t cap = bound.value_or(default_amalgam_bound(f1, f2));
  const int n = p.ground.size();
  std::vector<char> known = p.fixed;
  std::vector<std::int64_t>& v = p.value;
  AmalgamSearchStats local;
  local.free_subsets = p.free.size();

  auto range = [&](Mask x, std::int64_t& lo, std::int64_t& hi) {
    lo = 0;
    hi = cap;
    for (int i = 0; i < n; ++i) {
      const Mask bi = bit(i);
      if (contains(x, i)) {
        const Mask xi = x & ~bi;
        if (known[xi]) lo = std::max(lo, v[xi]);
        for (int j = i + 1; j < n; ++j) {
          if (!contains(x, j)) continue;
          const Mask xj = x & ~bit(j);
          const Mask a = xi & ~bit(j);
          if (known[a] && known[xi] && known[xj]) hi = std::min(hi, v[xi] + v[xj] - v[a]);
        }
        for (int j = 0; j < n; ++j) {
          if (contains(x, j)) continue;
          const Mask aj = xi | bit(j);
          const Mask xj = x | bit(j);
          if (known[xi] && known[aj] && known[xj]) lo = std::max(lo, v[xi] + v[xj] - v[aj]);
        }
      } else {
        const Mask xi = x | bi;
        if (known[xi]) hi = std::min(hi, v[xi]);
        for (int j = i + 1; j < n; ++j) {
          if (contains(x, j)) continue;
          const Mask xj = x | bit(j);
          const Mask xij = xi | bit(j);
          if (known[xi] && known[xj] && known[xij]) hi = std::min(hi, v[xi] + v[xj] - v[xij]);
        }
      }
    }
  };

  // Iterative DFS; next_value[k] is the next value to try for free[k].
  const std::size_t depth_total = p.free.size();
  std::vector<std::int64_t> next_value(depth_total, 0);
  std::vector<std::int64_t> upper(depth_total, -1);
  std::size_t depth = 0;
  bool entering = true;
  while (true) {
    if (depth == depth_total) {
      if (stats) *stats = local;
      return detail::amalgam_to_function(p);
    }
    const Mask x = p.free[depth];
    if (entering) {
      std::int64_t lo = 0;
      std::int64_t hi = 0;
      range(x, lo, hi);
      next_value[depth] = lo;
      upper[depth] = hi;
      ++local.nodes;
    }
    if (next_value[depth] <= upper[depth]) {
      v[x] = next_value[depth]++;
      known[x] = 1;
      ++depth;
      entering = true;
      continue;
    }
    known[x] = 0;
    if (depth == 0) break;
    --depth;
    known[p.free[depth]] = 0;
    entering = false;
  }
  if (stats) *stats = local;
  return std::nullopt;
}

}  // namespace polyconv
