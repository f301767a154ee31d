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
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polyconv/cyclic.hpp"
#include "polyconv/set_function.hpp"

namespace polyconv {

/// Explicit family of subsets of a ground set, ordered by inclusion, in
/// which every pair has a unique greatest common lower bound (meet) and a
/// unique least common upper bound (join), each member carrying a
/// non-negative rank.
class RankedLattice {
 public:
  RankedLattice() = default;

  const GroundSet& ground() const { return ground_; }
  const std::vector<Mask>& members() const { return members_; }
  const std::vector<Ratio>& ranks() const { return ranks_; }
  std::size_t size() const { return members_.size(); }

  std::optional<std::size_t> find(Mask m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(Mask m) const { return index_.count(m) != 0; }

  const Ratio& rank(Mask m) const {
    auto i = find(m);
    if (!i) throw Error(ErrorCode::kInvalidArgument, ground_.format(m) + " is not a lattice member");
    return ranks_[*i];
  }

  std::size_t meet_index(std::size_t a, std::size_t b) const { return meet_[a * size() + b]; }
  std::size_t join_index(std::size_t a, std::size_t b) const { return join_[a * size() + b]; }
  Mask meet(Mask a, Mask b) const { return members_[meet_index(*find(a), *find(b))]; }
  Mask join(Mask a, Mask b) const { return members_[join_index(*find(a), *find(b))]; }

  friend RankedLattice make_ranked_lattice(const GroundSet& ground, std::vector<std::pair<Mask, Ratio>> entries);

 private:
  GroundSet ground_;
  std::vector<Mask> members_;  // canonical order
  std::vector<Ratio> ranks_;
  std::unordered_map<Mask, std::size_t> index_;
  std::vector<std::size_t> meet_;
  std::vector<std::size_t> join_;
};

namespace detail {

// Greatest member below `bound` (lower == true) or least member above it.
// Returns the member index or throws with the offending pair.
inline std::size_t unique_bound(const std::vector<Mask>& members, const std::unordered_map<Mask, std::size_t>& index,
                                Mask a, Mask b, bool lower, const GroundSet& ground) {
  const Mask target = lower ? (a & b) : (a | b);
  if (auto it = index.find(target); it != index.end()) return it->second;
  auto is_bound = [&](Mask z) { return lower ? is_subset(z, target) : is_subset(target, z); };
  std::optional<std::size_t> best;
  bool tie = false;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const Mask z = members[k];
    if (!is_bound(z)) continue;
    if (!best) {
      best = k;
      tie = false;
      continue;
    }
    const int pz = popcount(z);
    const int pb = popcount(members[*best]);
    if (lower ? pz > pb : pz < pb) {
      best = k;
      tie = false;
    } else if (pz == pb) {
      tie = true;
    }
  }
  const std::string pair = ground.format(a) + ", " + ground.format(b);
  if (!best) {
    throw Error(lower ? ErrorCode::kNoLowerBound : ErrorCode::kNoUpperBound,
                std::string("no common ") + (lower ? "lower" : "upper") + " bound for " + pair);
  }
  if (tie) throw Error(ErrorCode::kAmbiguousBound, "several extremal common bounds for " + pair);
  const Mask winner = members[*best];
  for (const Mask z : members) {
    if (is_bound(z) && !(lower ? is_subset(z, winner) : is_subset(winner, z))) {
      throw Error(ErrorCode::kAmbiguousBound, "common bounds of " + pair + " have no " + (lower ? "greatest" : "least") +
                                                  " element");
    }
  }
  return *best;
}

}  // namespace detail

/// Validates the family and builds meet/join tables by unique-bound search.
inline RankedLattice make_ranked_lattice(const GroundSet& ground, std::vector<std::pair<Mask, Ratio>> entries) {
  if (entries.empty()) throw Error(ErrorCode::kEmptyFamily, "ranked lattice has no members");
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return canonical_less(x.first, y.first); });
  RankedLattice rl;
  rl.ground_ = ground;
  for (const auto& [mask, rank] : entries) {
    if (!is_subset(mask, ground.full())) throw Error(ErrorCode::kInvalidArgument, "member outside the ground set");
    if (!rl.members_.empty() && rl.members_.back() == mask) {
      throw Error(ErrorCode::kInvalidArgument, ground.format(mask) + " listed twice");
    }
    if (rank.sign() < 0) throw Error(ErrorCode::kNegativeRank, ground.format(mask) + " has negative rank");
    rl.index_.emplace(mask, rl.members_.size());
    rl.members_.push_back(mask);
    rl.ranks_.push_back(rank);
  }
  const std::size_t k = rl.members_.size();
  rl.meet_.resize(k * k);
  rl.join_.resize(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      const Mask ma = rl.members_[a];
      const Mask mb = rl.members_[b];
      std::size_t lo;
      std::size_t hi;
      if (is_subset(ma, mb)) {
        lo = a;
        hi = b;
      } else if (is_subset(mb, ma)) {
        lo = b;
        hi = a;
      } else {
        hi = detail::unique_bound(rl.members_, rl.index_, ma, mb, false, ground);
        lo = detail::unique_bound(rl.members_, rl.index_, ma, mb, true, ground);
      }
      rl.meet_[a * k + b] = rl.meet_[b * k + a] = lo;
      rl.join_[a * k + b] = rl.join_[b * k + a] = hi;
    }
  }
  return rl;
}

/// Every subset with the given rank function as lattice rank.
inline RankedLattice powerset_lattice(const SetFunction& f) {
  std::vector<std::pair<Mask, Ratio>> entries;
  for (std::size_t m = 0; m < f.ground().subset_count(); ++m) entries.emplace_back(static_cast<Mask>(m), f(static_cast<Mask>(m)));
  return make_ranked_lattice(f.ground(), std::move(entries));
}

struct ConditionCheck {
  std::string name;
  bool pass = true;
  std::optional<Mask> first;
  std::optional<Mask> second;
  std::string detail;
};

inline constexpr std::array<const char*, 5> kEmbeddingConditionNames = {
    "intersection_with_base", "cyclic_flats_present", "rank_monotone_on_chains", "rank_matches_base",
    "measure_matches_singletons"};

/// Outcome of the convolution preconditions. Failures are data, each with a
/// concrete witness member or pair.
struct ConditionReport {
  ConditionCheck incomparable{"incomparable_pairs"};
  ConditionCheck chain{"comparable_pairs"};
  std::optional<std::array<ConditionCheck, 5>> embedding;

  bool all_pass() const {
    if (!incomparable.pass || !chain.pass) return false;
    if (embedding) {
      for (const auto& c : *embedding) {
        if (!c.pass) return false;
      }
    }
    return true;
  }
};

inline void require_same_ground(const RankedLattice& rl, const Measure& mu) {
  if (rl.ground() != mu.ground()) throw Error(ErrorCode::kGroundMismatch, "measure and lattice use different ground sets");
}

/// Checks, over all member pairs:
///  * incomparable Z1, Z2: r(Z1) + r(Z2) >= r(Z1∧Z2) + r(Z1∨Z2) + μ(Z1∩Z2 - Z1∧Z2);
///  * Z1 ⊊ Z2: 0 <= r(Z2) - r(Z1) <= μ(Z2 - Z1).
/// With `embed` (a validated polymatroid whose labels all occur in the lattice
/// ground set) the five conditions under which the convolution reproduces the
/// base polymatroid are checked as well.
inline ConditionReport check_conditions(const RankedLattice& rl, const Measure& mu, const SetFunction* embed = nullptr) {
  require_same_ground(rl, mu);
  const GroundSet& g = rl.ground();
  const std::vector<Ratio> mu_table = mu.subset_table();
  const auto& members = rl.members();
  const auto& ranks = rl.ranks();
  ConditionReport report;
  auto fail = [&](ConditionCheck& c, Mask a, std::optional<Mask> b, std::string detail) {
    if (!c.pass) return;
    c.pass = false;
    c.first = a;
    c.second = b;
    c.detail = std::move(detail);
  };

  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const Mask a = members[i];
      const Mask b = members[j];
      if (is_subset(a, b) || is_subset(b, a)) {
        const std::size_t lo = is_subset(a, b) ? i : j;
        const std::size_t hi = lo == i ? j : i;
        const Ratio diff = ranks[hi] - ranks[lo];
        const Ratio room = mu_table[members[hi] & ~members[lo]];
        if (diff.sign() < 0 || diff > room) {
          fail(report.chain, members[lo], members[hi],
               "r(" + g.compact(members[hi]) + ") - r(" + g.compact(members[lo]) + ") = " + diff.to_string() +
                   " outside [0, " + room.to_string() + "]");
        }
      } else {
        const std::size_t lo = rl.meet_index(i, j);
        const std::size_t hi = rl.join_index(i, j);
        const Ratio lhs = ranks[i] + ranks[j];
        const Ratio rhs = ranks[lo] + ranks[hi] + mu_table[(a & b) & ~members[lo]];
        if (lhs < rhs) {
          fail(report.incomparable, a, b,
               "r(" + g.compact(a) + ") + r(" + g.compact(b) + ") = " + lhs.to_string() + " < " + rhs.to_string());
        }
      }
    }
  }

  if (embed == nullptr) return report;
  const SetFunction& f = *embed;
  require_polymatroid(f, "check_conditions");
  auto pos = f.ground().positions_in(g);
  if (!pos) throw Error(ErrorCode::kGroundMismatch, "base polymatroid labels are not all in the lattice ground set");
  const Mask base = scatter_bits(f.ground().full(), *pos);
  std::array<ConditionCheck, 5> emb;
  for (std::size_t c = 0; c < emb.size(); ++c) emb[c].name = kEmbeddingConditionNames[c];

  for (std::size_t i = 0; i < members.size(); ++i) {
    const Mask z = members[i];
    if (!rl.contains(z & base)) fail(emb[0], z, std::nullopt, g.format(z & base) + " missing from the lattice");
    if (is_subset(z, base) && ranks[i] != f(gather_bits(z, *pos))) {
      fail(emb[3], z, std::nullopt,
           "r(" + g.compact(z) + ") = " + ranks[i].to_string() + " but f = " + f(gather_bits(z, *pos)).to_string());
    }
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (i != j && is_subset(z, members[j]) && ranks[j] < ranks[i]) {
        fail(emb[2], z, members[j], "rank decreases from " + g.compact(z) + " to " + g.compact(members[j]));
      }
    }
  }
  const CyclicFlatLattice cyclic = cyclic_lattice(f);
  for (Mask c : cyclic.members()) {
    const Mask embedded = scatter_bits(c, *pos);
    if (!rl.contains(embedded)) fail(emb[1], embedded, std::nullopt, "cyclic flat " + g.format(embedded) + " missing");
  }
  for (int a = 0; a < f.size(); ++a) {
    const int at = (*pos)[static_cast<std::size_t>(a)];
    if (mu.weight(at) != f(bit(a))) {
      fail(emb[4], bit(at), std::nullopt,
           "μ(" + g.label(at) + ") = " + mu.weight(at).to_string() + " but f = " + f(bit(a)).to_string());
    }
  }
  report.embedding = std::move(emb);
  return report;
}

/// r*μ together with, for each subset A, the canonical-first member Z that
/// attains min r(Z) + μ(A - Z).
struct ConvolutionResult {
  SetFunction value;
  std::vector<Mask> witness;  // indexed by subset mask
  Ratio raw_empty_value;      // min over Z of r(Z); the stored table keeps 0
};

inline ConvolutionResult convolve(const RankedLattice& rl, const Measure& mu) {
  require_same_ground(rl, mu);
  const std::vector<Ratio> mu_table = mu.subset_table();
  const std::size_t count = rl.ground().subset_count();
  std::vector<Ratio> table(count);
  std::vector<Mask> witness(count);
  const auto& members = rl.members();
  const auto& ranks = rl.ranks();
  Ratio raw_empty;
  for (std::size_t a = 0; a < count; ++a) {
    const Mask set = static_cast<Mask>(a);
    std::size_t best = 0;
    Ratio best_value = ranks[0] + mu_table[set & ~members[0]];
    for (std::size_t k = 1; k < members.size(); ++k) {
      const Ratio v = ranks[k] + mu_table[set & ~members[k]];
      if (v < best_value) {
        best_value = v;
        best = k;
      }
    }
    witness[a] = members[best];
    if (a == 0) {
      raw_empty = best_value;
    } else {
      table[a] = best_value;
    }
  }
  return {SetFunction(rl.ground(), std::move(table)), std::move(witness), raw_empty};
}

}  // namespace polyconv
