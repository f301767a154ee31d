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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyconv/set_function.hpp"

namespace polyconv {

using FlatPair = std::pair<Mask, Mask>;

/// Explicit modular cut together with its principality analysis.
///
/// For a non-principal cut, `delta` is the least modular defect among member
/// pairs whose intersection lies outside the cut, and `witness_pair` is the
/// canonical-first pair attaining it (first member canonically smaller).
struct ModularCut {
  std::vector<Mask> members;  // canonical order
  bool principal = true;
  std::optional<Ratio> delta;
  std::optional<FlatPair> generators;
  std::optional<FlatPair> witness_pair;

  bool contains(Mask m) const { return std::binary_search(members.begin(), members.end(), m, CanonicalLess{}); }
  std::size_t size() const { return members.size(); }
};

struct CutCheck {
  bool ok = true;
  std::string diagnostic;
  std::optional<Mask> first;
  std::optional<Mask> second;

  explicit operator bool() const { return ok; }
};

/// Checks that every member is a flat, that the family is closed upward
/// among flats, and that modular member pairs keep their intersection.
inline CutCheck is_modular_cut(const SetFunction& f, std::vector<Mask> family) {
  require_polymatroid(f, "is_modular_cut");
  sort_canonical(family);
  family.erase(std::unique(family.begin(), family.end()), family.end());
  const GroundSet& g = f.ground();
  auto in_family = [&](Mask m) { return std::binary_search(family.begin(), family.end(), m, CanonicalLess{}); };
  CutCheck check;
  for (Mask m : family) {
    if (!detail::is_flat_unchecked(f, m)) {
      return {false, g.format(m) + " is not a flat", m, std::nullopt};
    }
  }
  const std::vector<Mask> all_flats = detail::flats_unchecked(f);
  for (Mask m : family) {
    for (Mask up : all_flats) {
      if (up != m && is_subset(m, up) && !in_family(up)) {
        return {false, "not closed upward: " + g.format(up) + " contains member " + g.format(m), m, up};
      }
    }
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const Mask a = family[i];
      const Mask b = family[j];
      if (modular_defect(f, a, b).is_zero() && !in_family(a & b)) {
        return {false, "modular pair " + g.format(a) + ", " + g.format(b) + " has intersection outside the family", a, b};
      }
    }
  }
  return check;
}

namespace detail {

inline void analyze_cut(const SetFunction& f, ModularCut& cut) {
  if (cut.members.empty()) {
    cut.principal = true;
    return;
  }
  Mask meet_all = f.ground().full();
  for (Mask m : cut.members) meet_all &= m;
  cut.principal = cut.contains(meet_all);
  cut.delta.reset();
  cut.witness_pair.reset();
  if (cut.principal) return;
  for (std::size_t i = 0; i < cut.members.size(); ++i) {
    for (std::size_t j = i + 1; j < cut.members.size(); ++j) {
      const Mask a = cut.members[i];
      const Mask b = cut.members[j];
      if (cut.contains(a & b)) continue;
      const Ratio d = modular_defect(f, a, b);
      if (!cut.delta || d < *cut.delta) {
        cut.delta = d;
        cut.witness_pair = FlatPair{a, b};
      }
    }
  }
}

}  // namespace detail

/// Smallest modular cut containing the flats f1 and f2: upward closure and
/// modular-pair intersections are applied until nothing changes.
inline ModularCut generate_cut(const SetFunction& f, Mask f1, Mask f2) {
  require_polymatroid(f, "generate_cut");
  for (Mask m : {f1, f2}) {
    if (!is_subset(m, f.ground().full()) || !detail::is_flat_unchecked(f, m)) {
      throw Error(ErrorCode::kNotAFlat, f.ground().format(m) + " is not a flat");
    }
  }
  const std::vector<Mask> all_flats = detail::flats_unchecked(f);
  std::vector<char> in_cut(f.ground().subset_count(), 0);
  std::vector<Mask> members;
  auto add = [&](Mask m) {
    if (in_cut[m]) return false;
    in_cut[m] = 1;
    members.push_back(m);
    return true;
  };
  add(f1);
  add(f2);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Mask up : all_flats) {
      if (in_cut[up]) continue;
      for (Mask m : members) {
        if (is_subset(m, up)) {
          add(up);
          changed = true;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const Mask a = members[i];
        const Mask b = members[j];
        if (!in_cut[a & b] && modular_defect(f, a, b).is_zero()) {
          add(a & b);
          changed = true;
        }
      }
    }
  }
  ModularCut cut;
  cut.members = std::move(members);
  sort_canonical(cut.members);
  cut.generators = FlatPair{f1, f2};
  detail::analyze_cut(f, cut);
  return cut;
}

/// Cut given as an explicit family; validated with is_modular_cut.
inline ModularCut make_cut(const SetFunction& f, std::vector<Mask> family) {
  const CutCheck check = is_modular_cut(f, family);
  if (!check) throw Error(ErrorCode::kInvalidArgument, "not a modular cut: " + check.diagnostic);
  ModularCut cut;
  cut.members = std::move(family);
  sort_canonical(cut.members);
  cut.members.erase(std::unique(cut.members.begin(), cut.members.end()), cut.members.end());
  detail::analyze_cut(f, cut);
  return cut;
}

struct NonPrincipalCut {
  Mask first = 0;
  Mask second = 0;
  ModularCut cut;
};

/// Re-generates the cut from its own witness pair until the pair generating
/// the cut is also its canonical minimizing witness. The cuts shrink at every
/// step, so this terminates; the minimal defect is unchanged when the input
/// pair came from a minimum over all generated cuts.
inline NonPrincipalCut refine_to_witness(const SetFunction& f, ModularCut cut) {
  if (cut.principal) throw Error(ErrorCode::kPrincipalCut, "cut is principal");
  while (true) {
    const FlatPair w = *cut.witness_pair;
    if (cut.generators && *cut.generators == w) return {w.first, w.second, std::move(cut)};
    ModularCut next = generate_cut(f, w.first, w.second);
    if (next.principal) throw Error(ErrorCode::kInternalInvariant, "cut generated by a witness pair is principal");
    if (next.members == cut.members) {
      next.generators = w;
      return {w.first, w.second, std::move(next)};
    }
    cut = std::move(next);
  }
}

/// Scans incomparable non-modular flat pairs in canonical order and keeps a
/// pair whose generated cut is non-principal with the least delta. Comparable
/// and modular pairs always generate principal cuts and are skipped.
inline std::optional<NonPrincipalCut> find_nonprincipal_cut(const SetFunction& f) {
  require_polymatroid(f, "find_nonprincipal_cut");
  const std::vector<Mask> all_flats = detail::flats_unchecked(f);
  std::optional<ModularCut> best;
  for (std::size_t i = 0; i < all_flats.size(); ++i) {
    for (std::size_t j = i + 1; j < all_flats.size(); ++j) {
      const Mask a = all_flats[i];
      const Mask b = all_flats[j];
      if (is_subset(a, b) || is_subset(b, a)) continue;
      if (modular_defect(f, a, b).is_zero()) continue;
      ModularCut cut = generate_cut(f, a, b);
      if (cut.principal) continue;
      if (!best || *cut.delta < *best->delta) best = std::move(cut);
    }
  }
  if (!best) return std::nullopt;
  return refine_to_witness(f, std::move(*best));
}

}  // namespace polyconv
