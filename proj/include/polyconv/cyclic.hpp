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
#include <vector>

#include "polyconv/set_function.hpp"

namespace polyconv {

/// A flat C is cyclic when every i in C has f(i) = 0 or
/// f(C) - f(C - i) < f(i). The empty flat is cyclic.
inline bool is_cyclic_flat(const SetFunction& f, Mask c) {
  require_polymatroid(f, "is_cyclic_flat");
  if (!detail::is_flat_unchecked(f, c)) return false;
  for (int i : elements_of(c)) {
    const Ratio& fi = f(bit(i));
    if (fi.is_zero()) continue;
    if (!(f(c) - f(c & ~bit(i)) < fi)) return false;
  }
  return true;
}

/// Elements of `current` that may be peeled: f(x) > 0 and
/// f(current) = f(x) + f(current - x).
inline Mask peelable_elements(const SetFunction& f, Mask current) {
  Mask out = 0;
  for (int x : elements_of(current)) {
    const Ratio& fx = f(bit(x));
    if (fx.sign() > 0 && f(current) == fx + f(current & ~bit(x))) out |= bit(x);
  }
  return out;
}

/// Peels removable elements off the flat `flat` until none is left. `select`
/// receives the non-empty mask of currently removable elements and returns
/// the index to remove; any choice yields the same result.
template <class Select>
Mask peel_to_cyclic(const SetFunction& f, Mask flat, Select&& select) {
  require_polymatroid(f, "peel_to_cyclic");
  if (!detail::is_flat_unchecked(f, flat)) throw Error(ErrorCode::kNotAFlat, f.ground().format(flat) + " is not a flat");
  Mask current = flat;
  while (true) {
    const Mask removable = peelable_elements(f, current);
    if (removable == 0) return current;
    const int x = select(removable);
    if (!contains(removable, x)) throw Error(ErrorCode::kInvalidArgument, "peeling selector chose a non-removable element");
    current &= ~bit(x);
  }
}

/// Unique maximal cyclic flat inside the flat `flat`; peels the
/// lowest-index removable element first.
inline Mask max_cyclic_flat(const SetFunction& f, Mask flat) {
  return peel_to_cyclic(f, flat, [](Mask removable) { return std::countr_zero(removable); });
}

/// The cyclic flats with their lattice operations. join is the closure of
/// the union; meet is the maximal cyclic flat inside the intersection, which
/// can be strictly smaller than the intersection.
class CyclicFlatLattice {
 public:
  CyclicFlatLattice() = default;
  CyclicFlatLattice(std::vector<Mask> members, std::vector<std::size_t> meet, std::vector<std::size_t> join)
      : members_(std::move(members)), meet_(std::move(meet)), join_(std::move(join)) {}

  const std::vector<Mask>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  std::size_t index_of(Mask m) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), m, CanonicalLess{});
    if (it == members_.end() || *it != m) throw Error(ErrorCode::kInvalidArgument, "not a cyclic flat");
    return static_cast<std::size_t>(it - members_.begin());
  }
  bool contains(Mask m) const { return std::binary_search(members_.begin(), members_.end(), m, CanonicalLess{}); }

  Mask meet(Mask a, Mask b) const { return members_[meet_[index_of(a) * size() + index_of(b)]]; }
  Mask join(Mask a, Mask b) const { return members_[join_[index_of(a) * size() + index_of(b)]]; }

 private:
  std::vector<Mask> members_;
  std::vector<std::size_t> meet_;
  std::vector<std::size_t> join_;
};

inline CyclicFlatLattice cyclic_lattice(const SetFunction& f) {
  require_polymatroid(f, "cyclic_lattice");
  std::vector<Mask> members;
  for (Mask flat : detail::flats_unchecked(f)) {
    if (is_cyclic_flat(f, flat)) members.push_back(flat);
  }
  const std::size_t k = members.size();
  auto index = [&](Mask m) {
    auto it = std::lower_bound(members.begin(), members.end(), m, CanonicalLess{});
    if (it == members.end() || *it != m) {
      throw Error(ErrorCode::kInternalInvariant, "cyclic flats are not closed under meet/join at " + f.ground().format(m));
    }
    return static_cast<std::size_t>(it - members.begin());
  };
  std::vector<std::size_t> meet(k * k);
  std::vector<std::size_t> join(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      const std::size_t lo = index(max_cyclic_flat(f, members[a] & members[b]));
      const std::size_t hi = index(closure(f, members[a] | members[b]));
      meet[a * k + b] = meet[b * k + a] = lo;
      join[a * k + b] = join[b * k + a] = hi;
    }
  }
  return CyclicFlatLattice(std::move(members), std::move(meet), std::move(join));
}

}  // namespace polyconv
