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

// Random models and brute-force oracles shared by the unit tests and the
// acceptance runner. Oracles here deliberately avoid the library's own
// helpers (flats, closure, validation) so they can cross-check them.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "polyconv/polyconv.hpp"

namespace polyconv::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline GroundSet letters(int n, char first = 'a') {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>(first + i));
  return GroundSet(labels);
}

/// Builds a function from single-letter keys such as {"a", 2}, {"ab", 3};
/// "" is the empty set. Missing subsets are an error.
inline SetFunction table_of(int n, const std::vector<std::pair<std::string, Ratio>>& entries) {
  const GroundSet g = letters(n);
  std::vector<std::pair<Mask, Ratio>> masked;
  for (const auto& [key, value] : entries) {
    Mask m = 0;
    for (char c : key) m |= bit(c - 'a');
    if (m != 0) masked.emplace_back(m, value);
  }
  return make_set_function(g, masked);
}

inline Mask set_of(const std::string& letters_in_set) {
  Mask m = 0;
  for (char c : letters_in_set) m |= bit(c - 'a');
  return m;
}

inline SetFunction p3() {
  return validated(SetFunction(letters(3), {0, 2, 2, 3, 2, 4, 4, 4}));
}

inline SetFunction free_matroid_n(int n) {
  return validated(SetFunction::tabulate(letters(n), [](Mask m) { return Ratio(popcount(m)); }));
}

// ---- independent axiom check -------------------------------------------

inline bool brute_is_polymatroid(const SetFunction& f) {
  const Mask full = f.ground().full();
  if (!f(0).is_zero()) return false;
  for (Mask a = 0; a <= full; ++a) {
    for (Mask b = 0; b <= full; ++b) {
      if (f(a).sign() < 0) return false;
      if (is_subset(a, b) && f(b) < f(a)) return false;
      if (f(a) + f(b) < f(a & b) + f(a | b)) return false;
    }
  }
  return true;
}

// ---- random polymatroids -------------------------------------------------

enum class PolyKind { kCoverage, kTruncated, kRational, kMatroid };

/// Weighted coverage function: each element covers a random set of points.
/// Optionally truncated (min with a cap) and scaled by a rational factor.
inline SetFunction random_polymatroid(Rng& rng, int n, PolyKind kind, int max_weight = 2) {
  const int points = uniform(rng, 1, n + 2);
  std::vector<Mask> covers(static_cast<std::size_t>(n));
  std::vector<int> weight(static_cast<std::size_t>(points));
  for (auto& w : weight) w = uniform(rng, 1, max_weight);
  for (auto& c : covers) {
    for (int p = 0; p < points; ++p) {
      if (coin(rng, 0.45)) c |= bit(p);
    }
    if (kind == PolyKind::kMatroid) c = c == 0 ? 0 : bit(std::countr_zero(c));
  }
  if (kind == PolyKind::kMatroid) std::fill(weight.begin(), weight.end(), 1);
  auto cover_value = [&](Mask a) {
    Mask u = 0;
    for (int i : elements_of(a)) u |= covers[static_cast<std::size_t>(i)];
    std::int64_t s = 0;
    for (int p : elements_of(u)) s += weight[static_cast<std::size_t>(p)];
    return s;
  };
  std::int64_t total = cover_value(full_mask(n));
  std::int64_t cap = total;
  if (kind == PolyKind::kTruncated || kind == PolyKind::kMatroid) cap = uniform(rng, 0, static_cast<int>(total));
  const Ratio scale = kind == PolyKind::kRational ? Ratio(uniform(rng, 1, 3), uniform(rng, 1, 3)) : Ratio(1);
  return validated(SetFunction::tabulate(letters(n), [&](Mask a) { return Ratio(std::min(cover_value(a), cap)) * scale; }));
}

inline SetFunction random_polymatroid(Rng& rng, int n) {
  static constexpr PolyKind kinds[] = {PolyKind::kCoverage, PolyKind::kTruncated, PolyKind::kRational, PolyKind::kMatroid};
  return random_polymatroid(rng, n, kinds[uniform(rng, 0, 3)]);
}

inline SetFunction random_integer_polymatroid(Rng& rng, int n, int max_weight = 2) {
  return random_polymatroid(rng, n, coin(rng) ? PolyKind::kCoverage : PolyKind::kTruncated, max_weight);
}

/// Arbitrary rational table with f(∅) = 0; no axioms.
inline SetFunction random_set_function(Rng& rng, int n) {
  return SetFunction::tabulate(letters(n), [&](Mask m) {
    if (m == 0) return Ratio(0);
    return Ratio(uniform(rng, -20, 20), uniform(rng, 1, 6));
  });
}

// ---- one-point extensions ------------------------------------------------

/// Adds a point named `label` to g: a loop, a coloop-like free point, a
/// point parallel to an element, or a principal extension on a random flat.
inline SetFunction random_one_point_extension(Rng& rng, const SetFunction& g, const std::string& label) {
  const int n = g.size();
  const GroundSet ground = g.ground().with_appended({label});
  const Mask w = bit(n);
  const int kind = uniform(rng, 0, 3);
  auto make = [&](auto&& value_with_w) {
    return SetFunction::tabulate(ground, [&](Mask m) { return (m & w) ? value_with_w(m & ~w) : g(m); });
  };
  SetFunction out;
  if (kind == 0 || n == 0) {
    out = make([&](Mask a) { return g(a); });
  } else if (kind == 1) {
    const Ratio r(uniform(rng, 1, 2));
    out = make([&](Mask a) { return g(a) + r; });
  } else if (kind == 2) {
    const Mask e = bit(uniform(rng, 0, n - 1));
    out = make([&](Mask a) { return g(a | e); });
  } else {
    const Mask flat = static_cast<Mask>(uniform(rng, 0, static_cast<int>(g.ground().full())));
    const Ratio t(uniform(rng, 0, 3));
    out = make([&](Mask a) { return std::min(g(a) + t, g(a | flat)); });
  }
  if (!validate_polymatroid(out).valid()) out = make([&](Mask a) { return g(a); });
  return validated(out);
}

// ---- random ranked lattices ---------------------------------------------

/// Intersection-closed family containing the full set: meets are
/// intersections and joins are closures, so bounds are always unique.
inline std::vector<Mask> random_closure_system(Rng& rng, int n) {
  const Mask full = full_mask(n);
  std::vector<Mask> family{full};
  const int gens = uniform(rng, 0, 2 * n);
  for (int k = 0; k < gens; ++k) family.push_back(static_cast<Mask>(uniform(rng, 0, static_cast<int>(full))));
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t size = family.size();
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = i + 1; j < size; ++j) {
        const Mask m = family[i] & family[j];
        if (std::find(family.begin(), family.end(), m) == family.end()) {
          family.push_back(m);
          grew = true;
        }
      }
    }
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
  }
  return family;
}

struct RandomLattice {
  RankedLattice lattice;
  Measure measure;
};

/// Ranks come from a random polymatroid on the family (or from small random
/// integers); the measure either matches singleton ranks or is random.
inline RandomLattice random_ranked_lattice(Rng& rng, int n) {
  const GroundSet ground = letters(n);
  const std::vector<Mask> family = random_closure_system(rng, n);
  const SetFunction base = random_polymatroid(rng, n);
  const bool from_base = coin(rng, 0.7);
  std::vector<std::pair<Mask, Ratio>> entries;
  for (Mask m : family) entries.emplace_back(m, from_base ? base(m) : Ratio(uniform(rng, 0, 4)));
  std::vector<Ratio> weights;
  for (int i = 0; i < n; ++i) weights.push_back(coin(rng, 0.6) ? base(bit(i)) : Ratio(uniform(rng, 0, 3)));
  return {make_ranked_lattice(ground, std::move(entries)), Measure(ground, std::move(weights))};
}

/// Direct evaluation of the convolution minimum.
inline Ratio brute_convolution(const RankedLattice& rl, const Measure& mu, Mask a) {
  std::optional<Ratio> best;
  for (std::size_t k = 0; k < rl.size(); ++k) {
    Ratio v = rl.ranks()[k];
    for (int i : elements_of(a & ~rl.members()[k])) v = v + mu.weight(i);
    if (!best || v < *best) best = v;
  }
  return *best;
}

// ---- flats, cyclic flats, cuts -----------------------------------------

inline bool brute_is_flat(const SetFunction& f, Mask c) {
  for (Mask sup = 0; sup <= f.ground().full(); ++sup) {
    if (is_subset(c, sup) && sup != c && f(sup) == f(c)) return false;
  }
  return true;
}

inline std::vector<Mask> brute_flats(const SetFunction& f) {
  std::vector<Mask> out;
  for (Mask m = 0; m <= f.ground().full(); ++m) {
    if (brute_is_flat(f, m)) out.push_back(m);
  }
  return out;
}

inline bool brute_is_cyclic_flat(const SetFunction& f, Mask c) {
  if (!brute_is_flat(f, c)) return false;
  for (int i = 0; i < f.size(); ++i) {
    if (!contains(c, i)) continue;
    const Ratio fi = f(bit(i));
    if (!fi.is_zero() && !(f(c) - f(c & ~bit(i)) < fi)) return false;
  }
  return true;
}

/// Maximal cyclic flat inside `within`, or nullopt when the maximum is not
/// unique.
inline std::optional<Mask> brute_max_cyclic_flat(const SetFunction& f, Mask within) {
  std::vector<Mask> found;
  for (Mask c = 0; c <= f.ground().full(); ++c) {
    if (is_subset(c, within) && brute_is_cyclic_flat(f, c)) found.push_back(c);
  }
  for (Mask c : found) {
    if (std::all_of(found.begin(), found.end(), [&](Mask d) { return is_subset(d, c); })) return c;
  }
  return std::nullopt;
}

/// Minimal modular cut containing both flats, by enumerating every
/// subfamily of flats (feasible while the flat count stays small).
inline std::optional<std::vector<Mask>> brute_smallest_cut(const SetFunction& f, Mask f1, Mask f2) {
  const std::vector<Mask> fl = brute_flats(f);
  if (fl.size() > 16) return std::nullopt;
  std::optional<std::vector<Mask>> best;
  for (std::uint32_t sel = 0; sel < (1U << fl.size()); ++sel) {
    std::vector<Mask> fam;
    for (std::size_t k = 0; k < fl.size(); ++k) {
      if (sel >> k & 1U) fam.push_back(fl[k]);
    }
    auto in = [&](Mask m) { return std::find(fam.begin(), fam.end(), m) != fam.end(); };
    if (!in(f1) || !in(f2)) continue;
    bool ok = true;
    for (Mask a : fam) {
      for (Mask b : fl) {
        if (is_subset(a, b) && !in(b)) ok = false;
      }
      for (Mask b : fam) {
        if (modular_defect(f, a, b).is_zero() && !in(a & b)) ok = false;
      }
    }
    if (!ok) continue;
    if (best && fam.size() >= best->size()) continue;
    best = fam;
  }
  return best;
}

}  // namespace polyconv::testing
