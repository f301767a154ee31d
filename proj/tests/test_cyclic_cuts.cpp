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

#include <gtest/gtest.h>

#include <numeric>

#include "support/random_models.hpp"

namespace polyconv {
namespace {

using testing::p3;
using testing::set_of;

// Rank-3 matroid on a..e whose only dependent triples are abc and cde.
SetFunction two_lines() {
  return validated(SetFunction::tabulate(testing::letters(5), [](Mask m) {
    const int k = popcount(m);
    if (k == 3 && (m == set_of("abc") || m == set_of("cde"))) return Ratio(2);
    return Ratio(std::min(k, 3));
  }));
}

TEST(Cyclic, Predicate) {
  EXPECT_TRUE(is_cyclic_flat(p3(), set_of("ab")));
  EXPECT_FALSE(is_cyclic_flat(p3(), set_of("a")));
  EXPECT_TRUE(is_cyclic_flat(p3(), 0));
  EXPECT_FALSE(is_cyclic_flat(p3(), set_of("ac")));  // not a flat
}

TEST(Cyclic, Peeling) {
  EXPECT_EQ(max_cyclic_flat(p3(), set_of("a")), 0U);
  EXPECT_EQ(max_cyclic_flat(p3(), set_of("abc")), set_of("abc"));
  EXPECT_EQ(max_cyclic_flat(p3(), set_of("ab")), set_of("ab"));
  try {
    (void)max_cyclic_flat(p3(), set_of("ac"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotAFlat);
  }
}

TEST(Cyclic, LatticeOfP3) {
  const CyclicFlatLattice lat = cyclic_lattice(p3());
  EXPECT_EQ(lat.members(), (std::vector<Mask>{0, set_of("ab"), set_of("abc")}));
  EXPECT_EQ(lat.meet(set_of("ab"), set_of("abc")), set_of("ab"));
  EXPECT_EQ(lat.join(0, set_of("ab")), set_of("ab"));
  for (Mask c : lat.members()) {
    EXPECT_EQ(lat.meet(c, c), c);
    EXPECT_EQ(lat.join(c, c), c);
  }
}

TEST(Cyclic, MeetDiffersFromIntersection) {
  const SetFunction tl = two_lines();
  const CyclicFlatLattice lat = cyclic_lattice(tl);
  EXPECT_EQ(lat.members(), (std::vector<Mask>{0, set_of("abc"), set_of("cde"), set_of("abcde")}));
  EXPECT_EQ(lat.meet(set_of("abc"), set_of("cde")), 0U);
  EXPECT_EQ(lat.join(set_of("abc"), set_of("cde")), set_of("abcde"));
}

TEST(CyclicProperties, PeelingMatchesBruteForceInAnyOrder) {
  testing::Rng rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = testing::uniform(rng, 1, 5);
    const SetFunction f = testing::random_polymatroid(rng, n);
    const Measure mu = induced_measure(f);
    for (Mask flat : flats(f)) {
      const Mask c = max_cyclic_flat(f, flat);
      ASSERT_EQ(std::optional<Mask>(c), testing::brute_max_cyclic_flat(f, flat));
      for (int k = 0; k < 4; ++k) {
        const Mask other = peel_to_cyclic(f, flat, [&](Mask removable) {
          std::vector<int> options = elements_of(removable);
          return options[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<int>(options.size()) - 1))];
        });
        EXPECT_EQ(other, c);
      }
      for_each_subset(flat & ~c, [&](Mask extra) { EXPECT_EQ(f(c | extra), f(c) + mu(extra)); });
    }
  }
}

TEST(CyclicProperties, MatroidCyclicFlatsAreUnionsOfCircuits) {
  testing::Rng rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = testing::uniform(rng, 1, 6);
    const SetFunction f = testing::random_polymatroid(rng, n, testing::PolyKind::kMatroid);
    ASSERT_TRUE(f.flags().is_matroid);
    const Mask full = f.ground().full();
    std::vector<Mask> circuits;
    for (Mask m = 1; m <= full; ++m) {
      if (f(m) == Ratio(popcount(m))) continue;
      bool minimal = true;
      for (int i : elements_of(m)) {
        if (f(m & ~bit(i)) != Ratio(popcount(m) - 1)) minimal = false;
      }
      if (minimal) circuits.push_back(m);
    }
    std::vector<Mask> oracle;
    for (Mask fl : testing::brute_flats(f)) {
      Mask u = 0;
      for (Mask c : circuits) {
        if (is_subset(c, fl)) u |= c;
      }
      if (u == fl) oracle.push_back(fl);
    }
    std::vector<Mask> got = cyclic_lattice(f).members();
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, oracle);
  }
}

TEST(CyclicProperties, LatticeOperationsMatchDefinitions) {
  testing::Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const SetFunction f = testing::random_polymatroid(rng, testing::uniform(rng, 1, 5));
    const CyclicFlatLattice lat = cyclic_lattice(f);
    for (Mask a : lat.members()) {
      for (Mask b : lat.members()) {
        EXPECT_EQ(lat.join(a, b), closure(f, a | b));
        EXPECT_TRUE(lat.contains(lat.join(a, b)));
        EXPECT_EQ(std::optional<Mask>(lat.meet(a, b)), testing::brute_max_cyclic_flat(f, a & b));
      }
    }
  }
}

// ---- cuts ----------------------------------------------------------------

TEST(Cuts, PredicateExamples) {
  EXPECT_TRUE(is_modular_cut(p3(), {set_of("a"), set_of("b"), set_of("ab"), set_of("abc")}).ok);
  EXPECT_TRUE(is_modular_cut(p3(), {set_of("ab"), set_of("abc")}).ok);
  const CutCheck bad = is_modular_cut(p3(), {set_of("a"), set_of("abc")});
  EXPECT_FALSE(bad.ok);
  EXPECT_NE(bad.diagnostic.find("{a b}"), std::string::npos);
}

TEST(Cuts, GenerateExamples) {
  const ModularCut ab = generate_cut(p3(), set_of("a"), set_of("b"));
  EXPECT_EQ(ab.members, (std::vector<Mask>{set_of("a"), set_of("b"), set_of("ab"), set_of("abc")}));
  EXPECT_FALSE(ab.principal);
  EXPECT_EQ(ab.delta, std::optional<Ratio>(Ratio(1)));
  ASSERT_TRUE(ab.witness_pair);
  EXPECT_EQ(ab.witness_pair->first, set_of("a"));
  EXPECT_EQ(ab.witness_pair->second, set_of("b"));

  const ModularCut ac = generate_cut(p3(), set_of("a"), set_of("c"));
  EXPECT_EQ(ac.members, flats(p3()).members());
  EXPECT_TRUE(ac.principal);
  EXPECT_FALSE(ac.delta);

  const ModularCut top = generate_cut(p3(), 7, 7);
  EXPECT_EQ(top.members, (std::vector<Mask>{7}));
  EXPECT_TRUE(top.principal);
}

TEST(Cuts, FindExamples) {
  const auto found = find_nonprincipal_cut(p3());
  ASSERT_TRUE(found);
  EXPECT_EQ(found->first, set_of("a"));
  EXPECT_EQ(found->second, set_of("b"));
  EXPECT_EQ(*found->cut.delta, Ratio(1));
  for (int n = 1; n <= 4; ++n) EXPECT_FALSE(find_nonprincipal_cut(testing::free_matroid_n(n)));
  EXPECT_FALSE(find_nonprincipal_cut(validated(testing::table_of(2, {{"a", 1}, {"b", 1}, {"ab", 1}}))));
}

TEST(Cuts, HyperplaneCounterexample) {
  const SetFunction f = p3();
  const ModularCut cut = generate_cut(f, set_of("a"), set_of("b"));
  Ratio best(-1);
  std::vector<Mask> top;
  for (Mask m : cut.members) {
    if (f(m) >= f(7)) continue;
    if (f(m) > best) {
      best = f(m);
      top = {m};
    } else if (f(m) == best) {
      top.push_back(m);
    }
  }
  ASSERT_EQ(top, (std::vector<Mask>{set_of("ab")}));
  for (Mask other : cut.members) {
    const bool witness = modular_defect(f, set_of("ab"), other).sign() > 0 && !cut.contains(set_of("ab") & other);
    EXPECT_FALSE(witness);
  }
}

TEST(CutProperties, GeneratedCutsAreMinimalAndBounded) {
  testing::Rng rng(31);
  int nonprincipal = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const SetFunction f = testing::random_integer_polymatroid(rng, testing::uniform(rng, 2, 4));
    const std::vector<Mask> fl = flats(f).members();
    for (std::size_t i = 0; i < fl.size(); ++i) {
      for (std::size_t j = i; j < fl.size(); ++j) {
        const ModularCut cut = generate_cut(f, fl[i], fl[j]);
        EXPECT_TRUE(is_modular_cut(f, cut.members).ok);
        if (auto brute = testing::brute_smallest_cut(f, fl[i], fl[j])) {
          std::sort(brute->begin(), brute->end(), CanonicalLess{});
          EXPECT_EQ(cut.members, *brute);
        }
        Mask all = f.ground().full();
        for (Mask m : cut.members) all &= m;
        EXPECT_EQ(cut.principal, cut.members.empty() || cut.contains(all));
        if (cut.principal) continue;
        ++nonprincipal;
        EXPECT_EQ(modular_defect(f, cut.witness_pair->first, cut.witness_pair->second), *cut.delta);
        // Every minimizing pair generates a cut with the same delta whose
        // members all contain the pair's intersection S and exceed f(S) by
        // more than delta.
        for (Mask p : cut.members) {
          for (Mask q : cut.members) {
            if (cut.contains(p & q) || modular_defect(f, p, q) != *cut.delta) continue;
            const ModularCut sub = generate_cut(f, p, q);
            ASSERT_FALSE(sub.principal);
            EXPECT_EQ(sub.delta, cut.delta);
            const Mask s = p & q;
            for (Mask m : sub.members) {
              EXPECT_TRUE(is_subset(s, m));
              EXPECT_GT(f(m) - f(s), *cut.delta);
            }
          }
        }
      }
    }
  }
  EXPECT_GT(nonprincipal, 20);
}

TEST(CutProperties, FindReturnsSelfWitnessingMinimum) {
  testing::Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const SetFunction f = testing::random_polymatroid(rng, testing::uniform(rng, 2, 5));
    const auto found = find_nonprincipal_cut(f);
    std::optional<Ratio> best;
    const std::vector<Mask> fl = flats(f).members();
    for (Mask a : fl) {
      for (Mask b : fl) {
        const ModularCut c = generate_cut(f, a, b);
        if (!c.principal && (!best || *c.delta < *best)) best = c.delta;
      }
    }
    ASSERT_EQ(found.has_value(), best.has_value());
    if (!found) continue;
    EXPECT_EQ(*found->cut.delta, *best);
    EXPECT_EQ(found->cut.witness_pair->first, found->first);
    EXPECT_EQ(found->cut.witness_pair->second, found->second);
    EXPECT_EQ(found->cut.members, generate_cut(f, found->first, found->second).members);
  }
}

}  // namespace
}  // namespace polyconv
