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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polyconv/convolution.hpp"
#include "polyconv/cuts.hpp"
#include "polyconv/inequalities.hpp"
#include "polyconv/set_function.hpp"

namespace polyconv {

/// Lattice and measure whose convolution yields an extension; kept so the
/// preconditions can be inspected or written out.
struct ExtensionLattice {
  RankedLattice lattice;
  Measure measure;
  std::vector<int> new_elements;  // indices in lattice.ground()
};

namespace detail {

inline SetFunction convolve_validated(const ExtensionLattice& ext) {
  SetFunction out = convolve(ext.lattice, ext.measure).value;
  const ValidationReport report = validate_polymatroid(out);
  if (!report.valid()) {
    throw Error(ErrorCode::kInternalInvariant, "convolution is not a polymatroid: " + report.violations.front().detail);
  }
  return validated(out);
}

inline std::vector<std::string> labels_not_in(const GroundSet& from, const GroundSet& exclude) {
  std::vector<std::string> out;
  for (const auto& l : from.labels()) {
    if (!exclude.find(l)) out.push_back(l);
  }
  return out;
}

}  // namespace detail

/// Lattice for lifting an extension of a factor: subsets of M and unions of
/// whole classes (new points being their own classes). Ranks come from f on
/// subsets of M and from gp on class unions.
inline ExtensionLattice factor_extension_lattice(const SetFunction& f, const Partition& part, const SetFunction& gp) {
  require_polymatroid(f, "factor_extension");
  require_polymatroid(gp, "factor_extension");
  const SetFunction fprime = factor(f, part);
  if (!extends(gp, fprime)) throw Error(ErrorCode::kNotAnExtension, "the given polymatroid does not extend the factor");
  const std::vector<std::string> extra = detail::labels_not_in(gp.ground(), fprime.ground());
  const GroundSet ground = f.ground().with_appended(extra);
  const int n = f.size();
  // φ as a map from N to positions in gp's ground set.
  const std::vector<int> class_pos = *fprime.ground().positions_in(gp.ground());
  std::vector<int> phi(static_cast<std::size_t>(ground.size()));
  for (int i = 0; i < n; ++i) phi[static_cast<std::size_t>(i)] = class_pos[static_cast<std::size_t>(part.class_of(i))];
  for (std::size_t k = 0; k < extra.size(); ++k) phi[static_cast<std::size_t>(n) + k] = gp.ground().index_of(extra[k]);
  std::vector<Mask> block_of_gp(static_cast<std::size_t>(gp.size()), 0);
  for (int i = 0; i < ground.size(); ++i) block_of_gp[static_cast<std::size_t>(phi[static_cast<std::size_t>(i)])] |= bit(i);

  std::map<Mask, Ratio> entries;
  for (std::size_t m = 0; m < f.ground().subset_count(); ++m) entries.emplace(static_cast<Mask>(m), f(static_cast<Mask>(m)));
  for (std::size_t b = 0; b < gp.ground().subset_count(); ++b) {
    Mask z = 0;
    for (int k : elements_of(static_cast<Mask>(b))) z |= block_of_gp[static_cast<std::size_t>(k)];
    entries.emplace(z, gp(static_cast<Mask>(b)));
  }
  std::vector<Ratio> weights;
  for (int i = 0; i < n; ++i) weights.push_back(f(bit(i)));
  for (const auto& l : extra) weights.push_back(gp(bit(gp.ground().index_of(l))));
  std::vector<int> fresh;
  for (std::size_t k = 0; k < extra.size(); ++k) fresh.push_back(n + static_cast<int>(k));
  return {make_ranked_lattice(ground, {entries.begin(), entries.end()}), Measure(ground, std::move(weights)),
          std::move(fresh)};
}

enum class FactorRoute {
  kLatticeConvolution,  // the class-union lattice satisfies both conditions
  kAmalgamFormula,      // it does not; closed-form min over class unions
};

struct FactorExtension {
  SetFunction g;
  FactorRoute route;
};

namespace detail {

// g(A ∪ V) = min over class sets C of f(A ∪ φ⁻¹C) + g'(C ∪ V) − f'(C).
// Taking C = ∅ gives f on M and C = D gives g' on φ⁻¹D ∪ V; the other
// terms never undercut those by submodularity of g'. Submodularity of the
// result is checked by the caller.
inline SetFunction factor_amalgam(const SetFunction& f, const Partition& part, const SetFunction& gp,
                                  const GroundSet& ground, const std::vector<int>& fresh) {
  const SetFunction fprime = factor(f, part);
  const std::vector<int> class_pos = *fprime.ground().positions_in(gp.ground());
  const Mask on_m = f.ground().full();
  return SetFunction::tabulate(ground, [&](Mask z) {
    Mask v = 0;
    for (int k : fresh) {
      if (z & bit(k)) v |= bit(gp.ground().index_of(ground.label(k)));
    }
    std::optional<Ratio> best;
    for (std::size_t c = 0; c < fprime.ground().subset_count(); ++c) {
      const Mask cm = static_cast<Mask>(c);
      const Ratio value = f((z & on_m) | part.preimage(cm)) + gp(scatter_bits(cm, class_pos) | v) - fprime(cm);
      if (!best || value < *best) best = value;
    }
    return *best;
  });
}

}  // namespace detail

/// Given an extension gp of the factor f/part, builds an extension g of f on
/// M ∪ (N' - M') whose factor by the same classes is gp. The class-union
/// lattice is used when it satisfies the convolution conditions; it can
/// fail them (a subset of M meeting a class partially, joined with a class
/// union), and then the closed-form amalgam is used instead.
inline FactorExtension factor_extension_detailed(const SetFunction& f, const Partition& part, const SetFunction& gp) {
  const ExtensionLattice ext = factor_extension_lattice(f, part, gp);
  const ConditionReport conditions = check_conditions(ext.lattice, ext.measure);
  FactorExtension out;
  if (conditions.incomparable.pass && conditions.chain.pass) {
    out = {detail::convolve_validated(ext), FactorRoute::kLatticeConvolution};
  } else {
    SetFunction g = detail::factor_amalgam(f, part, gp, ext.lattice.ground(), ext.new_elements);
    const ValidationReport report = validate_polymatroid(g);
    if (!report.valid()) {
      throw Error(ErrorCode::kInternalInvariant, "factor amalgam is not a polymatroid: " + report.violations.front().detail);
    }
    out = {validated(g), FactorRoute::kAmalgamFormula};
  }
  const SetFunction& g = out.g;
  std::vector<Mask> classes = part.classes();
  std::vector<std::string> labels = part.class_labels();
  for (int k : ext.new_elements) {
    classes.push_back(bit(k));
    labels.push_back(g.ground().label(k));
  }
  const Partition extended(g.ground(), classes, labels);
  if (!extends(g, f) || !equal_up_to_order(factor(g, extended), gp)) {
    throw Error(ErrorCode::kInternalInvariant, "factor extension failed its roundtrip");
  }
  return out;
}

inline SetFunction factor_extension(const SetFunction& f, const Partition& part, const SetFunction& gp) {
  return factor_extension_detailed(f, part, gp).g;
}

/// Lattice for lifting an extension of the contract along a single element
/// x: subsets of M and sets containing x, ranked by f and by
/// gp(Z - x) + f(x) respectively.
inline ExtensionLattice contract_extension_lattice_single(const SetFunction& f, int x, const SetFunction& gp) {
  const SetFunction fprime = contract(f, bit(x));
  if (!extends(gp, fprime)) throw Error(ErrorCode::kNotAnExtension, "the given polymatroid does not extend the contract");
  const std::vector<std::string> extra = detail::labels_not_in(gp.ground(), fprime.ground());
  const GroundSet ground = f.ground().with_appended(extra);
  const int n = f.size();
  std::vector<int> to_gp(static_cast<std::size_t>(ground.size()), -1);
  for (int i = 0; i < ground.size(); ++i) {
    if (i != x) to_gp[static_cast<std::size_t>(i)] = gp.ground().index_of(ground.label(i));
  }
  auto gp_mask = [&](Mask z) {
    Mask out = 0;
    for (int i : elements_of(z & ~bit(x))) out |= bit(to_gp[static_cast<std::size_t>(i)]);
    return out;
  };
  std::map<Mask, Ratio> entries;
  for (std::size_t m = 0; m < f.ground().subset_count(); ++m) entries.emplace(static_cast<Mask>(m), f(static_cast<Mask>(m)));
  const Ratio fx = f(bit(x));
  const Mask rest = ground.full() & ~bit(x);
  for_each_subset(rest, [&](Mask z) { entries.emplace(z | bit(x), gp(gp_mask(z)) + fx); });
  std::vector<Ratio> weights;
  for (int i = 0; i < n; ++i) weights.push_back(f(bit(i)));
  for (const auto& l : extra) weights.push_back(gp(bit(gp.ground().index_of(l))));
  std::vector<int> fresh;
  for (std::size_t k = 0; k < extra.size(); ++k) fresh.push_back(n + static_cast<int>(k));
  return {make_ranked_lattice(ground, {entries.begin(), entries.end()}), Measure(ground, std::move(weights)),
          std::move(fresh)};
}

/// Given an extension gp of the contract f/X, builds an extension g of f on
/// N' ∪ X whose contract along X is gp. A multi-element X is first merged
/// into one point by a factor step; the single-point result is then lifted
/// back with factor_extension.
inline SetFunction contract_extension(const SetFunction& f, Mask x, const SetFunction& gp) {
  require_polymatroid(f, "contract_extension");
  require_polymatroid(gp, "contract_extension");
  if (!is_subset(x, f.ground().full())) throw Error(ErrorCode::kInvalidArgument, "contraction set outside the ground set");
  if (x == f.ground().full()) throw Error(ErrorCode::kFullGroundSet, "cannot contract the whole ground set");
  SetFunction g;
  if (x == 0) {
    if (!extends(gp, f)) throw Error(ErrorCode::kNotAnExtension, "the given polymatroid does not extend the contract");
    g = reorder(gp, f.ground().with_appended(detail::labels_not_in(gp.ground(), f.ground())));
  } else if (popcount(x) == 1) {
    g = detail::convolve_validated(contract_extension_lattice_single(f, std::countr_zero(x), gp));
  } else {
    std::set<std::string> used(f.ground().labels().begin(), f.ground().labels().end());
    used.insert(gp.ground().labels().begin(), gp.ground().labels().end());
    std::string merged = "X";
    for (int k = 1; used.count(merged); ++k) merged = "X" + std::to_string(k);
    const Partition part = Partition::merging(f.ground(), x, merged);
    const SetFunction fhat = factor(f, part);
    const int xhat = fhat.ground().index_of(merged);
    if (!extends(gp, contract(fhat, bit(xhat)))) {
      throw Error(ErrorCode::kNotAnExtension, "the given polymatroid does not extend the contract");
    }
    const SetFunction ghat = detail::convolve_validated(contract_extension_lattice_single(fhat, xhat, gp));
    g = factor_extension(f, part, ghat);
  }
  const Mask x_in_g = scatter_bits(x, *f.ground().positions_in(g.ground()));
  if (!extends(g, f) || !equal_up_to_order(contract(g, x_in_g), gp)) {
    throw Error(ErrorCode::kInternalInvariant, "contract extension failed its roundtrip");
  }
  return g;
}

/// Free matroid (every subset independent) on the given labels.
inline SetFunction free_matroid(const std::vector<std::string>& labels) {
  return validated(SetFunction::tabulate(GroundSet(labels), [](Mask m) { return Ratio(popcount(m)); }));
}

inline SetFunction loop_matroid(const std::string& label) {
  return validated(SetFunction::tabulate(GroundSet({label}), [](Mask) { return Ratio(0); }));
}

/// Replaces every element i of the integer polymatroid f by a matroid of
/// rank f(i) on a fresh ground set P_i (default: the free matroid on f(i)
/// points named "<label>_1", ...; a single loop "<label>_0" when f(i) = 0).
/// The result is a matroid on the union of the P_i, listed block by block,
/// whose factor merging each P_i back to one point is f.
inline SetFunction helgason_expand(const SetFunction& f, const std::map<std::string, SetFunction>& blocks = {}) {
  require_polymatroid(f, "helgason_expand");
  if (!f.flags().integer_valued) throw Error(ErrorCode::kInvalidArgument, "Helgason expansion needs an integer polymatroid");
  // Block labels may reuse their own element's label but nothing else in use.
  std::set<std::string> used(f.ground().labels().begin(), f.ground().labels().end());
  for (const auto& [label, block] : blocks) {
    if (!f.ground().find(label)) throw Error(ErrorCode::kUnknownElement, "block given for unknown element '" + label + "'");
    for (const auto& l : block.ground().labels()) {
      if (l == label) continue;
      if (used.count(l)) throw Error(ErrorCode::kDuplicateLabel, "block label '" + l + "' already in use");
      used.insert(l);
    }
  }
  auto fresh = [&](const std::string& base) {
    std::string name = base;
    for (int k = 1; used.count(name); ++k) name = base + "_" + std::to_string(k);
    used.insert(name);
    return name;
  };

  std::vector<SetFunction> chosen;
  for (int i = 0; i < f.size(); ++i) {
    const std::string& label = f.ground().label(i);
    SetFunction block;
    if (auto it = blocks.find(label); it != blocks.end()) {
      block = it->second.is_polymatroid() ? it->second : validated(it->second);
      if (!block.flags().is_matroid) throw Error(ErrorCode::kNotAMatroid, "block for '" + label + "' is not a matroid");
    } else {
      const std::int64_t rank = f(bit(i)).num();
      std::vector<std::string> names;
      if (rank == 0) names.push_back(fresh(label + "_0"));
      for (std::int64_t k = 1; k <= rank; ++k) names.push_back(fresh(label + "_" + std::to_string(k)));
      block = rank == 0 ? loop_matroid(names.front()) : free_matroid(names);
    }
    if (block(block.ground().full()) != f(bit(i))) {
      throw Error(ErrorCode::kRankMismatch, "block for '" + label + "' has rank " + block(block.ground().full()).to_string() +
                                                ", element rank is " + f(bit(i)).to_string());
    }
    chosen.push_back(std::move(block));
  }

  SetFunction current = f;
  for (int i = 0; i < f.size(); ++i) {
    const SetFunction& block = chosen[static_cast<std::size_t>(i)];
    const Partition whole(block.ground(), {block.ground().full()}, {f.ground().label(i)});
    current = factor_extension(block, whole, current);
  }
  std::vector<std::string> order;
  for (const SetFunction& block : chosen) order.insert(order.end(), block.ground().labels().begin(), block.ground().labels().end());
  SetFunction g = reorder(current, GroundSet(order));
  if (!g.flags().is_matroid) throw Error(ErrorCode::kInternalInvariant, "Helgason expansion is not a matroid");
  return g;
}

inline void require_nonprincipal(const ModularCut& cut) {
  if (cut.principal || !cut.delta || !cut.witness_pair) throw Error(ErrorCode::kPrincipalCut, "the modular cut is principal");
}

/// One new point `a`: flats F of M with rank f(F), and aF for F in the cut
/// with rank f(F) + eps; μ(a) = eps + δ and μ = f on singletons of M.
inline ExtensionLattice common_info_lattice(const SetFunction& f, const ModularCut& cut, const Ratio& eps,
                                            const std::string& label = "x") {
  require_polymatroid(f, "common_info_extension");
  require_nonprincipal(cut);
  if (eps.sign() < 0) throw Error(ErrorCode::kInvalidArgument, "epsilon must be non-negative");
  const GroundSet ground = f.ground().with_appended({f.ground().fresh_label(label)});
  const int a = f.size();
  std::vector<std::pair<Mask, Ratio>> entries;
  for (Mask flat : detail::flats_unchecked(f)) entries.emplace_back(flat, f(flat));
  for (Mask m : cut.members) entries.emplace_back(m | bit(a), f(m) + eps);
  std::vector<Ratio> weights;
  for (int i = 0; i < f.size(); ++i) weights.push_back(f(bit(i)));
  weights.push_back(eps + *cut.delta);
  return {make_ranked_lattice(ground, std::move(entries)), Measure(ground, std::move(weights)), {a}};
}

/// One-point extension in which the new point carries the common part of
/// the cut's witness pair; with eps = 0 it extracts their conditional common
/// information.
inline SetFunction common_info_extension(const SetFunction& f, const ModularCut& cut, const Ratio& eps = Ratio(0),
                                         const std::string& label = "x") {
  SetFunction g = detail::convolve_validated(common_info_lattice(f, cut, eps, label));
  if (!extends(g, f)) throw Error(ErrorCode::kInternalInvariant, "common-information extension does not extend the base");
  return g;
}

/// f(M) - min{f(F) : F in the cut}; positive for every non-principal cut.
inline Ratio ingleton_epsilon(const SetFunction& f, const ModularCut& cut) {
  require_nonprincipal(cut);
  Ratio lowest = f(f.ground().full());
  for (Mask m : cut.members) lowest = std::min(lowest, f(m));
  return f(f.ground().full()) - lowest;
}

/// Two new points u, v: flats F of M with rank f(F); uF and vF for F in the
/// cut with rank f(F) + eps; uvM with rank f(M) + eps, where
/// eps = f(M) - min cut rank; μ(u) = μ(v) = eps + δ.
inline ExtensionLattice ingleton_lattice(const SetFunction& f, const ModularCut& cut, const std::string& u_label = "u",
                                         const std::string& v_label = "v") {
  require_polymatroid(f, "ingleton_extension");
  require_nonprincipal(cut);
  const Ratio eps = ingleton_epsilon(f, cut);
  const std::string u_name = f.ground().fresh_label(u_label);
  const std::string v_name = f.ground().with_appended({u_name}).fresh_label(v_label);
  const GroundSet ground = f.ground().with_appended({u_name, v_name});
  const int u = f.size();
  const int v = f.size() + 1;
  std::vector<std::pair<Mask, Ratio>> entries;
  for (Mask flat : detail::flats_unchecked(f)) entries.emplace_back(flat, f(flat));
  for (Mask m : cut.members) {
    entries.emplace_back(m | bit(u), f(m) + eps);
    entries.emplace_back(m | bit(v), f(m) + eps);
  }
  entries.emplace_back(ground.full(), f(f.ground().full()) + eps);
  std::vector<Ratio> weights;
  for (int i = 0; i < f.size(); ++i) weights.push_back(f(bit(i)));
  weights.push_back(eps + *cut.delta);
  weights.push_back(eps + *cut.delta);
  return {make_ranked_lattice(ground, std::move(entries)), Measure(ground, std::move(weights)), {u, v}};
}

/// Two-point extension whose new pair violates the conditional Ingleton
/// inequality over the cut's witness pair.
inline SetFunction ingleton_extension(const SetFunction& f, const ModularCut& cut, const std::string& u_label = "u",
                                      const std::string& v_label = "v") {
  SetFunction g = detail::convolve_validated(ingleton_lattice(f, cut, u_label, v_label));
  if (!extends(g, f)) throw Error(ErrorCode::kInternalInvariant, "Ingleton extension does not extend the base");
  return g;
}

enum class Verdict { kNotSticky, kNoWitness };

inline std::string to_string(Verdict v) { return v == Verdict::kNotSticky ? "NotSticky" : "NoWitness"; }

/// The two extensions and the evaluated expressions that certify that the
/// base has no amalgam for them.
struct Obstruction {
  Mask first = 0;   // F1
  Mask second = 0;  // F2
  Mask meet = 0;    // S = F1 ∩ F2
  Ratio delta;
  ModularCut cut;
  SetFunction common_info;  // on M ∪ {a}
  SetFunction ingleton;     // on M ∪ {u, v}
  int a = 0;                // index of a in common_info
  int u = 0;                // indices of u, v in ingleton
  int v = 0;
  Ratio ingleton_epsilon;
  Ratio comm;  // COMM(F1,F2;a|S) on common_info
  Ratio ing;   // ING(F1,F2;u,v|S) on ingleton
  bool ing_measure_branch = false;  // r'(uvS) attained by μ(uv) + f(S)
};

struct ObstructionCertificate {
  SetFunction base;
  Verdict verdict = Verdict::kNoWitness;
  std::optional<Obstruction> obstruction;
};

/// Finds a non-principal modular cut, builds both witness extensions and
/// evaluates COMM and ING on them. Any inconsistency with the expected
/// values (COMM = 0, ING < 0, ING = -δ on the measure branch) is reported as
/// kInternalInvariant.
inline ObstructionCertificate certify_nonsticky(const SetFunction& f) {
  require_polymatroid(f, "certify_nonsticky");
  ObstructionCertificate cert;
  cert.base = f;
  std::optional<NonPrincipalCut> found = find_nonprincipal_cut(f);
  if (!found) return cert;

  Obstruction ob;
  ob.first = found->first;
  ob.second = found->second;
  ob.meet = ob.first & ob.second;
  ob.cut = std::move(found->cut);
  ob.delta = *ob.cut.delta;
  if (modular_defect(f, ob.first, ob.second) != ob.delta || ob.cut.contains(ob.meet)) {
    throw Error(ErrorCode::kInternalInvariant, "witness pair does not attain the cut's defect");
  }
  ob.common_info = common_info_extension(f, ob.cut, Ratio(0));
  ob.a = f.size();
  ob.ingleton = ingleton_extension(f, ob.cut);
  ob.u = f.size();
  ob.v = f.size() + 1;
  ob.ingleton_epsilon = ingleton_epsilon(f, ob.cut);
  ob.comm = comm_value(ob.common_info, ob.first, ob.second, bit(ob.a), ob.meet);
  ob.ing = ing_value(ob.ingleton, ob.first, ob.second, bit(ob.u), bit(ob.v), ob.meet);
  const Ratio mu_uv = (ob.ingleton_epsilon + ob.delta) * Ratio(2);
  ob.ing_measure_branch = ob.ingleton(ob.meet | bit(ob.u) | bit(ob.v)) == mu_uv + f(ob.meet);
  if (!ob.comm.is_zero()) throw Error(ErrorCode::kInternalInvariant, "COMM is " + ob.comm.to_string() + ", expected 0");
  if (ob.ing.sign() >= 0) throw Error(ErrorCode::kInternalInvariant, "ING is " + ob.ing.to_string() + ", expected < 0");
  if (ob.ing_measure_branch && ob.ing != -ob.delta) {
    throw Error(ErrorCode::kInternalInvariant, "ING is " + ob.ing.to_string() + ", expected " + (-ob.delta).to_string());
  }
  cert.verdict = Verdict::kNotSticky;
  cert.obstruction = std::move(ob);
  return cert;
}

}  // namespace polyconv
