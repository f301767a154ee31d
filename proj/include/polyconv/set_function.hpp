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

#include "polyconv/error.hpp"
#include "polyconv/ground_set.hpp"
#include "polyconv/ratio.hpp"

namespace polyconv {

struct SetFunctionFlags {
  bool validated_polymatroid = false;
  bool integer_valued = false;
  bool is_matroid = false;

  friend bool operator==(const SetFunctionFlags&, const SetFunctionFlags&) = default;
};

/// Total rational-valued table over all subsets of a ground set, with
/// value 0 on the empty set.
///
/// Flags are only ever set by validated(); every operation that needs the
/// polymatroid axioms checks the flag rather than re-deriving them.
class SetFunction {
 public:
  SetFunction() : table_(1) {}

  SetFunction(GroundSet ground, std::vector<Ratio> table) : ground_(std::move(ground)), table_(std::move(table)) {
    if (table_.size() != ground_.subset_count()) {
      throw Error(ErrorCode::kInvalidArgument, "rank table size does not match the ground set");
    }
    if (!table_[0].is_zero()) throw Error(ErrorCode::kInvalidArgument, "rank of the empty set must be 0");
  }

  /// Builds the table by evaluating fn on every subset.
  template <class Fn>
  static SetFunction tabulate(GroundSet ground, Fn&& fn) {
    std::vector<Ratio> table(ground.subset_count());
    for (std::size_t m = 1; m < table.size(); ++m) table[m] = fn(static_cast<Mask>(m));
    return SetFunction(std::move(ground), std::move(table));
  }

  const GroundSet& ground() const { return ground_; }
  int size() const { return ground_.size(); }
  const std::vector<Ratio>& table() const { return table_; }
  const SetFunctionFlags& flags() const { return flags_; }
  bool is_polymatroid() const { return flags_.validated_polymatroid; }

  const Ratio& operator()(Mask m) const { return table_[m]; }
  const Ratio& at(Mask m) const {
    if (m >= table_.size()) throw Error(ErrorCode::kInvalidArgument, "subset outside the ground set");
    return table_[m];
  }

  /// Value equality: same labels in the same order and the same table.
  /// Flags are derived data and do not take part.
  friend bool operator==(const SetFunction& a, const SetFunction& b) {
    return a.ground_ == b.ground_ && a.table_ == b.table_;
  }

 private:
  friend SetFunction validated(const SetFunction& sf);
  friend SetFunction with_flags(SetFunction sf, SetFunctionFlags flags);

  GroundSet ground_;
  std::vector<Ratio> table_;
  SetFunctionFlags flags_;
};

inline SetFunction with_flags(SetFunction sf, SetFunctionFlags flags) {
  sf.flags_ = flags;
  return sf;
}

inline void require_polymatroid(const SetFunction& sf, const char* operation) {
  if (!sf.is_polymatroid()) {
    throw Error(ErrorCode::kNotValidated, std::string(operation) + " requires a validated polymatroid");
  }
}

/// Builds a set function from an explicit list of (subset, value) entries.
/// Every non-empty subset must appear exactly once; an entry for the empty
/// set is accepted only with value 0.
inline SetFunction make_set_function(const GroundSet& ground, const std::vector<std::pair<Mask, Ratio>>& entries) {
  const std::size_t count = ground.subset_count();
  std::vector<Ratio> table(count);
  std::vector<bool> seen(count, false);
  seen[0] = true;
  bool empty_given = false;
  for (const auto& [mask, value] : entries) {
    if (mask >= count) throw Error(ErrorCode::kInvalidArgument, "subset outside the ground set");
    if (mask == 0) {
      if (empty_given) throw Error(ErrorCode::kDuplicateSubset, "{} given twice");
      if (!value.is_zero()) throw Error(ErrorCode::kInvalidArgument, "rank of the empty set must be 0");
      empty_given = true;
      continue;
    }
    if (seen[mask]) throw Error(ErrorCode::kDuplicateSubset, ground.format(mask) + " given twice");
    if (value.sign() < 0) {
      throw Error(ErrorCode::kNegativeValue, ground.format(mask) + " has negative value " + value.to_string());
    }
    seen[mask] = true;
    table[mask] = value;
  }
  for (Mask m : canonical_subsets(ground.size())) {
    if (!seen[m]) throw Error(ErrorCode::kMissingSubset, "no value for " + ground.format(m));
  }
  return SetFunction(ground, std::move(table));
}

/// Additive non-negative weight on ground-set elements.
class Measure {
 public:
  Measure() = default;

  Measure(GroundSet ground, std::vector<Ratio> weights) : ground_(std::move(ground)), weights_(std::move(weights)) {
    if (static_cast<int>(weights_.size()) != ground_.size()) {
      throw Error(ErrorCode::kInvalidArgument, "measure needs one weight per element");
    }
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (weights_[i].sign() < 0) {
        throw Error(ErrorCode::kNegativeValue, "measure of '" + ground_.label(static_cast<int>(i)) + "' is negative");
      }
    }
  }

  const GroundSet& ground() const { return ground_; }
  const std::vector<Ratio>& weights() const { return weights_; }
  const Ratio& weight(int element) const { return weights_.at(static_cast<std::size_t>(element)); }

  Ratio operator()(Mask m) const {
    Ratio total;
    for (int i : elements_of(m)) total += weights_[static_cast<std::size_t>(i)];
    return total;
  }

  /// μ(A) for every subset A, indexed by mask.
  std::vector<Ratio> subset_table() const {
    std::vector<Ratio> out(ground_.subset_count());
    for (std::size_t m = 1; m < out.size(); ++m) {
      const int low = std::countr_zero(static_cast<Mask>(m));
      out[m] = out[m & (m - 1)] + weights_[static_cast<std::size_t>(low)];
    }
    return out;
  }

  friend bool operator==(const Measure&, const Measure&) = default;

 private:
  GroundSet ground_;
  std::vector<Ratio> weights_;
};

/// δ(A,B) = f(A) + f(B) - f(A∩B) - f(A∪B).
inline Ratio modular_defect(const SetFunction& f, Mask a, Mask b) { return f(a) + f(b) - f(a & b) - f(a | b); }

namespace detail {

inline bool is_flat_unchecked(const SetFunction& f, Mask set) {
  const Mask outside = f.ground().full() & ~set;
  for (int i : elements_of(outside)) {
    if (f(set | bit(i)) <= f(set)) return false;
  }
  return true;
}

inline std::vector<Mask> flats_unchecked(const SetFunction& f) {
  std::vector<Mask> out;
  for (Mask m : canonical_subsets(f.size())) {
    if (is_flat_unchecked(f, m)) out.push_back(m);
  }
  return out;
}

}  // namespace detail

/// Flats sorted in canonical order.
class FlatFamily {
 public:
  FlatFamily() = default;
  explicit FlatFamily(std::vector<Mask> members) : members_(std::move(members)) { sort_canonical(members_); }

  const std::vector<Mask>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(Mask m) const { return std::binary_search(members_.begin(), members_.end(), m, CanonicalLess{}); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

 private:
  std::vector<Mask> members_;
};

/// A subset is a flat when each proper superset has strictly larger rank;
/// by monotonicity it suffices to look at one-element supersets.
inline bool is_flat(const SetFunction& f, Mask set) {
  require_polymatroid(f, "is_flat");
  return detail::is_flat_unchecked(f, set);
}

inline FlatFamily flats(const SetFunction& f) {
  require_polymatroid(f, "flats");
  return FlatFamily(detail::flats_unchecked(f));
}

/// Smallest flat containing `set`. For a polymatroid this is `set` together
/// with every element whose addition leaves the rank unchanged.
inline Mask closure(const SetFunction& f, Mask set) {
  require_polymatroid(f, "closure");
  Mask out = set;
  const Ratio base = f(set);
  for (int i : elements_of(f.ground().full() & ~set)) {
    if (f(set | bit(i)) == base) out |= bit(i);
  }
  return out;
}

inline Measure induced_measure(const SetFunction& f) {
  require_polymatroid(f, "induced_measure");
  std::vector<Ratio> weights;
  for (int i = 0; i < f.size(); ++i) weights.push_back(f(bit(i)));
  return Measure(f.ground(), std::move(weights));
}

struct Violation {
  std::string axiom;  // "nonnegative", "monotone" or "submodular"
  Mask first = 0;
  Mask second = 0;
  std::string detail;
};

struct ValidationReport {
  bool nonnegative = true;
  bool monotone = true;
  bool submodular = true;
  std::vector<Violation> violations;  // at most one per axiom, canonical first
  bool integer_valued = false;
  bool is_matroid = false;
  bool modular = false;
  bool flat_modular = false;

  bool valid() const { return nonnegative && monotone && submodular; }
};

/// Full axiom scan. Submodularity is checked in its local form
/// f(A+i) + f(A+j) >= f(A) + f(A+i+j), which is equivalent to the global one;
/// this keeps the scan at O(2^n n^2).
inline ValidationReport validate_polymatroid(const SetFunction& f) {
  ValidationReport report;
  const GroundSet& g = f.ground();
  const int n = f.size();
  const std::vector<Mask> order = canonical_subsets(n);

  for (Mask a : order) {
    if (f(a).sign() < 0) {
      report.nonnegative = false;
      report.violations.push_back({"nonnegative", a, a, "f(" + g.compact(a) + ") = " + f(a).to_string() + " < 0"});
      break;
    }
  }
  for (Mask a : order) {
    bool found = false;
    for (int i = 0; i < n && !found; ++i) {
      if (contains(a, i)) continue;
      const Mask b = a | bit(i);
      if (f(b) < f(a)) {
        report.monotone = false;
        report.violations.push_back({"monotone", a, b,
                                     "f(" + g.compact(a) + ") = " + f(a).to_string() + " > f(" + g.compact(b) +
                                         ") = " + f(b).to_string()});
        found = true;
      }
    }
    if (found) break;
  }
  for (Mask a : order) {
    bool found = false;
    for (int i = 0; i < n && !found; ++i) {
      if (contains(a, i)) continue;
      for (int j = i + 1; j < n && !found; ++j) {
        if (contains(a, j)) continue;
        const Mask ai = a | bit(i);
        const Mask aj = a | bit(j);
        if (f(ai) + f(aj) < f(a) + f(ai | aj)) {
          report.submodular = false;
          report.violations.push_back({"submodular", ai, aj,
                                       "f(" + g.compact(ai) + ") + f(" + g.compact(aj) + ") < f(" + g.compact(a) +
                                           ") + f(" + g.compact(ai | aj) + ")"});
          found = true;
        }
      }
    }
    if (found) break;
  }

  report.integer_valued = std::all_of(f.table().begin(), f.table().end(), [](const Ratio& r) { return r.is_integer(); });
  if (!report.valid()) return report;

  bool singletons_01 = true;
  for (int i = 0; i < n; ++i) {
    const Ratio& r = f(bit(i));
    if (r != Ratio(0) && r != Ratio(1)) singletons_01 = false;
  }
  report.is_matroid = report.integer_valued && singletons_01;

  report.modular = true;
  std::vector<Ratio> mu(g.subset_count());
  for (std::size_t m = 1; m < mu.size(); ++m) {
    const int low = std::countr_zero(static_cast<Mask>(m));
    mu[m] = mu[m & (m - 1)] + f(bit(low));
    if (mu[m] != f(static_cast<Mask>(m))) report.modular = false;
  }

  const std::vector<Mask> fl = detail::flats_unchecked(f);
  report.flat_modular = true;
  for (std::size_t x = 0; x < fl.size() && report.flat_modular; ++x) {
    for (std::size_t y = x + 1; y < fl.size(); ++y) {
      if (!modular_defect(f, fl[x], fl[y]).is_zero()) {
        report.flat_modular = false;
        break;
      }
    }
  }
  return report;
}

/// Runs validate_polymatroid and returns a copy with the flags set; throws
/// kNotAPolymatroid naming the first violation otherwise.
inline SetFunction validated(const SetFunction& sf) {
  const ValidationReport report = validate_polymatroid(sf);
  if (!report.valid()) {
    const Violation& v = report.violations.front();
    throw Error(ErrorCode::kNotAPolymatroid, v.axiom + " violated: " + v.detail);
  }
  SetFunction out = sf;
  out.flags_ = {true, report.integer_valued, report.is_matroid};
  return out;
}

/// Equivalence classes of a ground set, each with a label for the factor's
/// ground set. Classes are kept sorted by their lowest element.
class Partition {
 public:
  Partition(GroundSet ground, std::vector<Mask> classes, std::vector<std::string> class_labels = {})
      : ground_(std::move(ground)) {
    std::vector<std::pair<Mask, std::string>> tagged;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      tagged.emplace_back(classes[k], k < class_labels.size() ? class_labels[k] : std::string());
    }
    Mask seen = 0;
    for (const auto& [cls, name] : tagged) {
      if (cls == 0) throw Error(ErrorCode::kInvalidArgument, "partition class is empty");
      if (!is_subset(cls, ground_.full())) throw Error(ErrorCode::kInvalidArgument, "partition class outside the ground set");
      if ((cls & seen) != 0) throw Error(ErrorCode::kInvalidArgument, "partition classes overlap");
      seen |= cls;
    }
    if (seen != ground_.full()) throw Error(ErrorCode::kInvalidArgument, "partition classes do not cover the ground set");
    std::sort(tagged.begin(), tagged.end(),
              [](const auto& a, const auto& b) { return std::countr_zero(a.first) < std::countr_zero(b.first); });
    for (auto& [cls, name] : tagged) {
      if (name.empty()) {
        for (int i : elements_of(cls)) name += ground_.label(i);
      }
      classes_.push_back(cls);
      labels_.push_back(std::move(name));
    }
    class_of_.assign(static_cast<std::size_t>(ground_.size()), 0);
    for (std::size_t k = 0; k < classes_.size(); ++k) {
      for (int i : elements_of(classes_[k])) class_of_[static_cast<std::size_t>(i)] = static_cast<int>(k);
    }
  }

  /// `block` becomes one class named `label` (default: concatenated member
  /// labels); every other element stays a singleton.
  static Partition merging(const GroundSet& ground, Mask block, const std::string& label = {}) {
    std::vector<Mask> classes{block};
    std::vector<std::string> labels{label};
    for (int i : elements_of(ground.full() & ~block)) {
      classes.push_back(bit(i));
      labels.push_back(ground.label(i));
    }
    return Partition(ground, std::move(classes), std::move(labels));
  }

  static Partition singletons(const GroundSet& ground) {
    std::vector<Mask> classes;
    for (int i = 0; i < ground.size(); ++i) classes.push_back(bit(i));
    return Partition(ground, std::move(classes), ground.labels());
  }

  const GroundSet& ground() const { return ground_; }
  const std::vector<Mask>& classes() const { return classes_; }
  const std::vector<std::string>& class_labels() const { return labels_; }
  int class_count() const { return static_cast<int>(classes_.size()); }
  int class_of(int element) const { return class_of_.at(static_cast<std::size_t>(element)); }

  GroundSet quotient_ground() const { return GroundSet(labels_); }

  /// φ⁻¹: union of the classes selected by a quotient mask.
  Mask preimage(Mask quotient) const {
    Mask out = 0;
    for (int k : elements_of(quotient)) out |= classes_[static_cast<std::size_t>(k)];
    return out;
  }

  /// φ: classes touched by a subset of the ground set.
  Mask image(Mask set) const {
    Mask out = 0;
    for (int i : elements_of(set)) out |= bit(class_of(i));
    return out;
  }

 private:
  GroundSet ground_;
  std::vector<Mask> classes_;
  std::vector<std::string> labels_;
  std::vector<int> class_of_;
};

/// g(A) = f(φ⁻¹(A)) on the class ground set.
inline SetFunction factor(const SetFunction& f, const Partition& part) {
  require_polymatroid(f, "factor");
  if (part.ground() != f.ground()) throw Error(ErrorCode::kGroundMismatch, "partition is over a different ground set");
  return validated(SetFunction::tabulate(part.quotient_ground(), [&](Mask a) { return f(part.preimage(a)); }));
}

/// g(A) = f(A ∪ X) - f(X) on M - X, labels kept in their original order.
inline SetFunction contract(const SetFunction& f, Mask x) {
  require_polymatroid(f, "contract");
  if (!is_subset(x, f.ground().full())) throw Error(ErrorCode::kInvalidArgument, "contraction set outside the ground set");
  if (x == f.ground().full()) throw Error(ErrorCode::kFullGroundSet, "cannot contract the whole ground set");
  const std::vector<int> rest = elements_of(f.ground().full() & ~x);
  GroundSet ground(f.ground().labels_of(f.ground().full() & ~x));
  const Ratio fx = f(x);
  return validated(SetFunction::tabulate(std::move(ground), [&](Mask a) { return f(scatter_bits(a, rest) | x) - fx; }));
}

/// Rank table projected onto subsets of `set`.
inline SetFunction restrict(const SetFunction& sf, Mask set) {
  if (set == 0) throw Error(ErrorCode::kEmptyRestriction, "restriction to the empty set");
  if (!is_subset(set, sf.ground().full())) throw Error(ErrorCode::kInvalidArgument, "restriction set outside the ground set");
  const std::vector<int> keep = elements_of(set);
  SetFunction out = SetFunction::tabulate(GroundSet(sf.ground().labels_of(set)),
                                          [&](Mask a) { return sf(scatter_bits(a, keep)); });
  return sf.is_polymatroid() ? validated(out) : out;
}

/// Same function over `target`, which must list the same labels in some
/// order. Flags are carried over.
inline SetFunction reorder(const SetFunction& sf, const GroundSet& target) {
  if (target.size() != sf.size()) throw Error(ErrorCode::kGroundMismatch, "reorder target has a different size");
  auto pos = target.positions_in(sf.ground());
  if (!pos) throw Error(ErrorCode::kGroundMismatch, "reorder target has different labels");
  SetFunction out = SetFunction::tabulate(target, [&](Mask a) { return sf(scatter_bits(a, *pos)); });
  return with_flags(std::move(out), sf.flags());
}

/// True when `big` agrees with `small` on every subset of small's ground set,
/// matching elements by label.
inline bool extends(const SetFunction& big, const SetFunction& small) {
  auto pos = small.ground().positions_in(big.ground());
  if (!pos) return false;
  for (std::size_t m = 0; m < small.ground().subset_count(); ++m) {
    if (big(scatter_bits(static_cast<Mask>(m), *pos)) != small(static_cast<Mask>(m))) return false;
  }
  return true;
}

/// Equality after matching labels, ignoring label order.
inline bool equal_up_to_order(const SetFunction& a, const SetFunction& b) {
  return a.size() == b.size() && extends(a, b);
}

}  // namespace polyconv
