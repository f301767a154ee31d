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

// Line-oriented model formats. '#' starts a comment; blank lines are ignored.
//
// Polymatroid:
//   ground a b c
//   rank {a} = 2
//   rank {a b} = 3        one line for every non-empty subset
//
// Ranked lattice:
//   ground a b x
//   member {} = 0
//   member {a x} = 2
//   measure a = 2         one line for every element
//
// Values are integers or p/q.

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polyconv/convolution.hpp"
#include "polyconv/set_function.hpp"

namespace polyconv {

namespace detail {

class LineCursor {
 public:
  LineCursor(std::string_view text, int line) : text_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kSyntaxError, "line " + std::to_string(line_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  std::string word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '{' &&
           text_[pos_] != '}' && text_[pos_] != '=') {
      ++pos_;
    }
    if (pos_ == start) fail("expected a token");
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::vector<std::string> braced_labels() {
    expect('{');
    const std::size_t close = text_.find('}', pos_);
    if (close == std::string_view::npos) fail("unclosed brace");
    std::vector<std::string> out;
    std::istringstream in{std::string(text_.substr(pos_, close - pos_))};
    for (std::string label; in >> label;) {
      if (label.find_first_of("{=#") != std::string::npos) fail("bad element label '" + label + "'");
      out.push_back(label);
    }
    pos_ = close + 1;
    return out;
  }

  Ratio value() {
    const std::string token = word();
    try {
      return Ratio::parse(token);
    } catch (const Error&) {
      fail("'" + token + "' is not a number");
    }
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing text");
  }

  int line() const { return line_; }

 private:
  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

template <class Fn>
void for_each_content_line(std::string_view text, Fn&& fn) {
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    LineCursor cursor(line, line_no);
    if (!cursor.at_end()) fn(LineCursor(line, line_no));
    start = end + 1;
  }
}

inline Mask labels_to_mask(const GroundSet& ground, const std::vector<std::string>& labels, const LineCursor& at) {
  Mask m = 0;
  for (const auto& l : labels) {
    auto i = ground.find(l);
    if (!i) throw Error(ErrorCode::kUnknownElement, "line " + std::to_string(at.line()) + ": element '" + l + "' is not in the ground set");
    if (contains(m, *i)) at.fail("element '" + l + "' repeated");
    m |= bit(*i);
  }
  return m;
}

inline GroundSet parse_ground_line(LineCursor& cur) {
  std::vector<std::string> labels;
  while (!cur.at_end()) labels.push_back(cur.word());
  if (labels.empty()) cur.fail("empty ground set");
  try {
    return GroundSet(std::move(labels));
  } catch (const Error& e) {
    cur.fail(e.what());
  }
}

}  // namespace detail

/// Parses the polymatroid text format. The result is validated when it
/// satisfies the axioms and returned unvalidated otherwise, so callers can
/// still report the violations.
inline SetFunction parse_polymatroid(std::string_view text) {
  std::optional<GroundSet> ground;
  std::vector<std::pair<Mask, Ratio>> entries;
  std::vector<int> lines;
  detail::for_each_content_line(text, [&](detail::LineCursor cur) {
    const std::string keyword = cur.word();
    if (keyword == "ground") {
      if (ground) cur.fail("second ground line");
      ground = detail::parse_ground_line(cur);
    } else if (keyword == "rank") {
      if (!ground) cur.fail("rank line before the ground line");
      const Mask m = detail::labels_to_mask(*ground, cur.braced_labels(), cur);
      cur.expect('=');
      const Ratio v = cur.value();
      cur.expect_end();
      if (v.sign() < 0) {
        throw Error(ErrorCode::kNegativeValue, "line " + std::to_string(cur.line()) + ": negative rank " + v.to_string());
      }
      for (std::size_t k = 0; k < entries.size(); ++k) {
        if (entries[k].first == m) {
          throw Error(ErrorCode::kDuplicateSubset, "line " + std::to_string(cur.line()) + ": " + ground->format(m) +
                                                       " already given on line " + std::to_string(lines[k]));
        }
      }
      entries.emplace_back(m, v);
      lines.push_back(cur.line());
    } else {
      cur.fail("unknown keyword '" + keyword + "'");
    }
  });
  if (!ground) throw Error(ErrorCode::kSyntaxError, "missing ground line");
  SetFunction sf = make_set_function(*ground, entries);
  return validate_polymatroid(sf).valid() ? validated(sf) : sf;
}

/// Canonical text: ground line, then one rank line per non-empty subset in
/// canonical order.
inline std::string serialize_polymatroid(const SetFunction& sf) {
  std::string out = "ground";
  for (const auto& l : sf.ground().labels()) out += " " + l;
  out += "\n";
  for (Mask m : canonical_subsets(sf.size())) {
    if (m == 0) continue;
    out += "rank " + sf.ground().format(m) + " = " + sf(m).to_string() + "\n";
  }
  return out;
}

struct LatticeModel {
  RankedLattice lattice;
  Measure measure;
};

inline LatticeModel parse_ranked_lattice(std::string_view text) {
  std::optional<GroundSet> ground;
  std::vector<std::pair<Mask, Ratio>> members;
  std::vector<std::optional<Ratio>> weights;
  detail::for_each_content_line(text, [&](detail::LineCursor cur) {
    const std::string keyword = cur.word();
    if (keyword == "ground") {
      if (ground) cur.fail("second ground line");
      ground = detail::parse_ground_line(cur);
      weights.assign(static_cast<std::size_t>(ground->size()), std::nullopt);
    } else if (keyword == "member") {
      if (!ground) cur.fail("member line before the ground line");
      const Mask m = detail::labels_to_mask(*ground, cur.braced_labels(), cur);
      cur.expect('=');
      const Ratio r = cur.value();
      cur.expect_end();
      members.emplace_back(m, r);
    } else if (keyword == "measure") {
      if (!ground) cur.fail("measure line before the ground line");
      const std::string label = cur.word();
      auto i = ground->find(label);
      if (!i) throw Error(ErrorCode::kUnknownElement, "line " + std::to_string(cur.line()) + ": element '" + label + "' is not in the ground set");
      cur.expect('=');
      const Ratio w = cur.value();
      cur.expect_end();
      if (w.sign() < 0) cur.fail("negative measure for '" + label + "'");
      if (weights[static_cast<std::size_t>(*i)]) cur.fail("measure for '" + label + "' given twice");
      weights[static_cast<std::size_t>(*i)] = w;
    } else {
      cur.fail("unknown keyword '" + keyword + "'");
    }
  });
  if (!ground) throw Error(ErrorCode::kSyntaxError, "missing ground line");
  std::vector<Ratio> w;
  for (int i = 0; i < ground->size(); ++i) {
    if (!weights[static_cast<std::size_t>(i)]) {
      throw Error(ErrorCode::kSyntaxError, "no measure line for '" + ground->label(i) + "'");
    }
    w.push_back(*weights[static_cast<std::size_t>(i)]);
  }
  return {make_ranked_lattice(*ground, std::move(members)), Measure(*ground, std::move(w))};
}

inline std::string serialize_ranked_lattice(const RankedLattice& rl, const Measure& mu) {
  std::string out = "ground";
  for (const auto& l : rl.ground().labels()) out += " " + l;
  out += "\n";
  for (std::size_t k = 0; k < rl.size(); ++k) {
    out += "member " + rl.ground().format(rl.members()[k]) + " = " + rl.ranks()[k].to_string() + "\n";
  }
  for (int i = 0; i < mu.ground().size(); ++i) {
    out += "measure " + mu.ground().label(i) + " = " + mu.weight(i).to_string() + "\n";
  }
  return out;
}

/// "{a b}", "a b" or "{}" against a ground set.
inline Mask parse_subset(const GroundSet& ground, std::string_view text) {
  std::string s(text);
  for (char& c : s) {
    if (c == '{' || c == '}' || c == ',') c = ' ';
  }
  std::istringstream in(s);
  Mask m = 0;
  for (std::string label; in >> label;) m |= bit(ground.index_of(label));
  return m;
}

}  // namespace polyconv
