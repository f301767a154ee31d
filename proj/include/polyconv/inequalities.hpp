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

#include <string>
#include <vector>

#include "polyconv/set_function.hpp"

// Information-style rank expressions. None of these require the polymatroid
// axioms: they are linear in the rank table and accept any set function.
// Arguments are arbitrary subsets; no disjointness is assumed.

namespace polyconv {

/// f(I|K) = f(IK) - f(K).
inline Ratio cond_rank(const SetFunction& f, Mask i, Mask k) { return f(i | k) - f(k); }

/// f(I,J|K) = f(IK) + f(JK) - f(K) - f(IJK).
inline Ratio mutual(const SetFunction& f, Mask i, Mask j, Mask k) { return f(i | k) + f(j | k) - f(k) - f(i | j | k); }

/// COMM(A,B;Y|E) = (A,B|YE) + (Y|AE) + (Y|BE) + (Y|ABE).
inline Ratio comm_value(const SetFunction& f, Mask a, Mask b, Mask y, Mask e = 0) {
  return mutual(f, a, b, y | e) + cond_rank(f, y, a | e) + cond_rank(f, y, b | e) + cond_rank(f, y, a | b | e);
}

/// ING(A,B;P,Q|E) = -(A,B|E) + (A,B|PE) + (A,B|QE) + (P,Q|E).
inline Ratio ing_value(const SetFunction& f, Mask a, Mask b, Mask p, Mask q, Mask e = 0) {
  return -mutual(f, a, b, e) + mutual(f, a, b, p | e) + mutual(f, a, b, q | e) + mutual(f, p, q, e);
}

/// The ten terms whose sum equals ING(A,B;P,Q|E) + COMM(A,B;Y|E) as a linear
/// identity in the rank table.
inline std::vector<Ratio> ten_terms(const SetFunction& f, Mask a, Mask b, Mask p, Mask q, Mask y, Mask e = 0) {
  return {
      mutual(f, a, b, p | y | e), mutual(f, a, b, q | y | e), mutual(f, p, q, y | e),
      mutual(f, p, y, a | e),     mutual(f, p, y, b | e),     mutual(f, q, y, a | e),
      mutual(f, q, y, b | e),     cond_rank(f, y, a | b | p | e), cond_rank(f, y, a | b | q | e),
      cond_rank(f, y, p | q | e),
  };
}

struct TenTermResult {
  Ratio lhs;  // ING + COMM
  Ratio rhs;  // sum of the ten terms
  bool equal = false;
};

inline TenTermResult ten_term_check(const SetFunction& f, Mask a, Mask b, Mask p, Mask q, Mask y, Mask e = 0) {
  TenTermResult out;
  out.lhs = ing_value(f, a, b, p, q, e) + comm_value(f, a, b, y, e);
  for (const Ratio& t : ten_terms(f, a, b, p, q, y, e)) out.rhs += t;
  out.equal = out.lhs == out.rhs;
  return out;
}

/// A rank expression held as data, for reports and the command line.
struct RankExpr {
  enum class Kind { kCond, kMutual, kComm, kIng, kTenTerm };

  Kind kind = Kind::kCond;
  std::vector<Mask> args;

  static std::size_t arity(Kind kind) {
    switch (kind) {
      case Kind::kCond: return 2;
      case Kind::kMutual: return 3;
      case Kind::kComm: return 4;
      case Kind::kIng: return 5;
      case Kind::kTenTerm: return 6;
    }
    return 0;
  }

  static std::string name(Kind kind) {
    switch (kind) {
      case Kind::kCond: return "cond";
      case Kind::kMutual: return "mutual";
      case Kind::kComm: return "comm";
      case Kind::kIng: return "ing";
      case Kind::kTenTerm: return "tenterm";
    }
    return "?";
  }

  /// Value of the expression; for kTenTerm this is the ten-term sum.
  Ratio evaluate(const SetFunction& f) const {
    if (args.size() != arity(kind)) throw Error(ErrorCode::kInvalidArgument, name(kind) + " takes " + std::to_string(arity(kind)) + " arguments");
    for (Mask m : args) {
      if (!is_subset(m, f.ground().full())) throw Error(ErrorCode::kInvalidArgument, "argument outside the ground set");
    }
    const auto& x = args;
    switch (kind) {
      case Kind::kCond: return cond_rank(f, x[0], x[1]);
      case Kind::kMutual: return mutual(f, x[0], x[1], x[2]);
      case Kind::kComm: return comm_value(f, x[0], x[1], x[2], x[3]);
      case Kind::kIng: return ing_value(f, x[0], x[1], x[2], x[3], x[4]);
      case Kind::kTenTerm: return ten_term_check(f, x[0], x[1], x[2], x[3], x[4], x[5]).rhs;
    }
    return {};
  }
};

}  // namespace polyconv
