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

#include <stdexcept>
#include <string>
#include <string_view>

namespace polyconv {

enum class ErrorCode {
  kInvalidArgument,
  kOverflow,
  kDuplicateLabel,
  kTooLarge,
  kMissingSubset,
  kDuplicateSubset,
  kNegativeValue,
  kNotValidated,
  kNotAPolymatroid,
  kNotAFlat,
  kFullGroundSet,
  kEmptyRestriction,
  kEmptyFamily,
  kNegativeRank,
  kNoUpperBound,
  kNoLowerBound,
  kAmbiguousBound,
  kGroundMismatch,
  kNotAnExtension,
  kRankMismatch,
  kNotAMatroid,
  kPrincipalCut,
  kGroundOverlapMismatch,
  kSyntaxError,
  kUnknownElement,
  kInternalInvariant,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kDuplicateLabel: return "DuplicateLabel";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kMissingSubset: return "MissingSubset";
    case ErrorCode::kDuplicateSubset: return "DuplicateSubset";
    case ErrorCode::kNegativeValue: return "NegativeValue";
    case ErrorCode::kNotValidated: return "NotValidated";
    case ErrorCode::kNotAPolymatroid: return "NotAPolymatroid";
    case ErrorCode::kNotAFlat: return "NotAFlat";
    case ErrorCode::kFullGroundSet: return "FullGroundSet";
    case ErrorCode::kEmptyRestriction: return "EmptyRestriction";
    case ErrorCode::kEmptyFamily: return "EmptyFamily";
    case ErrorCode::kNegativeRank: return "NegativeRank";
    case ErrorCode::kNoUpperBound: return "NoUpperBound";
    case ErrorCode::kNoLowerBound: return "NoLowerBound";
    case ErrorCode::kAmbiguousBound: return "AmbiguousBound";
    case ErrorCode::kGroundMismatch: return "GroundMismatch";
    case ErrorCode::kNotAnExtension: return "NotAnExtension";
    case ErrorCode::kRankMismatch: return "RankMismatch";
    case ErrorCode::kNotAMatroid: return "NotAMatroid";
    case ErrorCode::kPrincipalCut: return "PrincipalCut";
    case ErrorCode::kGroundOverlapMismatch: return "GroundOverlapMismatch";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnknownElement: return "UnknownElement";
    case ErrorCode::kInternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message is meant for humans and names the offending subset or line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace polyconv
