//
// Copyright 2026 The funcprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace funcprobe {

enum class ErrorCode {
  kInvalidArgument,
  kEmptyInput,
  kParse,
  kDuplicateId,
  kNoCandidate,
  kInsufficientCandidates,
  kOutOfRange,
  kNoVerb,
  kDimensionMismatch,
  kDegenerateLabels,
  kNonFiniteLoss,
  kIdMismatch,
  kTooFewValues,
  kDegenerateX,
  kMissingMetadata,
  kWrongResponseCount,
  kMissingResponses,
  kUnknownProject,
  kUnknownAssignment,
  kFormatViolation,
  kConflict,
  kMissingTrainingFile,
  kTaskMismatch,
  kIo,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kEmptyInput: return "empty-input";
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kDuplicateId: return "duplicate-id";
    case ErrorCode::kNoCandidate: return "no-candidate";
    case ErrorCode::kInsufficientCandidates: return "insufficient-candidates";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kNoVerb: return "no-verb-found";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kDegenerateLabels: return "degenerate-labels";
    case ErrorCode::kNonFiniteLoss: return "non-finite-loss";
    case ErrorCode::kIdMismatch: return "id-mismatch";
    case ErrorCode::kTooFewValues: return "too-few-values";
    case ErrorCode::kDegenerateX: return "degenerate-x";
    case ErrorCode::kMissingMetadata: return "missing-metadata";
    case ErrorCode::kWrongResponseCount: return "wrong-response-count";
    case ErrorCode::kMissingResponses: return "missing-responses";
    case ErrorCode::kUnknownProject: return "unknown-project";
    case ErrorCode::kUnknownAssignment: return "unknown-assignment";
    case ErrorCode::kFormatViolation: return "format-violation";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kMissingTrainingFile: return "missing-training-file";
    case ErrorCode::kTaskMismatch: return "task-mismatch";
    case ErrorCode::kIo: return "io-error";
  }
  return "unknown";
}

// All library failures are reported with this exception. `item_id` names the
// offending record when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::string> item_id = std::nullopt)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        message_(message),
        item_id_(item_id && !item_id->empty() ? std::move(item_id) : std::nullopt) {}

  ErrorCode code() const noexcept { return code_; }
  const std::optional<std::string>& item_id() const noexcept { return item_id_; }
  // The message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::optional<std::string> item_id_;
};

}  // namespace funcprobe
