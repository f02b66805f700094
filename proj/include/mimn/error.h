// Copyright 2026 The MIMN Authors. All Rights Reserved.
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

#ifndef MIMN_ERROR_H_
#define MIMN_ERROR_H_

#include <stdexcept>
#include <string>

namespace mimn {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kInfeasible,
  kParse,
  kIo,
  kModelFormat,
  kTraining,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported as MimnError; the code identifies the
// category so that front ends can map it to an exit status.
class MimnError : public std::runtime_error {
 public:
  MimnError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mimn

#endif  // MIMN_ERROR_H_
