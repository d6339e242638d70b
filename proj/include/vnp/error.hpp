// Copyright 2026 The vnpointer Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vnp {

/// Failure categories raised by the library. The numeric values are part of
/// the C API (see vnp.h) and must stay stable.
enum class ErrorCode : int {
    InvalidState = 1,
    InvalidProjector = 2,
    ShapeMismatch = 3,
    InvalidArgument = 4,
    InvalidGrid = 5,
    InvalidConfig = 6,
    IoError = 7,
    OrthogonalPostselection = 20,
    NumericalDegeneracy = 21,
    GridTooSmall = 22,
    GridOverflow = 23,
    PostselectionImpossible = 24,
    DegenerateOverlap = 25,
    InvalidMatrix = 26,
    ToleranceBreach = 40,
    Internal = 41,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Coarse class used for process exit codes: 2 validation, 3 physics,
/// 4 internal tolerance breach.
int error_exit_class(ErrorCode code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

} // namespace vnp
