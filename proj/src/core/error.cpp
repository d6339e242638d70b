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

#include "vnp/error.hpp"

namespace vnp {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidProjector: return "InvalidProjector";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::OrthogonalPostselection: return "OrthogonalPostselection";
    case ErrorCode::NumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::GridOverflow: return "GridOverflow";
    case ErrorCode::PostselectionImpossible: return "PostselectionImpossible";
    case ErrorCode::DegenerateOverlap: return "DegenerateOverlap";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::ToleranceBreach: return "ToleranceBreach";
    case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

int error_exit_class(ErrorCode code) noexcept {
    const int value = static_cast<int>(code);
    if (value < 20) {
        return 2;
    }
    if (value < 40) {
        return 3;
    }
    return 4;
}

} // namespace vnp
