/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mixnum/error.hpp"

namespace mixnum {

const char* to_string(const ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::UnknownNumerology:
        return "UnknownNumerology";
    case ErrorKind::InvalidGuard:
        return "InvalidGuard";
    case ErrorKind::InvalidScenario:
        return "InvalidScenario";
    case ErrorKind::LengthMismatch:
        return "LengthMismatch";
    case ErrorKind::ShapeMismatch:
        return "ShapeMismatch";
    case ErrorKind::ScenarioMismatch:
        return "ScenarioMismatch";
    case ErrorKind::TargetUnreachable:
        return "TargetUnreachable";
    }
    return "Unknown";
}

Error::Error(const ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

TargetUnreachable::TargetUnreachable(const double best_db, const std::string& message)
    : Error(ErrorKind::TargetUnreachable, message), best_db_(best_db) {}

} // namespace mixnum
