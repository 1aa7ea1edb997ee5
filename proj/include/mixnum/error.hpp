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

#ifndef MIXNUM_ERROR_HPP
#define MIXNUM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mixnum {

enum class ErrorKind {
    UnknownNumerology,
    InvalidGuard,
    InvalidScenario,
    LengthMismatch,
    ShapeMismatch,
    ScenarioMismatch,
    TargetUnreachable,
};

[[nodiscard]] const char* to_string(ErrorKind kind) noexcept;

/**
 * Base exception for every failure raised by the simulator.
 *
 * The message names the violated invariant; kind() lets callers map
 * failures to exit codes without parsing text.
 */
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by the minimum-guard search; carries the best worst-case INI seen.
class TargetUnreachable : public Error {
public:
    TargetUnreachable(double best_db, const std::string& message);

    [[nodiscard]] double best_db() const noexcept { return best_db_; }

private:
    double best_db_;
};

} // namespace mixnum

#endif // MIXNUM_ERROR_HPP
