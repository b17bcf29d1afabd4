/*
 * Copyright (C) 2026 The sirctl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace sirctl {

/// Raised when an integration produces NaN or Inf. Carries the time of the
/// offending step so a caller can tell an early blow-up from a late one.
class NonFiniteError : public std::runtime_error {
public:
    explicit NonFiniteError(double time)
        : std::runtime_error("non-finite value at t = " + std::to_string(time)), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

class MissingControlsError : public std::runtime_error {
public:
    MissingControlsError() : std::runtime_error("trajectory carries no control samples") {}
};

/// Brute-force enumeration would exceed its size guard.
class TooLargeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sirctl
