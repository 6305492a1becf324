/*
 *   Copyright 2026 The ergoq Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ergoq {

/// Bad parameters or a violated precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input text (matrix CSV, config file, report JSON).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No repeated power was found within the step cap. Power orbits of fuzzy
/// matrices are always eventually periodic, so this only means the cap was
/// too small.
class CycleNotFound : public std::runtime_error {
 public:
  explicit CycleNotFound(std::size_t max_steps)
      : std::runtime_error("no cycle found within max_steps=" +
                           std::to_string(max_steps) +
                           "; raise the step cap"),
        max_steps_(max_steps) {}

  std::size_t max_steps() const noexcept { return max_steps_; }

 private:
  std::size_t max_steps_;
};

}  // namespace ergoq
