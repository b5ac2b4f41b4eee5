// Copyright 2026 The glottkit Authors
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

namespace glottkit {

// Base for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments, malformed files, violated preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Silent or otherwise unusable analysis frame (r[0] == 0).
class DegenerateFrame : public Error {
 public:
  using Error::Error;
};

class NoVoicedFrames : public Error {
 public:
  using Error::Error;
};

// Numerical breakdown that should not happen on valid input.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace glottkit
