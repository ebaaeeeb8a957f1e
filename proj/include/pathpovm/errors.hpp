// Copyright 2026 The pathpovm Authors
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

namespace pathpovm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
  using Error::Error;
};
struct NotPsd : Error {
  using Error::Error;
};
struct NotUnitary : Error {
  using Error::Error;
};
struct NotEffect : Error {
  using Error::Error;
};
struct ZeroVector : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct ZeroBranch : Error {
  using Error::Error;
};
struct UnsupportedSettings : Error {
  using Error::Error;
};
struct InvalidPovm : Error {
  using Error::Error;
};
struct InvalidDensity : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace pathpovm
