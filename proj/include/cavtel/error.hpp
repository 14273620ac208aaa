// Copyright 2026 The cavtel Authors
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

#ifndef CAVTEL_ERROR_HPP
#define CAVTEL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cavtel {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A superposition cancelled to the null vector.
class NullState : public Error {
public:
    using Error::Error;
};

/// Internal arithmetic produced a value that cannot be right (e.g. complex norm).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// An input violated a documented invariant.
class InvariantBreach : public Error {
public:
    using Error::Error;
};

/// A mode-2 amplitude could not be assigned to either readout cluster.
class AmbiguousCluster : public Error {
public:
    using Error::Error;
};

/// Fock truncation is too small for the amplitudes involved.
class TruncationBreach : public Error {
public:
    using Error::Error;
};

/// Halving the integration step moved the result by more than the tolerance.
class StepSizeRejected : public Error {
public:
    using Error::Error;
};

/// Bad configuration file or flag.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace cavtel

#endif  // CAVTEL_ERROR_HPP
