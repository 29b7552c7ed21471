/*
   Copyright 2026 The katz1 Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef KATZ1_ERRORS_HPP
#define KATZ1_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace katz1 {

/// Base of every library error. The CLI maps subclasses to exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A mathematical invariant failed to hold (exit code 1).
struct InvariantError : Error {
    using Error::Error;
};

struct NonCommuting : InvariantError {
    std::string first, second;
    NonCommuting(std::string a, std::string b)
        : InvariantError("operators do not commute: " + a + ", " + b), first(std::move(a)), second(std::move(b)) {}
};
struct IdealClosureFailure : InvariantError {
    using InvariantError::InvariantError;
};
struct NotAnIdeal : InvariantError {
    using InvariantError::InvariantError;
};
struct NoSolution : InvariantError {
    using InvariantError::InvariantError;
};
struct DoublingFailure : InvariantError {
    std::string witness;
    DoublingFailure(const std::string& what, std::string w) : InvariantError(what), witness(std::move(w)) {}
};
struct MissingOperator : InvariantError {
    using InvariantError::InvariantError;
};

/// Input or configuration rejected before any computation (exit code 2).
struct ConfigError : Error {
    using Error::Error;
};
struct BadLevel : ConfigError {
    using ConfigError::ConfigError;
};
struct CharacterParity : ConfigError {
    using ConfigError::ConfigError;
};
struct BadUnit : ConfigError {
    using ConfigError::ConfigError;
};
struct CharacterOrderDivisibleByP : ConfigError {
    using ConfigError::ConfigError;
};
struct RamifiedPrime : ConfigError {
    using ConfigError::ConfigError;
};

/// A finite field beyond the packed 31-bit element representation was requested.
struct FieldTooLarge : Error {
    using Error::Error;
};

/// On-disk cache entry failed its integrity check (exit code 3).
struct CacheCorruption : Error {
    using Error::Error;
};

/// Oracle data failed validation (exit code 4).
struct OracleValidation : Error {
    using Error::Error;
};

}  // namespace katz1

#endif  // KATZ1_ERRORS_HPP
