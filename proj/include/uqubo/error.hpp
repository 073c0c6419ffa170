// Copyright 2026 The uqubo Authors.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace uqubo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Bitstring or vector length does not match the model.
class DimensionError : public Error {
 public:
    using Error::Error;
};

/// A numeric parameter is outside its admissible range.
class ParameterError : public Error {
 public:
    using Error::Error;
};

/// The request exceeds a configured size cap (qubits, oracle size, ...).
class CapabilityError : public Error {
 public:
    using Error::Error;
};

/// A constraint cannot be satisfied by any assignment.
class InfeasibleError : public Error {
 public:
    using Error::Error;
};

/// Unknown, duplicate or already-fixed variable label.
class LabelError : public Error {
 public:
    using Error::Error;
};

/// Malformed text input (QUBO files, instance documents, tables).
class FormatError : public Error {
 public:
    using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
    using Error::Error;
};

}  // namespace uqubo
