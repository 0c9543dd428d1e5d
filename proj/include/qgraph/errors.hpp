// Copyright 2026 The qgraph Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qgraph {

/// Base class for all qgraph errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shape or ambient-dimension mismatch between operands.
struct DimensionError : Error {
    using Error::Error;
};

/// Input fails a structural invariant (schema, orthonormality, operator-system
/// axioms, partition axioms, ...).
struct ValidationError : Error {
    using Error::Error;
};

/// Input is degenerate for the requested operation (zero vectors, rank-0
/// compressor, P = I separator candidate, ...).
struct DegenerateInputError : Error {
    using Error::Error;
};

/// A documented precondition of an operation was violated by the caller.
struct ContractViolationError : Error {
    using Error::Error;
};

/// Two routes that must agree disagreed; signals a tolerance failure, never a
/// user error.
struct InternalInconsistencyError : Error {
    using Error::Error;
};

}  // namespace qgraph
