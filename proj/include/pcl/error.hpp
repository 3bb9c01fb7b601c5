// Copyright 2026 The pcl Authors
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

namespace pcl {

/// Base of every error raised by the library. kind() is a short stable
/// token used in machine-readable diagnostics.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept = 0;
};

#define PCL_DEFINE_ERROR(Name, token)                                  \
    class Name : public Error {                                        \
    public:                                                            \
        using Error::Error;                                            \
        const char* kind() const noexcept override { return token; }   \
    };

// Input outside the mathematical domain (n = 0, A = 0, ...).
PCL_DEFINE_ERROR(DomainError, "domain")
// A caller-side requirement was not met (table too small, bad flags).
PCL_DEFINE_ERROR(PreconditionError, "precondition")
// N violates the not-a-sum-of-two-squares hypothesis of a counting lemma.
PCL_DEFINE_ERROR(HypothesisError, "hypothesis")
// Bound or memory budget exceeded.
PCL_DEFINE_ERROR(ResourceError, "resource")
// Checked 64-bit arithmetic overflowed, or an exact identity was violated.
PCL_DEFINE_ERROR(ArithmeticError, "arithmetic")
// Corrupt or version-mismatched file.
PCL_DEFINE_ERROR(FormatError, "format")

#undef PCL_DEFINE_ERROR

}  // namespace pcl
