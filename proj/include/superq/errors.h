// Copyright 2026 The superq Authors
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

#ifndef _SUPERQ_ERRORS_H
#define _SUPERQ_ERRORS_H

#include <stdexcept>

namespace superq {

/// Operands disagree on algebra order, matrix shape, or grading.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An operation received an element of the wrong Z2 grade.
struct ParityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The body of a supernumber is zero, so no inverse exists.
struct NotInvertibleError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Input outside the domain of a function (e.g. inv_sqrt of a negative body).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// exp_nilpotent was given a matrix whose entries carry a nonzero body.
struct NotNilpotentError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace superq

#endif
