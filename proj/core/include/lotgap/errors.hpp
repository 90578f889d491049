// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace lotgap {

/// Bad user input: malformed distributions, non-dividing grid steps, etc.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An enumeration or LP exceeded its configured cap. The message names the count.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A property that must hold by construction failed. Always a bug or a finding,
/// never silently ignored.
struct invariant_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lotgap
