// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace forge {

enum class Errc {
    invalid_argument,
    not_found,
    validation,
    incompatible,
    io,
    runtime,
};

/// Single exception type used across the library; the code lets callers
/// distinguish "unknown id" from "bad input" without string matching.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

}  // namespace forge
