// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cqg {

/// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
/// positive denominator) after every arithmetic operation.
using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q". Throws cqg::Error on anything else,
/// including a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

}  // namespace cqg
