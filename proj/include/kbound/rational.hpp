#pragma once

// Exact rational scalars. Every quantity in the library is a Rat; nothing is
// ever rounded except in explicitly labelled decimal renderings.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kbound {

using Rat = mpq_class;
using Int = mpz_class;

/// num/den in lowest terms. mpq_class(num, den) does not canonicalize, so
/// always go through here when the fraction may be reducible.
Rat make_rat(const Int& num, const Int& den);

/// Parses "p/q", "p", or a finite decimal such as "-1.25". Throws InputError.
Rat parse_rat(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rat& value);

/// Fixed-point decimal rendering for human consumption only.
std::string to_decimal(const Rat& value, int digits = 6);

double to_double(const Rat& value);

/// Exact square root when `value` is the square of a rational.
std::optional<Rat> exact_sqrt(const Rat& value);

bool is_integer(const Rat& value);

Int floor_int(const Rat& value);
Int ceil_int(const Rat& value);

int sign(const Rat& value);

Rat pow(const Rat& base, unsigned exponent);

}  // namespace kbound
