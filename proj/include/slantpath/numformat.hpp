#pragma once

#include <string>
#include <vector>

namespace slantpath {

/// Canonical scientific notation with 10 significant digits, lowercase 'e',
/// signed exponent without leading zeros: 2.143543473e-3, 1.000000000e+0.
/// Locale-independent. NaN and infinities render as "nan" / "inf" / "-inf".
std::string format_sci(double x);

/// Compact canonical form: integers up to 2^53 render without a decimal
/// point, everything else as the shortest representation that parses back to
/// the same double (exponent canonicalized as in format_sci).
std::string format_compact(double x);

/// Scenario-file number literal: shortest exact representation, preferring at
/// most 10 significant digits, always containing '.' or 'e'.
std::string format_literal(double x);

/// Joins fields with commas, quoting any field that needs it (RFC 4180).
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace slantpath
