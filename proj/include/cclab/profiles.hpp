#pragma once

#include <functional>
#include <map>
#include <string>

namespace cclab {

/// Radial profile compiled from the small expression grammar used in
/// scenario configs:
///
///   expr   := ['-'] term (('+' | '-') term)*
///   term   := atom ('*' atom)*
///   atom   := NUMBER | IDENT | '(' expr ')'
///           | bump(center, width, amp)       smooth compactly supported bump
///           | well(t_lo, t_hi, ramp)         1 outside, exactly 0 on [t_lo, t_hi]
///           | table('path.csv')              linear interpolation of a table
///
/// IDENT resolves against the named parameters map (used by sweeps).
/// bump(c, w, a) = a * exp(1 - 1/(1 - s^2)) with s = (t-c)/w for |s| < 1 and
/// 0 outside; well ramps with the C^2 smootherstep polynomial.
struct Profile {
    std::string source;
    std::function<double(double)> f;

    double operator()(double t) const { return f(t); }
};

using ParamMap = std::map<std::string, double>;

/// Compiles an expression. Throws ConfigError with a column position on
/// malformed input or unresolved identifiers. base_dir anchors table paths.
Profile parse_profile(const std::string& expr, const ParamMap& params = {},
                      const std::string& base_dir = ".");

} // namespace cclab
