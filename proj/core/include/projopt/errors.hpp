#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace projopt {

/// Malformed arguments: non-finite entries, dimension mismatches, bad counts.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A documented precondition that depends on the geometry did not hold
/// (for example a containment M ⊆ M_i that was assumed by the caller).
class PreconditionError : public std::domain_error {
public:
    explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

/// Every M_i coincides with the intersection M. Quantities that are only
/// defined through an inversion of a formula are refused on such input.
class DegenerateInputError : public std::domain_error {
public:
    explicit DegenerateInputError(const std::string& what) : std::domain_error(what) {}
};

/// The affine subspaces have empty intersection.
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// "%.6g" rendering, for residuals quoted in error messages.
inline std::string format_residual(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

} // namespace projopt
