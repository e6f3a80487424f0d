#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace micbench {

// %.6g formatting for error messages; std::to_string flattens small
// residuals to "0.000000"
inline std::string display_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Base of all library errors. The category drives the CLI exit codes:
// input errors are caller mistakes (bad shapes, unknown specs, malformed
// files), numerical errors are data-dependent failures (ill-conditioning,
// positivity violations, failed searches).
class Error : public std::runtime_error {
public:
    enum class Category { input, numerical };

    Error(Category cat, const std::string& msg) : std::runtime_error(msg), cat_(cat) {}
    Category category() const { return cat_; }

private:
    Category cat_;
};

#define MICBENCH_ERROR(NAME, CATEGORY)                                        \
    struct NAME : Error {                                                     \
        explicit NAME(const std::string& msg)                                 \
            : Error(Error::Category::CATEGORY, std::string(#NAME ": ") + msg) {} \
    }

MICBENCH_ERROR(DimensionMismatch, input);
MICBENCH_ERROR(ShapeMismatch, input);
MICBENCH_ERROR(LengthMismatch, input);
MICBENCH_ERROR(InvalidSpec, input);
MICBENCH_ERROR(InvalidRank, input);
MICBENCH_ERROR(UnknownDimension, input);
MICBENCH_ERROR(ParseError, input);

MICBENCH_ERROR(NonHermitian, numerical);
MICBENCH_ERROR(NotAFiducial, numerical);
MICBENCH_ERROR(ZeroEffect, numerical);
MICBENCH_ERROR(NonPositiveEntry, numerical);
MICBENCH_ERROR(NotNormalized, numerical);
MICBENCH_ERROR(NotNormalizable, numerical);
MICBENCH_ERROR(SearchFailed, numerical);
MICBENCH_ERROR(GenerationFailed, numerical);
MICBENCH_ERROR(InvariantViolation, numerical);

#undef MICBENCH_ERROR

// Carries the offending condition number so callers can report it.
struct IllConditioned : Error {
    IllConditioned(double cond, const std::string& msg)
        : Error(Error::Category::numerical, "IllConditioned: " + msg),
          condition_number(cond) {}
    double condition_number;
};

}  // namespace micbench
