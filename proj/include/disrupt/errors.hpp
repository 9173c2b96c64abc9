#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace disrupt {

// Bad input: files, columns, flags, ids. The CLI maps these to exit code 1.
struct UserError : std::runtime_error {
    explicit UserError(const std::string& msg) : std::runtime_error(msg) {}
};

// A model that cannot be fitted on the given data. Callers running several
// models catch these per model and keep going.
struct ModelError : std::runtime_error {
    explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

// Design matrix is not full rank; names the offending columns.
struct RankDeficientError : ModelError {
    std::vector<std::string> columns;
    RankDeficientError(const std::string& msg, std::vector<std::string> cols)
        : ModelError(msg), columns(std::move(cols)) {}
};

// Complete or quasi-complete separation in a logistic fit (monotone likelihood).
struct SeparationError : ModelError {
    explicit SeparationError(const std::string& msg) : ModelError(msg) {}
};

// Statistic cannot be formed: zero residuals, constant sample, and the like.
struct DegenerateError : ModelError {
    explicit DegenerateError(const std::string& msg) : ModelError(msg) {}
};

}  // namespace disrupt
