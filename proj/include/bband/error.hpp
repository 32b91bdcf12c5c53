#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bband {

/// Malformed or inconsistent input (bad value, unknown enum, broken reference).
class ValidationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Required input is absent (empty region list, missing mix year).
class MissingDataError : public ValidationError
{
public:
    using ValidationError::ValidationError;
};

/// Filesystem failure while reading inputs or writing results.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Collected diagnostics from a non fail-fast validation pass.
class ValidationReport : public ValidationError
{
public:
    explicit ValidationReport(std::vector<std::string> problems);

    const std::vector<std::string>& problems() const noexcept { return m_problems; }

private:
    std::vector<std::string> m_problems;
};

}  // namespace bband
