#pragma once

#include <stdexcept>
#include <string>

namespace lvdes {

/// Raised for malformed or inconsistent input files (catalogs, scenario
/// bundles, solution documents). The message always names the offending
/// file and, where known, the line and field.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}

    InputError(const std::string& file, int line, const std::string& field,
               const std::string& msg)
        : std::runtime_error(file + ":" + std::to_string(line) + ": field '" +
                             field + "': " + msg) {}
};

} // namespace lvdes
